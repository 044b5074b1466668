#include "exangulate/session.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace exangulate::session {

InputError::InputError(const std::string& file, int line, int column, const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": error: " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

bool blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Trims t in place and shifts its column accordingly.
Token trimmed(std::string text, Loc loc) {
  std::size_t b = 0;
  while (b < text.size() && blank(text[b])) ++b;
  std::size_t e = text.size();
  while (e > b && blank(text[e - 1])) --e;
  loc.column += static_cast<int>(b);
  return Token{text.substr(b, e - b), loc};
}

std::vector<Token> split(const Token& t, char sep) {
  std::vector<Token> out;
  if (t.text.empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= t.text.size(); ++i)
    if (i == t.text.size() || t.text[i] == sep) {
      out.push_back(trimmed(t.text.substr(start, i - start), Loc{t.loc.line, t.loc.column + static_cast<int>(start)}));
      start = i + 1;
    }
  return out;
}

std::vector<Token> words(const Token& t) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < t.text.size()) {
    while (i < t.text.size() && (blank(t.text[i]) || t.text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < t.text.size() && !blank(t.text[j]) && t.text[j] != ',') ++j;
    if (j > i) out.push_back(Token{t.text.substr(i, j - i), Loc{t.loc.line, t.loc.column + static_cast<int>(i)}});
    i = j;
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& file) : file_(file) {}

  [[noreturn]] void fail(const Loc& l, const std::string& msg) const { throw InputError(file_, l.line, l.column, msg); }

  long long integer(const Token& t) const {
    long long v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (t.text.empty() || ec != std::errc() || ptr != e) fail(t.loc, "expected an integer, got '" + t.text + "'");
    return v;
  }

  int positive(const Token& t) const {
    long long v = integer(t);
    if (v < 1 || v > 1000000) fail(t.loc, "expected a positive integer, got '" + t.text + "'");
    return static_cast<int>(v);
  }

  std::vector<Token> coords(const Token& t) const {
    auto ws = words(t);
    for (const auto& w : ws) integer(w);
    return ws;
  }

  std::vector<std::vector<Token>> maps(const Token& t) const {
    std::vector<std::vector<Token>> out;
    for (const auto& part : split(t, ';')) out.push_back(coords(part));
    return out;
  }

  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

struct Entry {
  Token key, value;
};

struct Stanza {
  std::string name;
  std::string arg;
  Loc loc;
  std::vector<Entry> entries;
};

}  // namespace

SessionConfig parse_input(const std::string& text, const std::string& file) {
  Parser ps(file);
  std::vector<Stanza> stanzas;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    Token t = trimmed(line, Loc{ln, 1});
    if (t.text.empty()) continue;
    if (t.text.front() == '[') {
      if (t.text.back() != ']') ps.fail(t.loc, "unterminated stanza header");
      Token inner = trimmed(t.text.substr(1, t.text.size() - 2), Loc{ln, t.loc.column + 1});
      auto ws = words(inner);
      if (ws.empty()) ps.fail(t.loc, "empty stanza header");
      Stanza s{ws[0].text, ws.size() > 1 ? ws[1].text : "", t.loc, {}};
      if (ws.size() > 2) ps.fail(ws[2].loc, "unexpected text in stanza header");
      stanzas.push_back(std::move(s));
      continue;
    }
    auto eq = t.text.find('=');
    if (eq == std::string::npos) ps.fail(t.loc, "expected 'key = value'");
    if (stanzas.empty()) ps.fail(t.loc, "key outside of a stanza");
    Token key = trimmed(t.text.substr(0, eq), t.loc);
    Token value = trimmed(t.text.substr(eq + 1), Loc{ln, t.loc.column + static_cast<int>(eq) + 1});
    if (key.text.empty()) ps.fail(t.loc, "missing key");
    stanzas.back().entries.push_back({key, value});
  }

  static const std::map<std::string, std::set<std::string>> known = {
      {"field", {"prime"}},
      {"quiver", {"vertices", "arrows"}},
      {"relations", {"relation"}},
      {"category", {"n", "backend", "generators"}},
      {"nf", {"objects"}},
      {"fbar", {"mode", "seed"}},
      {"bounds", {"multiplicity", "path_length", "enumeration", "search_cap"}},
      {"sequence", {"terms", "maps", "delta"}},
      {"realization", {"ends", "index", "terms", "maps"}},
  };
  static const std::set<std::string> repeatable_keys = {"relation", "seed"};

  SessionConfig cfg;
  cfg.file = file;
  std::set<std::string> seen_stanzas, seen_sequences;
  const Stanza* quiver = nullptr;
  const Stanza* relations = nullptr;
  for (const Stanza& s : stanzas) {
    auto k = known.find(s.name);
    if (k == known.end()) ps.fail(s.loc, "unknown stanza [" + s.name + "]");
    if (s.name == "sequence") {
      if (s.arg.empty()) ps.fail(s.loc, "[sequence] needs a name");
      if (!seen_sequences.insert(s.arg).second) ps.fail(s.loc, "duplicate sequence '" + s.arg + "'");
    } else {
      if (!s.arg.empty()) ps.fail(s.loc, "[" + s.name + "] takes no name");
      if (s.name != "realization" && !seen_stanzas.insert(s.name).second)
        ps.fail(s.loc, "duplicate stanza [" + s.name + "]");
    }
    std::set<std::string> keys;
    for (const Entry& e : s.entries) {
      if (!k->second.count(e.key.text))
        ps.fail(e.key.loc, "unknown key '" + e.key.text + "' in [" + s.name + "]");
      if (!keys.insert(e.key.text).second && !repeatable_keys.count(e.key.text))
        ps.fail(e.key.loc, "duplicate key '" + e.key.text + "'");
    }
    if (s.name == "quiver") quiver = &s;
    if (s.name == "relations") relations = &s;
  }
  if (!quiver) ps.fail(Loc{1, 1}, "missing [quiver]");

  auto get = [](const Stanza& s, const std::string& key) -> const Entry* {
    for (const Entry& e : s.entries)
      if (e.key.text == key) return &e;
    return nullptr;
  };
  auto require = [&](const Stanza& s, const std::string& key) -> const Entry& {
    const Entry* e = get(s, key);
    if (!e) ps.fail(s.loc, "[" + s.name + "] needs '" + key + "'");
    return *e;
  };

  // quiver
  {
    const Entry& v = require(*quiver, "vertices");
    auto ws = words(v.value);
    if (ws.size() == 1 && std::all_of(ws[0].text.begin(), ws[0].text.end(), ::isdigit)) {
      int k = ps.positive(ws[0]);
      for (int i = 1; i <= k; ++i) cfg.vertex_names.push_back(std::to_string(i));
    } else {
      for (const auto& w : ws) {
        if (std::find(cfg.vertex_names.begin(), cfg.vertex_names.end(), w.text) != cfg.vertex_names.end())
          ps.fail(w.loc, "duplicate vertex '" + w.text + "'");
        cfg.vertex_names.push_back(w.text);
      }
    }
    if (cfg.vertex_names.empty()) ps.fail(v.value.loc, "no vertices");
    if (const Entry* a = get(*quiver, "arrows"))
      for (const Token& t : split(a->value, ',')) {
        auto colon = t.text.find(':');
        auto arrow = t.text.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
          ps.fail(t.loc, "expected 'name: source -> target'");
        Token name = trimmed(t.text.substr(0, colon), t.loc);
        Token src = trimmed(t.text.substr(colon + 1, arrow - colon - 1),
                            Loc{t.loc.line, t.loc.column + static_cast<int>(colon) + 1});
        Token dst = trimmed(t.text.substr(arrow + 2), Loc{t.loc.line, t.loc.column + static_cast<int>(arrow) + 2});
        if (name.text.empty() || name.text.find_first_of(" */+-") != std::string::npos)
          ps.fail(name.loc, "bad arrow name '" + name.text + "'");
        for (const auto& o : cfg.arrows)
          if (o.name == name.text) ps.fail(name.loc, "duplicate arrow '" + name.text + "'");
        for (const Token* x : {&src, &dst})
          if (std::find(cfg.vertex_names.begin(), cfg.vertex_names.end(), x->text) == cfg.vertex_names.end())
            ps.fail(x->loc, "unknown vertex '" + x->text + "'");
        cfg.arrows.push_back({name.text, src, dst});
      }
  }
  auto vertex = [&](const std::string& name) {
    return static_cast<int>(std::find(cfg.vertex_names.begin(), cfg.vertex_names.end(), name) - cfg.vertex_names.begin());
  };
  auto arrow_index = [&](const Token& t) {
    for (std::size_t i = 0; i < cfg.arrows.size(); ++i)
      if (cfg.arrows[i].name == t.text) return static_cast<int>(i);
    ps.fail(t.loc, "unknown arrow '" + t.text + "'");
  };

  // relations: terms separated by + and -, each "[coef*]arrow*arrow..."
  if (relations)
    for (const Entry& e : relations->entries) {
      rep::Relation rel;
      const std::string& s = e.value.text;
      if (s.empty()) ps.fail(e.value.loc, "empty relation");
      std::size_t i = 0;
      int endpoints[2] = {-1, -1};
      while (i < s.size()) {
        long long sign = 1;
        while (i < s.size() && (blank(s[i]) || s[i] == '+' || s[i] == '-')) {
          if (s[i] == '-') sign = -sign;
          ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        Token term = trimmed(s.substr(i, j - i), Loc{e.value.loc.line, e.value.loc.column + static_cast<int>(i)});
        if (term.text.empty()) ps.fail(term.loc, "empty term in relation");
        std::vector<Token> parts;
        for (const Token& p : split(term, '*'))
          for (const Token& w : words(p)) parts.push_back(w);
        rep::RelationTerm rt;
        rt.coefficient = sign;
        std::size_t first = 0;
        if (!parts.empty() && std::isdigit(static_cast<unsigned char>(parts[0].text[0]))) {
          rt.coefficient = sign * ps.integer(parts[0]);
          first = 1;
        }
        for (std::size_t k = first; k < parts.size(); ++k) rt.arrows.push_back(arrow_index(parts[k]));
        if (rt.arrows.size() < 2) ps.fail(term.loc, "relation paths must have length at least 2");
        for (std::size_t k = 0; k + 1 < rt.arrows.size(); ++k)
          if (vertex(cfg.arrows[rt.arrows[k]].target.text) != vertex(cfg.arrows[rt.arrows[k + 1]].source.text))
            ps.fail(parts[first + k + 1].loc, "arrows '" + parts[first + k].text + "' and '" + parts[first + k + 1].text +
                                                  "' do not compose");
        int src = vertex(cfg.arrows[rt.arrows.front()].source.text);
        int dst = vertex(cfg.arrows[rt.arrows.back()].target.text);
        if (endpoints[0] < 0) {
          endpoints[0] = src;
          endpoints[1] = dst;
        } else if (endpoints[0] != src || endpoints[1] != dst) {
          ps.fail(term.loc, "relation paths are not parallel");
        }
        rel.push_back(std::move(rt));
        i = j;
      }
      cfg.relations.push_back(std::move(rel));
    }

  for (const Stanza& s : stanzas) {
    if (s.name == "field") {
      if (const Entry* e = get(s, "prime")) {
        long long p = ps.integer(e->value);
        bool prime = p >= 2;
        for (long long d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
        if (!prime || p > 65521) ps.fail(e->value.loc, "prime must be a prime below 65536");
        cfg.prime = static_cast<alg::Fp>(p);
      }
    } else if (s.name == "category") {
      if (const Entry* e = get(s, "n")) cfg.n = ps.positive(e->value);
      if (const Entry* e = get(s, "backend")) {
        if (e->value.text != "cluster-tilting" && e->value.text != "declared")
          ps.fail(e->value.loc, "backend must be 'cluster-tilting' or 'declared'");
        cfg.backend = e->value.text;
      }
      if (const Entry* e = get(s, "generators")) cfg.generators = split(e->value, ',');
    } else if (s.name == "nf") {
      if (const Entry* e = get(s, "objects")) cfg.nf = split(e->value, ',');
    } else if (s.name == "fbar") {
      if (const Entry* e = get(s, "mode")) {
        if (e->value.text != "iso" && e->value.text != "saturate")
          ps.fail(e->value.loc, "mode must be 'iso' or 'saturate'");
        cfg.mode = e->value.text;
      }
      for (const Entry& e : s.entries) {
        if (e.key.text != "seed") continue;
        auto arrow = e.value.text.find("->");
        auto colon = e.value.text.find(':');
        if (arrow == std::string::npos || colon == std::string::npos || colon < arrow)
          ps.fail(e.value.loc, "expected 'source -> target : coordinates'");
        const Loc& l = e.value.loc;
        MorSpec m{trimmed(e.value.text.substr(0, arrow), l),
                  trimmed(e.value.text.substr(arrow + 2, colon - arrow - 2),
                          Loc{l.line, l.column + static_cast<int>(arrow) + 2}),
                  ps.coords(trimmed(e.value.text.substr(colon + 1), Loc{l.line, l.column + static_cast<int>(colon) + 1}))};
        cfg.seeds.push_back(std::move(m));
      }
    } else if (s.name == "bounds") {
      if (const Entry* e = get(s, "multiplicity")) cfg.multiplicity = ps.positive(e->value);
      if (const Entry* e = get(s, "path_length")) cfg.path_length = ps.positive(e->value);
      if (const Entry* e = get(s, "enumeration")) cfg.enumeration = ps.positive(e->value);
      if (const Entry* e = get(s, "search_cap")) cfg.search_cap = static_cast<std::size_t>(ps.positive(e->value));
    } else if (s.name == "sequence" || s.name == "realization") {
      SequenceSpec q;
      q.name = s.arg;
      q.loc = s.loc;
      q.terms = split(require(s, "terms").value, ',');
      q.maps = ps.maps(require(s, "maps").value);
      if (s.name == "sequence") {
        q.delta = ps.coords(require(s, "delta").value);
        cfg.sequences.push_back(std::move(q));
      } else {
        auto ends = split(require(s, "ends").value, ',');
        if (ends.size() != 2) ps.fail(s.loc, "'ends' must name C and A");
        DeclaredSpec d;
        d.loc = s.loc;
        d.c = ends[0];
        d.a = ends[1];
        if (const Entry* e = get(s, "index")) {
          long long v = ps.integer(e->value);
          if (v < 0) ps.fail(e->value.loc, "index must be nonnegative");
          d.index = static_cast<std::size_t>(v);
        }
        d.sequence = std::move(q);
        cfg.declared.push_back(std::move(d));
      }
    }
  }
  if (cfg.backend == "declared" && cfg.declared.empty())
    ps.fail(Loc{1, 1}, "declared backend needs [realization] stanzas");
  if (cfg.backend != "declared" && !cfg.declared.empty())
    ps.fail(cfg.declared.front().loc, "[realization] requires backend = declared");
  return cfg;
}

// ---------------------------------------------------------------- session

namespace {

ex::Vec to_vec(const Parser& ps, const std::vector<Token>& ts, alg::Fp p) {
  ex::Vec v;
  for (const Token& t : ts) {
    long long x = ps.integer(t) % static_cast<long long>(p);
    v.push_back(static_cast<alg::Fp>(x < 0 ? x + p : x));
  }
  return v;
}

ex::Mor to_mor(const Parser& ps, const ex::AddCategory& cat, const ex::Obj& x, const ex::Obj& y,
               const std::vector<Token>& coords, const Loc& loc) {
  if (coords.size() != cat.hom_dim(x, y))
    ps.fail(coords.empty() ? loc : coords.front().loc,
            "Hom(" + cat.name(x) + ", " + cat.name(y) + ") has dimension " + std::to_string(cat.hom_dim(x, y)) +
                ", got " + std::to_string(coords.size()) + " coordinates");
  return ex::Mor{x, y, to_vec(ps, coords, cat.prime())};
}

ex::Exangle to_exangle(const Parser& ps, const Session& s, const SequenceSpec& q, int n) {
  const auto& cat = s.cat();
  if (static_cast<int>(q.terms.size()) != n + 2)
    ps.fail(q.loc, "a sequence needs " + std::to_string(n + 2) + " terms, got " + std::to_string(q.terms.size()));
  if (q.maps.size() != q.terms.size() - 1)
    ps.fail(q.loc, "a sequence needs " + std::to_string(n + 1) + " maps, got " + std::to_string(q.maps.size()));
  ex::Exangle x;
  for (const Token& t : q.terms) x.terms.push_back(s.object(t));
  for (std::size_t i = 0; i < q.maps.size(); ++i)
    x.d.push_back(to_mor(ps, cat, x.terms[i], x.terms[i + 1], q.maps[i], q.loc));
  return x;
}

}  // namespace

ex::Obj Session::object(const Token& t) const {
  Parser ps(cfg.file);
  if (t.text == "0") return {};
  ex::Obj out;
  for (const Token& part : split(t, '+')) {
    int found = -1;
    for (int g = 0; g < cat().size(); ++g)
      if (cat().name(g) == part.text) found = g;
    if (found < 0) ps.fail(part.loc, "unknown object '" + part.text + "'");
    out.push_back(found);
  }
  if (out.empty()) ps.fail(t.loc, "empty object");
  return out;
}

Session build_session(SessionConfig cfg, std::uint64_t seed) {
  Parser ps(cfg.file);
  Session s;
  s.cfg = cfg;
  rep::Quiver q;
  q.vertex_count = static_cast<int>(cfg.vertex_names.size());
  auto vertex = [&](const std::string& name) {
    return static_cast<int>(std::find(cfg.vertex_names.begin(), cfg.vertex_names.end(), name) - cfg.vertex_names.begin());
  };
  for (const auto& a : cfg.arrows) q.arrows.push_back({a.name, vertex(a.source.text), vertex(a.target.text)});
  auto alg = std::make_shared<rep::Algebra>(q, cfg.relations, cfg.prime, cfg.path_length);
  s.algebra = alg;

  std::vector<rep::Module> gens;
  std::vector<std::string> names;
  auto add = [&](rep::Module m, std::string name, const Loc& loc) {
    if (name.empty()) name = "M" + std::to_string(gens.size() + 1);
    if (std::find(names.begin(), names.end(), name) != names.end()) ps.fail(loc, "duplicate generator '" + name + "'");
    gens.push_back(std::move(m));
    names.push_back(std::move(name));
  };
  std::vector<Token> tokens = cfg.generators;
  if (tokens.empty()) tokens.push_back(Token{"projinj", Loc{1, 1}});
  for (const Token& t : tokens) {
    if (t.text == "projinj") {
      for (auto& m : ex::projective_injective_generators(*alg, seed)) {
        std::string label = ex::radical_label(*alg, m, cfg.vertex_names);
        add(std::move(m), label, t.loc);
      }
      continue;
    }
    const char k = t.text.empty() ? 0 : t.text[0];
    const std::string rest = t.text.size() > 1 ? t.text.substr(1) : "";
    if ((k == 'P' || k == 'I' || k == 'S') && vertex(rest) < q.vertex_count) {
      auto kind = k == 'P' ? rep::StandardKind::Projective
                           : (k == 'I' ? rep::StandardKind::Injective : rep::StandardKind::Simple);
      rep::Module m = rep::standard_module(*alg, kind, vertex(rest));
      std::string label = ex::radical_label(*alg, m, cfg.vertex_names);
      add(std::move(m), label.empty() ? t.text : label, t.loc);
      continue;
    }
    std::vector<int> series;
    for (const Token& v : split(t, '/')) {
      if (vertex(v.text) >= q.vertex_count) ps.fail(v.loc, "unknown vertex '" + v.text + "' in generator");
      series.push_back(vertex(v.text));
    }
    try {
      add(rep::uniserial_module(*alg, series), t.text, t.loc);
    } catch (const std::exception& e) {
      ps.fail(t.loc, "no uniserial module '" + t.text + "': " + e.what());
    }
  }
  auto mc = std::make_shared<ex::ModuleCategory>(alg, cfg.n, gens, names);
  s.modules = mc;
  s.problems = mc->validate(seed);

  const ex::Bounds bounds{cfg.multiplicity, cfg.enumeration, cfg.search_cap};
  if (cfg.backend == "declared") {
    // resolve names against a provisional category, then build the table
    s.category = std::make_shared<ex::ExCategory>(cfg.n, mc->ext(), std::make_shared<ex::ClusterTiltingRealizer>(mc),
                                                  bounds);
    std::map<ex::DeclaredRealizer::Key, ex::Exangle> table;
    for (const DeclaredSpec& d : cfg.declared) {
      ex::Obj c = s.object(d.c), a = s.object(d.a);
      if (c.size() != 1 || a.size() != 1) ps.fail(d.loc, "'ends' must be generators");
      const std::size_t dim = mc->ext()->dim(c, a);
      if (d.index >= dim)
        ps.fail(d.loc, "E(" + s.cat().name(c) + ", " + s.cat().name(a) + ") has dimension " + std::to_string(dim));
      ex::Exangle x = to_exangle(ps, s, d.sequence, cfg.n);
      if (x.front() != a || x.back() != c) ps.fail(d.loc, "terms must start at A and end at C");
      x.delta.assign(dim, 0);
      x.delta[d.index] = 1;
      if (!table.emplace(ex::DeclaredRealizer::Key{c[0], a[0], d.index}, x).second)
        ps.fail(d.loc, "duplicate realization");
    }
    s.category = std::make_shared<ex::ExCategory>(
        cfg.n, mc->ext(), std::make_shared<ex::DeclaredRealizer>(mc->ext(), cfg.n, std::move(table)), bounds);
  } else {
    s.category = std::make_shared<ex::ExCategory>(cfg.n, mc->ext(), std::make_shared<ex::ClusterTiltingRealizer>(mc),
                                                  bounds);
  }
  for (const SequenceSpec& q2 : cfg.sequences) {
    ex::Exangle x = to_exangle(ps, s, q2, cfg.n);
    const std::size_t dim = mc->ext()->dim(x.back(), x.front());
    if (q2.delta.size() != dim)
      ps.fail(q2.loc, "E(" + s.cat().name(x.back()) + ", " + s.cat().name(x.front()) + ") has dimension " +
                          std::to_string(dim) + ", got " + std::to_string(q2.delta.size()) + " coordinates");
    x.delta = to_vec(ps, q2.delta, cfg.prime);
    s.sequences.emplace_back(q2.name, std::move(x));
  }
  // validate N and seeds now so errors carry locations
  make_localization(s);
  return s;
}

std::unique_ptr<loc::Localization> make_localization(const Session& s) {
  Parser ps(s.cfg.file);
  std::vector<int> nf;
  for (const Token& t : s.cfg.nf)
    for (int g : s.object(t)) nf.push_back(g);
  std::vector<ex::Mor> seeds;
  for (const MorSpec& m : s.cfg.seeds)
    seeds.push_back(to_mor(ps, s.cat(), s.object(m.source), s.object(m.target), m.coords, m.source.loc));
  if (s.cfg.mode == "iso" && !seeds.empty()) ps.fail(s.cfg.seeds.front().source.loc, "seeds need mode = saturate");
  return std::make_unique<loc::Localization>(s.category, nf,
                                             s.cfg.mode == "iso" ? loc::FMode::Iso : loc::FMode::Saturate, seeds,
                                             s.sequences);
}

// ---------------------------------------------------------------- JSON

Json exangle_json(const ex::AddCategory& cat, const ex::Exangle& x) {
  Json terms = Json::array(), maps = Json::array();
  for (const auto& t : x.terms) terms.push_back(cat.name(t));
  for (const auto& d : x.d) maps.push_back(d.c);
  return Json{{"terms", terms}, {"maps", maps}, {"delta", x.delta}};
}

Json witness_json(const ex::AddCategory& cat, const std::optional<ex::Witness>& w) {
  if (!w) return nullptr;
  Json j{{"side", w->side}, {"position", w->position}};
  j["test_object"] = w->test_object >= 0 ? Json(cat.name(w->test_object)) : Json(nullptr);
  j["element"] = w->element;
  j["detail"] = w->detail;
  return j;
}

Json axioms_json(const ex::AddCategory& cat, const std::vector<ex::AxiomResult>& rs) {
  Json out = Json::array();
  for (const auto& r : rs)
    out.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"checked", r.checked}, {"witness", witness_json(cat, r.witness)}});
  return out;
}

namespace {

Json verdict_json(const ex::AddCategory& cat, const ex::Verdict& v) {
  return Json{{"ok", v.ok}, {"witness", witness_json(cat, v.witness)}};
}

std::string basename(const std::string& path) {
  auto k = path.find_last_of('/');
  return k == std::string::npos ? path : path.substr(k + 1);
}

}  // namespace

Json header(const Session& s, const std::string& command) {
  const auto& cat = s.cat();
  Json gens = Json::array();
  for (int g = 0; g < cat.size(); ++g)
    gens.push_back(Json{{"name", cat.name(g)}, {"dims", s.modules->generators()[g].dims}});
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["input"] = basename(s.cfg.file);
  j["field"] = Json{{"prime", s.cfg.prime}};
  j["bounds"] = Json{{"multiplicity", s.cfg.multiplicity},
                     {"enumeration", s.cfg.enumeration},
                     {"path_length", s.cfg.path_length},
                     {"search_cap", s.cfg.search_cap}};
  j["category"] = Json{{"n", s.cfg.n}, {"backend", s.cfg.backend}, {"generators", gens}, {"problems", s.problems}};
  return j;
}

Outcome run_check(const Session& s) {
  Outcome o;
  o.json = header(s, "check");
  auto rs = ex::check_core_axioms(*s.category);
  o.json["core"] = axioms_json(s.cat(), rs);
  const bool ok = std::all_of(rs.begin(), rs.end(), [](const ex::AxiomResult& r) { return r.ok; });
  o.json["verdict"] = ok ? "core axioms hold" : "core axioms fail";
  o.exit_code = ok ? 0 : 2;
  o.json["exit_code"] = o.exit_code;
  return o;
}

Outcome run_report(const Session& s) {
  const auto& cat = s.cat();
  const auto& e = s.category->E();
  Outcome o;
  Json& j = o.json;
  j = header(s, "localize");
  Json hom = Json::array(), ext = Json::array();
  for (int a = 0; a < cat.size(); ++a) {
    Json hr = Json::array(), er = Json::array();
    for (int b = 0; b < cat.size(); ++b) {
      hr.push_back(cat.hom_dim(a, b));
      er.push_back(e.dim(a, b));
    }
    hom.push_back(hr);
    ext.push_back(er);
  }
  j["hom"] = hom;
  j["ext"] = ext;
  j["core"] = axioms_json(cat, ex::check_core_axioms(*s.category));

  Json seqs = Json::array();
  for (const auto& [name, x] : s.sequences)
    seqs.push_back(Json{{"name", name},
                        {"exangle", exangle_json(cat, x)},
                        {"is_n_exangle", verdict_json(cat, ex::is_n_exangle(*s.category, x))},
                        {"distinguished", verdict_json(cat, ex::is_distinguished(*s.category, x))}});
  j["sequences"] = seqs;

  auto l = make_localization(s);
  const auto r = l->report();
  Json nf = Json::array();
  for (int g : l->quotient()->nf()) nf.push_back(cat.name(g));
  Json lj;
  lj["nf"] = nf;
  lj["mode"] = s.cfg.mode;
  Json seeds = Json::array();
  for (const auto& m : l->fclass()->seeds())
    seeds.push_back(Json{{"source", cat.name(m.src)}, {"target", cat.name(m.dst)}, {"coords", m.c}});
  lj["seeds"] = seeds;
  lj["mr"] = axioms_json(cat, r.mr);
  lj["mr_ok"] = r.mr_ok;
  Json groups = Json::array();
  for (const auto& g : r.groups)
    groups.push_back(Json{{"c", cat.name(g.c)},
                          {"a", cat.name(g.a)},
                          {"e", g.e_dim},
                          {"k", g.k_dim},
                          {"ebar", g.ebar_dim},
                          {"roofs", g.roofs},
                          {"classes", g.classes},
                          {"mu_bijective", g.mu_bijective},
                          {"truncated", g.truncated}});
  lj["groups"] = groups;
  lj["descent_problems"] = r.descent_problems;
  Json fails = Json::array();
  for (const auto& f : r.weak_kc_failures)
    fails.push_back(Json{{"label", f.label},
                         {"exangle", exangle_json(cat, f.exangle)},
                         {"witness", witness_json(cat, f.verdict.witness)}});
  lj["weak_kc"] = Json{{"ok", r.weak_kc.ok},
                       {"checked", r.weak_kc.checked},
                       {"witness", witness_json(cat, r.weak_kc.witness)},
                       {"failures", fails}};
  lj["localized_checked"] = r.localized_checked;
  lj["localized"] = axioms_json(cat, r.localized);
  auto check = [](const loc::LocalizationReport::Check& c) {
    return Json{{"checked", c.checked}, {"ok", c.ok}, {"problems", c.problems}};
  };
  lj["equivalence"] = check(r.equivalence);
  lj["exact_functor"] = check(r.exact_functor);
  lj["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
  j["localization"] = lj;
  j["verdict"] = r.verdict;
  j["exit_code"] = r.exit_code;
  o.exit_code = r.exit_code;
  return o;
}

}  // namespace exangulate::session
