#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exangulate/session.hpp"

using namespace exangulate;
using session::Json;

namespace {

struct Options {
  std::string file;
  std::string json_path;
  std::optional<unsigned> prime;
  std::optional<int> multiplicity;
  bool verbose = false;
  std::string x, y;
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("EXANGULATE_SEED");
  if (!s || !*s) return 0x5eed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 0);
  if (*end) throw std::runtime_error("EXANGULATE_SEED must be an integer");
  return v;
}

session::Session load(const Options& o) {
  std::ifstream in(o.file);
  if (!in) throw std::runtime_error("cannot open " + o.file);
  std::stringstream ss;
  ss << in.rdbuf();
  auto cfg = session::parse_input(ss.str(), o.file);
  if (o.prime) {
    bool prime = *o.prime >= 2;
    for (unsigned d = 2; d * d <= *o.prime && prime; ++d) prime = *o.prime % d != 0;
    if (!prime || *o.prime > 65521) throw std::runtime_error("--prime must be a prime below 65536");
    cfg.prime = static_cast<alg::Fp>(*o.prime);
  }
  if (o.multiplicity) {
    if (*o.multiplicity < 1) throw std::runtime_error("--multiplicity-bound must be positive");
    cfg.multiplicity = *o.multiplicity;
  }
  if (o.verbose) std::cerr << "building category from " << o.file << "\n";
  return session::build_session(std::move(cfg), seed_from_env());
}

void emit(const Options& o, const Json& j) {
  if (o.json_path.empty()) return;
  const std::string text = j.dump(2) + "\n";
  if (o.json_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.json_path);
  if (!out) throw std::runtime_error("cannot write " + o.json_path);
  out << text;
}

std::string witness_text(const Json& w) {
  if (w.is_null()) return "";
  std::string s = w["side"].get<std::string>();
  if (w["position"].get<int>() >= 0) s += ", position " + std::to_string(w["position"].get<int>());
  if (!w["test_object"].is_null()) s += ", T = " + w["test_object"].get<std::string>();
  if (!w["detail"].get<std::string>().empty()) s += " (" + w["detail"].get<std::string>() + ")";
  return s;
}

void print_axioms(const Json& axioms, const std::string& indent = "  ") {
  for (const auto& a : axioms) {
    std::cout << indent << a["name"].get<std::string>() << ": " << (a["ok"].get<bool>() ? "pass" : "FAIL") << " ("
              << a["checked"].get<std::size_t>() << " cases)";
    if (!a["witness"].is_null()) std::cout << "  witness: " << witness_text(a["witness"]);
    std::cout << "\n";
  }
}

void print_header(const Json& j) {
  std::cout << "generators:";
  for (const auto& g : j["category"]["generators"]) std::cout << " " << g["name"].get<std::string>();
  std::cout << "\nfield F_" << j["field"]["prime"].get<unsigned>() << ", n = " << j["category"]["n"].get<int>()
            << ", bounds: multiplicity " << j["bounds"]["multiplicity"].get<int>() << ", enumeration "
            << j["bounds"]["enumeration"].get<int>() << "\n";
  for (const auto& p : j["category"]["problems"]) std::cout << "warning: " << p.get<std::string>() << "\n";
}

int run_check(const Options& o) {
  auto s = load(o);
  if (o.verbose) std::cerr << "checking core axioms\n";
  auto out = session::run_check(s);
  emit(o, out.json);
  if (o.json_path != "-") {
    print_header(out.json);
    std::cout << "core axioms:\n";
    print_axioms(out.json["core"]);
    std::cout << "verdict: " << out.json["verdict"].get<std::string>() << "\n";
  }
  return out.exit_code;
}

int run_localize(const Options& o) {
  auto s = load(o);
  if (o.verbose) std::cerr << "running the localization report\n";
  auto out = session::run_report(s);
  emit(o, out.json);
  if (o.json_path == "-") return out.exit_code;
  const Json& j = out.json;
  print_header(j);
  std::cout << "core axioms:\n";
  print_axioms(j["core"]);
  for (const auto& q : j["sequences"]) {
    std::cout << "sequence " << q["name"].get<std::string>() << ": ";
    std::cout << (q["is_n_exangle"]["ok"].get<bool>() ? "n-exangle" : "not an n-exangle");
    if (!q["is_n_exangle"]["ok"].get<bool>()) std::cout << " [" << witness_text(q["is_n_exangle"]["witness"]) << "]";
    std::cout << "; " << (q["distinguished"]["ok"].get<bool>() ? "distinguished" : "not distinguished") << "\n";
  }
  const Json& l = j["localization"];
  std::cout << "localization (" << l["mode"].get<std::string>() << " mode, N =";
  if (l["nf"].empty()) std::cout << " 0";
  for (const auto& n : l["nf"]) std::cout << " " << n.get<std::string>();
  std::cout << "):\n";
  print_axioms(l["mr"]);
  if (!l["error"].is_null()) std::cout << "  error: " << l["error"].get<std::string>() << "\n";
  if (l["mr_ok"].get<bool>() && l["error"].is_null()) {
    for (const auto& g : l["groups"])
      if (g["e"].get<std::size_t>() > 0 || g["ebar"].get<std::size_t>() > 0)
        std::cout << "  E(" << g["c"].get<std::string>() << ", " << g["a"].get<std::string>()
                  << "): dim " << g["e"] << ", K " << g["k"] << ", quotient " << g["ebar"] << ", classes "
                  << g["classes"] << "\n";
    const Json& w = l["weak_kc"];
    std::cout << "  weak-kc: " << (w["ok"].get<bool>() ? "pass" : "FAIL") << " (" << w["checked"] << " exangles)";
    if (!w["witness"].is_null()) std::cout << "  witness: " << witness_text(w["witness"]);
    std::cout << "\n";
    if (l["localized_checked"].get<bool>()) {
      std::cout << "  axioms on the localization:\n";
      print_axioms(l["localized"], "    ");
    }
    for (const char* key : {"equivalence", "exact_functor"}) {
      const Json& c = l[key];
      if (!c["checked"].get<bool>()) continue;
      std::cout << "  " << key << ": " << (c["ok"].get<bool>() ? "pass" : "FAIL") << "\n";
      for (const auto& p : c["problems"]) std::cout << "    " << p.get<std::string>() << "\n";
    }
  }
  std::cout << "verdict: " << j["verdict"].get<std::string>() << " (exit " << out.exit_code << ")\n";
  return out.exit_code;
}

int run_inspect(const Options& o, bool hom) {
  auto s = load(o);
  auto object = [&](const std::string& text) {
    try {
      return s.object(session::Token{text, {1, 1}});
    } catch (const session::InputError& e) {
      throw std::runtime_error(e.message());
    }
  };
  ex::Obj x = object(o.x), y = object(o.y);
  const std::size_t dim = hom ? s.cat().hom_dim(x, y) : s.category->E().dim(x, y);
  Json j = session::header(s, hom ? "hom" : "ext");
  j["source"] = s.cat().name(x);
  j["target"] = s.cat().name(y);
  j["dim"] = dim;
  if (!s.cfg.nf.empty()) {
    auto l = session::make_localization(s);
    if (hom) {
      j["quotient_dim"] = l->quotient()->cat().hom_dim(x, y);
    } else {
      try {
        j["quotient_dim"] = l->ext()->ebar()->dim(x, y);
      } catch (const std::exception& e) {
        j["quotient_dim"] = nullptr;
        j["quotient_error"] = e.what();
      }
    }
  }
  emit(o, j);
  if (o.json_path != "-") {
    std::cout << "dim " << (hom ? "Hom(" : "E(") << s.cat().name(x) << ", " << s.cat().name(y) << ") = " << dim << "\n";
    if (j.contains("quotient_dim") && !j["quotient_dim"].is_null())
      std::cout << "dim in the quotient by N = " << j["quotient_dim"] << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks n-exangulated categories of modules and their localizations"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input file (.exg)")->required()->check(CLI::ExistingFile);
    sub->add_option("--prime", o.prime, "override the field prime");
    sub->add_option("--multiplicity-bound", o.multiplicity, "override the per-generator multiplicity bound");
    sub->add_option("--json", o.json_path, "write the JSON report to this path ('-' for stdout)");
    sub->add_flag("--verbose", o.verbose, "progress on stderr");
  };
  auto* check = app.add_subcommand("check", "core axioms only");
  common(check);
  auto* localize = app.add_subcommand("localize", "full localization report");
  common(localize);
  auto* hom = app.add_subcommand("hom", "dimension of Hom(X, Y)");
  common(hom);
  hom->add_option("x", o.x, "source object")->required();
  hom->add_option("y", o.y, "target object")->required();
  auto* ext = app.add_subcommand("ext", "dimension of E(C, A)");
  common(ext);
  ext->add_option("c", o.x, "object C")->required();
  ext->add_option("a", o.y, "object A")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }
  try {
    if (*check) return run_check(o);
    if (*localize) return run_localize(o);
    if (*hom) return run_inspect(o, true);
    if (*ext) return run_inspect(o, false);
  } catch (const session::InputError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
