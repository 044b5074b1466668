#include "exangulate/module_category.hpp"

#include <algorithm>
#include <stdexcept>

namespace exangulate::ex {

using rep::DirectSum;
using rep::ModSequence;
using rep::Resolution;

std::vector<Module> projective_injective_generators(const Algebra& a, std::uint64_t seed) {
  std::vector<Module> out;
  for (auto kind : {rep::StandardKind::Projective, rep::StandardKind::Injective})
    for (int v = a.vertex_count() - 1; v >= 0; --v) {
      Module m = rep::standard_module(a, kind, v);
      bool seen = false;
      for (const auto& o : out)
        if (o.dims == m.dims && rep::find_isomorphism(a, o, m, seed)) seen = true;
      if (!seen) out.push_back(std::move(m));
    }
  return out;
}

std::string radical_label(const Algebra& a, const Module& m, const std::vector<std::string>& names) {
  const auto& q = a.quiver();
  const Fp p = a.prime();
  std::vector<Matrix> cur;
  for (auto d : m.dims) cur.push_back(Matrix::identity(d, p));
  std::string label;
  while (true) {
    std::size_t total = 0;
    for (const auto& c : cur) total += c.cols();
    if (total == 0) break;
    std::vector<Matrix> rad;
    for (int w = 0; w < a.vertex_count(); ++w) {
      std::vector<Matrix> parts;
      for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
        if (q.arrows[ai].target == w) parts.push_back(m.arrow_maps[ai] * cur[q.arrows[ai].source]);
      Matrix span = parts.empty() ? Matrix(m.dims[w], 0, p) : alg::hstack(parts, m.dims[w], p);
      rad.push_back(alg::column_space_basis(span));
    }
    int top = -1;
    std::size_t top_total = 0;
    for (int w = 0; w < a.vertex_count(); ++w) {
      std::size_t t = cur[w].cols() - rad[w].cols();
      top_total += t;
      if (t) top = w;
    }
    if (top_total != 1) return "";
    label += (label.empty() ? "" : "/") + names[top];
    cur = std::move(rad);
  }
  return label;
}

// ---------------------------------------------------------------- ModuleCategory

ModuleCategory::ModuleCategory(std::shared_ptr<const Algebra> a, int n, std::vector<Module> gens,
                               std::vector<std::string> names)
    : alg_(std::move(a)), n_(n), gens_(std::move(gens)) {
  const Algebra& al = *alg_;
  const Fp p = al.prime();
  const int g = static_cast<int>(gens_.size());
  if (names.size() != gens_.size()) throw std::invalid_argument("one name per generator required");
  homs_.assign(g, std::vector<std::vector<ModMorphism>>(g));
  flat_.assign(g, std::vector<std::size_t>(g, 0));
  std::vector<std::vector<std::size_t>> dims(g, std::vector<std::size_t>(g));
  for (int x = 0; x < g; ++x)
    for (int y = 0; y < g; ++y) {
      homs_[x][y] = rep::hom_basis(al, gens_[x], gens_[y]);
      dims[x][y] = homs_[x][y].size();
      for (int v = 0; v < al.vertex_count(); ++v) flat_[x][y] += gens_[x].dims[v] * gens_[y].dims[v];
    }
  auto coords = [&](int x, int y, const ModMorphism& f) {
    auto c = rep::coordinates(homs_[x][y], f, flat_[x][y], p);
    if (!c) throw std::logic_error("morphism outside its hom space");
    return *c;
  };
  std::vector<Matrix> comp;
  for (int x = 0; x < g; ++x)
    for (int y = 0; y < g; ++y)
      for (int z = 0; z < g; ++z) {
        const std::size_t d1 = dims[x][y], d2 = dims[y][z];
        Matrix t(dims[x][z], d1 * d2, p);
        for (std::size_t b1 = 0; b1 < d1; ++b1)
          for (std::size_t b2 = 0; b2 < d2; ++b2) t.paste(0, b1 * d2 + b2, coords(x, z, homs_[y][z][b2] * homs_[x][y][b1]));
        comp.push_back(std::move(t));
      }
  std::vector<Vec> ids;
  for (int x = 0; x < g; ++x) ids.push_back(coords(x, x, rep::identity_morphism(gens_[x], p)).col(0));
  cat_ = std::make_shared<AddCategory>(p, names, dims, std::move(comp), std::move(ids));

  for (int x = 0; x < g; ++x) res_.push_back(rep::resolution(al, gens_[x], n_ + 1));
  std::vector<std::vector<std::size_t>> edims(g, std::vector<std::size_t>(g));
  exts_.resize(g);
  for (int c = 0; c < g; ++c)
    for (int x = 0; x < g; ++x) {
      exts_[c].emplace_back(al, n_, gens_[c], gens_[x], res_[c]);
      edims[c][x] = exts_[c][x].dim();
    }
  std::vector<std::vector<Matrix>> push, pull;
  for (int c = 0; c < g; ++c)
    for (int x = 0; x < g; ++x)
      for (int y = 0; y < g; ++y) {
        std::vector<Matrix> tab;
        for (const auto& b : homs_[x][y]) tab.push_back(rep::push_matrix(al, exts_[c][x], exts_[c][y], b));
        push.push_back(std::move(tab));
      }
  for (int c2 = 0; c2 < g; ++c2)
    for (int c = 0; c < g; ++c)
      for (int x = 0; x < g; ++x) {
        std::vector<Matrix> tab;
        for (const auto& b : homs_[c2][c]) tab.push_back(rep::pull_matrix(al, exts_[c][x], exts_[c2][x], b));
        pull.push_back(std::move(tab));
      }
  ext_ = std::make_shared<Bifunctor>(cat_, edims, std::move(push), std::move(pull));
}

DirectSum ModuleCategory::object(const Obj& x) const {
  if (x.empty()) return DirectSum{rep::zero_module(*alg_), {}, {}};
  std::vector<Module> parts;
  for (int g : x) parts.push_back(gens_[g]);
  return rep::direct_sum(*alg_, parts);
}

ModMorphism ModuleCategory::to_module(const Mor& f) const {
  const Fp p = alg_->prime();
  DirectSum s = object(f.src), t = object(f.dst);
  ModMorphism r = rep::zero_morphism(s.sum, t.sum, p);
  for (std::size_t i = 0; i < f.src.size(); ++i)
    for (std::size_t j = 0; j < f.dst.size(); ++j) {
      const auto& basis = homs_[f.src[i]][f.dst[j]];
      Vec c = cat_->block(f, i, j);
      for (std::size_t b = 0; b < c.size(); ++b)
        if (c[b]) r = r + t.inclusions[j] * basis[b].scaled(c[b]) * s.projections[i];
    }
  return r;
}

Mor ModuleCategory::from_module(const Obj& x, const Obj& y, const ModMorphism& f) const {
  const Fp p = alg_->prime();
  DirectSum s = object(x), t = object(y);
  Mor r = cat_->zero(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      auto c = rep::coordinates(homs_[x[i]][y[j]], t.projections[j] * f * s.inclusions[i], flat_[x[i]][y[j]], p);
      if (!c) throw std::logic_error("module map is not a homomorphism between the given objects");
      cat_->set_block(r, i, j, c->col(0));
    }
  return r;
}

Resolution ModuleCategory::resolution(const Obj& c) const {
  if (c.empty()) return rep::resolution(*alg_, rep::zero_module(*alg_), n_ + 1);
  if (c.size() == 1) return res_[c[0]];
  std::vector<Resolution> parts;
  for (int g : c) parts.push_back(res_[g]);
  return rep::direct_sum_resolution(*alg_, parts);
}

namespace {

// Inclusions/projections of the n-th term of a direct-sum resolution.
DirectSum term_sum(const Algebra& a, const std::vector<Resolution>& res, const Obj& c, int n) {
  std::vector<Module> parts;
  for (int g : c) parts.push_back(res[g].terms[n]);
  return rep::direct_sum(a, parts);
}

}  // namespace

ModMorphism ModuleCategory::cocycle(const Obj& c, const Obj& a, const Vec& delta) const {
  const Fp p = alg_->prime();
  DirectSum am = object(a);
  DirectSum pn = term_sum(*alg_, res_, c, n_);
  ModMorphism r = rep::zero_morphism(pn.sum, am.sum, p);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::size_t off = ext_->block_offset(c, a, i, j), d = ext_->dim(c[i], a[j]);
      if (!d) continue;
      Vec blk(delta.begin() + off, delta.begin() + off + d);
      r = r + am.inclusions[j] * exts_[c[i]][a[j]].cocycle(to_col(blk, p)) * pn.projections[i];
    }
  return r;
}

Vec ModuleCategory::yoneda(const Obj& c, const Obj& a, const ModSequence& s) const {
  const Fp p = alg_->prime();
  DirectSum am = object(a), cm = object(c);
  rep::ExtGroup big(*alg_, n_, cm.sum, am.sum, resolution(c));
  ModMorphism z = big.cocycle(rep::yoneda_class(*alg_, big, s));
  DirectSum pn = term_sum(*alg_, res_, c, n_);
  Vec out(ext_->dim(c, a), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::size_t off = ext_->block_offset(c, a, i, j);
      Matrix k = exts_[c[i]][a[j]].class_of(am.projections[j] * z * pn.inclusions[i]);
      for (std::size_t r = 0; r < k.rows(); ++r) out[off + r] = k.at(r, 0) % p;
    }
  return out;
}

ModSequence ModuleCategory::to_sequence(const Exangle& x) const {
  ModSequence s;
  for (const auto& t : x.terms) s.terms.push_back(object(t).sum);
  for (const auto& d : x.d) s.maps.push_back(to_module(d));
  return s;
}

std::pair<Obj, ModMorphism> ModuleCategory::left_approximation(const Module& m) const {
  const Algebra& al = *alg_;
  const Fp p = al.prime();
  struct Comp {
    int g;
    ModMorphism f;
  };
  std::vector<Comp> comps;
  for (int g = 0; g < static_cast<int>(gens_.size()); ++g)
    for (auto& f : rep::hom_basis(al, m, gens_[g])) comps.push_back({g, std::move(f)});
  std::vector<bool> kept(comps.size(), true);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::vector<Matrix> span;
    for (std::size_t l = 0; l < comps.size(); ++l) {
      if (l == k || !kept[l]) continue;
      for (const auto& h : homs_[comps[l].g][comps[k].g]) span.push_back(rep::flatten(h * comps[l].f, p));
    }
    Matrix target = rep::flatten(comps[k].f, p);
    if (span.empty()) {
      if (target.is_zero()) kept[k] = false;
      continue;
    }
    if (alg::in_column_span(alg::hstack(span, target.rows(), p), target)) kept[k] = false;
  }
  Obj obj;
  std::vector<const ModMorphism*> maps;
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (kept[k]) {
      obj.push_back(comps[k].g);
      maps.push_back(&comps[k].f);
    }
  DirectSum t = object(obj);
  ModMorphism j = rep::zero_morphism(m, t.sum, p);
  for (std::size_t k = 0; k < maps.size(); ++k) j = j + t.inclusions[k] * *maps[k];
  return {obj, j};
}

std::optional<std::pair<Obj, ModMorphism>> ModuleCategory::identify(const Module& m) const {
  auto [obj, j] = left_approximation(m);
  if (!j.is_bijective()) return std::nullopt;
  return std::make_pair(obj, j);
}

std::vector<std::string> ModuleCategory::validate(std::uint64_t seed) const {
  const Algebra& al = *alg_;
  std::vector<std::string> problems;
  const int g = static_cast<int>(gens_.size());
  for (int x = 0; x < g; ++x) {
    if (!rep::is_indecomposable(al, gens_[x], seed)) problems.push_back("generator " + cat_->name(x) + " is decomposable");
    for (int y = 0; y < x; ++y)
      if (gens_[x].dims == gens_[y].dims && rep::find_isomorphism(al, gens_[x], gens_[y], seed))
        problems.push_back("generators " + cat_->name(y) + " and " + cat_->name(x) + " are isomorphic");
  }
  for (int i = 1; i < n_; ++i)
    for (int c = 0; c < g; ++c)
      for (int a = 0; a < g; ++a)
        if (rep::ExtGroup(al, i, gens_[c], gens_[a], res_[c]).dim() != 0)
          problems.push_back("Ext^" + std::to_string(i) + "(" + cat_->name(c) + ", " + cat_->name(a) + ") is nonzero");
  for (int v = 0; v < al.vertex_count(); ++v)
    for (auto kind : {rep::StandardKind::Projective, rep::StandardKind::Injective}) {
      Module m = rep::standard_module(al, kind, v);
      if (!identify(m))
        problems.push_back(std::string(kind == rep::StandardKind::Projective ? "projective P" : "injective I") +
                           std::to_string(v + 1) + " is not in the subcategory");
    }
  return problems;
}

// ---------------------------------------------------------------- realizers

namespace {

// Map out of coker(into) induced by out (which must vanish on im into).
ModMorphism induced_from_cokernel(const Module& sum, const ModMorphism& into, const ModMorphism& out) {
  ModMorphism sec;
  for (std::size_t v = 0; v < sum.dims.size(); ++v)
    sec.maps.push_back(alg::quotient_with_section(sum.dims[v], alg::column_space_basis(into.maps[v])).section);
  return out * sec;
}

}  // namespace

Exangle ClusterTiltingRealizer::realize(const Obj& c, const Obj& a, const Vec& delta) const {
  const ModuleCategory& mc = *mc_;
  const Algebra& al = mc.algebra();
  const int n = mc.n();
  DirectSum am = mc.object(a), cm = mc.object(c);
  rep::ExtGroup big(al, n, cm.sum, am.sum, mc.resolution(c));
  ModSequence s = rep::splice(al, big, mc.cocycle(c, a, delta));
  std::vector<Module>& m = s.terms;
  std::vector<ModMorphism>& d = s.maps;
  std::vector<Obj> terms(n + 2);
  terms[0] = a;
  terms[n + 1] = c;
  for (int i = 1; i <= n; ++i) {
    auto [obj, j] = mc.left_approximation(m[i]);
    if (!j.is_injective())
      throw std::runtime_error("no realization found within multiplicity bound: approximation of term " +
                               std::to_string(i) + " is not injective");
    DirectSum ci = mc.object(obj);
    if (i == n) {
      if (!j.is_bijective())
        throw std::runtime_error("no realization found within multiplicity bound: term " + std::to_string(n) +
                                 " is not in the subcategory");
      d[n] = d[n] * rep::inverse_morphism(j);
    } else {
      DirectSum ds = rep::direct_sum(al, {ci.sum, m[i + 1]});
      ModMorphism into = ds.inclusions[0] * j - ds.inclusions[1] * d[i];
      auto cd = rep::cokernel(al, ds.sum, into);
      d[i + 1] = induced_from_cokernel(ds.sum, into, d[i + 1] * ds.projections[1]);
      d[i] = cd.projection * ds.inclusions[0];
      m[i + 1] = cd.cokernel;
    }
    d[i - 1] = j * d[i - 1];
    m[i] = ci.sum;
    terms[i] = obj;
  }
  Exangle x;
  x.terms = terms;
  for (int i = 0; i <= n; ++i) x.d.push_back(mc.from_module(terms[i], terms[i + 1], d[i]));
  x.delta = delta;
  return x;
}

Exangle DeclaredRealizer::realize(const Obj& c, const Obj& a, const Vec& delta) const {
  const AddCategory& cat = e_->category();
  const Fp p = cat.prime();
  alg::PrimeField fld(p);
  std::vector<bool> used_c(c.size(), false), used_a(a.size(), false);
  std::vector<Exangle> pieces;
  std::vector<std::size_t> piece_c, piece_a;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::size_t off = e_->block_offset(c, a, i, j), dim = e_->dim(c[i], a[j]);
      std::vector<std::size_t> nz;
      for (std::size_t k = 0; k < dim; ++k)
        if (delta[off + k]) nz.push_back(k);
      if (nz.empty()) continue;
      if (nz.size() > 1 || used_c[i] || used_a[j])
        throw std::runtime_error("no realization found: the declared table covers basis multiples and diagonal sums only");
      auto it = table_.find({c[i], a[j], nz[0]});
      if (it == table_.end())
        throw std::runtime_error("no realization found: E(" + cat.name(c[i]) + ", " + cat.name(a[j]) + ") basis " +
                                 std::to_string(nz[0]) + " is not declared");
      used_c[i] = used_a[j] = true;
      piece_c.push_back(i);
      piece_a.push_back(j);
      Exangle x = it->second;
      const Fp lambda = delta[off + nz[0]];
      x.d[0] = cat.scale(x.d[0], fld.inv(lambda));
      for (auto& v : x.delta) v = fld.mul(v, lambda);
      pieces.push_back(std::move(x));
    }
  Obj rest_c, rest_a;
  std::vector<std::size_t> back_pos, front_pos;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!used_c[i]) {
      rest_c.push_back(c[i]);
      back_pos.push_back(i);
    }
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!used_a[j]) {
      rest_a.push_back(a[j]);
      front_pos.push_back(j);
    }
  Exangle sum = split_exangle(cat, n_, rest_c, rest_a, e_->dim(rest_c, rest_a));
  for (const auto& x : pieces) sum = direct_sum(cat, *e_, sum, x);
  back_pos.insert(back_pos.end(), piece_c.begin(), piece_c.end());
  front_pos.insert(front_pos.end(), piece_a.begin(), piece_a.end());
  return reorder_ends(cat, *e_, sum, a, c, front_pos, back_pos);
}

}  // namespace exangulate::ex
