#include "exangulate/exangulated.hpp"

#include <algorithm>
#include <stdexcept>

namespace exangulate::ex {

namespace {

// First points of F_p^dim in lexicographic order (first coordinate fastest).
std::vector<Vec> bounded_points(std::size_t dim, Fp p, std::size_t cap) {
  std::vector<Vec> out;
  Vec v(dim, 0);
  while (out.size() < cap) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < dim && ++v[i] == p) v[i++] = 0;
    if (i == dim) break;
  }
  return out;
}

Matrix combine(const Matrix& basis, const Vec& coeffs) {
  Matrix r(basis.rows(), 1, basis.prime());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k]) r = r + basis.col_range(k, 1).scaled(coeffs[k]);
  return r;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Fp x) { return x == 0; });
}

// A kernel vector of out that is not in the image of in.
std::optional<Vec> exactness_gap(const Matrix& out, const Matrix& in) {
  Matrix k = alg::kernel_basis(out);
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Matrix col = k.col_range(j, 1);
    if (!alg::in_column_span(in, col)) return col.col(0);
  }
  return std::nullopt;
}

std::vector<std::size_t> all_indices(const Obj& x) {
  std::vector<std::size_t> r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
  return r;
}

// Contravariant maps Hom(T, X_i) -> Hom(T, X_{i+1}) and covariant maps
// Hom(X_{i+1}, T) -> Hom(X_i, T) for i = 0..n.
struct HomMaps {
  std::vector<Matrix> contra, co;
};

HomMaps hom_maps(const AddCategory& cat, const Exangle& x, int t) {
  HomMaps h;
  const Obj tt{t};
  for (const auto& d : x.d) {
    h.contra.push_back(cat.post_matrix(d, tt));
    h.co.push_back(cat.pre_matrix(d, tt));
  }
  return h;
}

Verdict fail(std::string side, int pos, int t, Vec el, std::string detail = {}) {
  Verdict v;
  v.ok = false;
  v.witness = Witness{std::move(side), pos, t, std::move(el), std::move(detail)};
  return v;
}

}  // namespace

Exangle split_exangle(const AddCategory& cat, int n, const Obj& c, const Obj& a, std::size_t ext_dim) {
  Exangle x;
  x.delta = Vec(ext_dim, 0);
  if (n == 1) {
    const Obj mid = concat(a, c);
    x.terms = {a, mid, c};
    x.d.push_back(cat.assemble({a, c}, {a}, {{cat.identity(a)}, {cat.zero(a, c)}}));
    x.d.push_back(cat.assemble({c}, {a, c}, {{cat.zero(a, c), cat.identity(c)}}));
    return x;
  }
  x.terms.push_back(a);
  x.terms.push_back(a);
  for (int i = 2; i < n; ++i) x.terms.push_back({});
  x.terms.push_back(c);
  x.terms.push_back(c);
  for (int i = 0; i <= n; ++i) {
    if (i == 0) x.d.push_back(cat.identity(a));
    else if (i == n) x.d.push_back(cat.identity(c));
    else x.d.push_back(cat.zero(x.terms[i], x.terms[i + 1]));
  }
  return x;
}

// ---------------------------------------------------------------- ExCategory

ExCategory::ExCategory(int n, std::shared_ptr<const Bifunctor> e, std::shared_ptr<const Realizer> s, Bounds bounds)
    : n_(n), e_(std::move(e)), s_(std::move(s)), bounds_(bounds) {
  if (n_ < 1) throw std::invalid_argument("n must be at least 1");
}

const Exangle& ExCategory::realize(const Obj& c, const Obj& a, const Vec& delta) const {
  auto key = std::make_tuple(c, a, delta);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (delta.size() != e_->dim(c, a)) throw std::invalid_argument("extension has the wrong length");
  Exangle x;
  if (is_zero_vec(delta)) {
    x = split_exangle(cat(), n_, c, a, delta.size());
  } else {
    x = s_->realize(c, a, delta);
    if (x.n() != n_ || x.front() != a || x.back() != c || x.delta != delta)
      throw std::logic_error("backend returned a realization with the wrong shape");
  }
  return cache_.emplace(key, std::move(x)).first->second;
}

std::vector<int> ExCategory::relevant(const Obj& a, bool left) const {
  std::vector<int> out;
  for (int g = 0; g < cat().size(); ++g)
    for (int x : a)
      if ((left ? e_->dim(g, x) : e_->dim(x, g)) != 0) {
        out.push_back(g);
        break;
      }
  return out;
}

bool ExCategory::is_inflation(const Mor& f) const {
  auto key = std::make_tuple(f.src, f.dst, f.c);
  if (auto it = infl_.find(key); it != infl_.end()) return it->second;
  const AddCategory& C = cat();
  const Fp p = C.prime();
  bool found = false;
  for (const Obj& cp : objects_with_multiplicity(relevant(f.src, true), bounds_.multiplicity)) {
    Matrix k = alg::kernel_basis(e_->push_matrix(f, cp));
    for (const Vec& coeffs : bounded_points(k.cols(), p, bounds_.search_cap)) {
      Exangle r = minimize(C, realize(cp, f.src, from_col(combine(k, coeffs))));
      auto sol = alg::rref_solve(C.pre_matrix(r.d[0], f.dst), C.coords(f));
      if (!sol.solution) continue;
      for (const Vec& w : bounded_points(sol.nullspace.cols(), p, bounds_.search_cap)) {
        Mor v = C.from_coords(r.terms[1], f.dst, *sol.solution + combine(sol.nullspace, w));
        if (C.retraction(v)) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) break;
  }
  infl_[key] = found;
  return found;
}

bool ExCategory::is_deflation(const Mor& g) const {
  auto key = std::make_tuple(g.src, g.dst, g.c);
  if (auto it = defl_.find(key); it != defl_.end()) return it->second;
  const AddCategory& C = cat();
  const Fp p = C.prime();
  bool found = false;
  for (const Obj& ap : objects_with_multiplicity(relevant(g.dst, false), bounds_.multiplicity)) {
    Matrix k = alg::kernel_basis(e_->pull_matrix(g, ap));
    for (const Vec& coeffs : bounded_points(k.cols(), p, bounds_.search_cap)) {
      Exangle r = minimize(C, realize(g.dst, ap, from_col(combine(k, coeffs))));
      auto sol = alg::rref_solve(C.post_matrix(r.d[n_], g.src), C.coords(g));
      if (!sol.solution) continue;
      for (const Vec& w : bounded_points(sol.nullspace.cols(), p, bounds_.search_cap)) {
        Mor u = C.from_coords(g.src, r.terms[n_], *sol.solution + combine(sol.nullspace, w));
        if (C.section(u)) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) break;
  }
  defl_[key] = found;
  return found;
}

// ---------------------------------------------------------------- exactness

Matrix delta_sharp_contra(const Bifunctor& e, const Obj& c, const Obj& a, const Vec& delta, const Obj& t) {
  const AddCategory& cat = e.category();
  const auto basis = cat.basis(t, c);
  Matrix m(e.dim(t, a), basis.size(), cat.prime());
  for (std::size_t k = 0; k < basis.size(); ++k) m.paste(0, k, to_col(e.pull(basis[k], a, delta), cat.prime()));
  return m;
}

Matrix delta_sharp_co(const Bifunctor& e, const Obj& c, const Obj& a, const Vec& delta, const Obj& t) {
  const AddCategory& cat = e.category();
  const auto basis = cat.basis(a, t);
  Matrix m(e.dim(c, t), basis.size(), cat.prime());
  for (std::size_t k = 0; k < basis.size(); ++k) m.paste(0, k, to_col(e.push(basis[k], c, delta), cat.prime()));
  return m;
}

std::optional<int> complex_failure(const AddCategory& cat, const Exangle& x) {
  for (std::size_t i = 0; i + 1 < x.d.size(); ++i)
    if (!cat.is_zero(cat.compose(x.d[i + 1], x.d[i]))) return static_cast<int>(i);
  return std::nullopt;
}

bool is_attached(const Bifunctor& e, const Exangle& x) {
  return is_zero_vec(e.push(x.d.front(), x.back(), x.delta)) && is_zero_vec(e.pull(x.d.back(), x.front(), x.delta));
}

Verdict is_n_exangle(const ExCategory& ec, const Exangle& x) {
  const AddCategory& cat = ec.cat();
  const Bifunctor& e = ec.E();
  const int n = x.n();
  if (auto bad = complex_failure(cat, x)) return fail("complex", *bad, -1, {}, "d_{i+1} d_i is not zero");
  const int g = cat.size();
  std::vector<HomMaps> h;
  std::vector<Matrix> sharp, cosharp;
  for (int t = 0; t < g; ++t) {
    h.push_back(hom_maps(cat, x, t));
    sharp.push_back(delta_sharp_contra(e, x.back(), x.front(), x.delta, {t}));
    cosharp.push_back(delta_sharp_co(e, x.back(), x.front(), x.delta, {t}));
  }
  for (int pos = 1; pos <= n + 1; ++pos)
    for (int t = 0; t < g; ++t) {
      const Matrix& out = pos == n + 1 ? sharp[t] : h[t].contra[pos];
      if (auto gap = exactness_gap(out, h[t].contra[pos - 1])) return fail("contravariant", pos, t, *gap);
    }
  for (int pos = 0; pos <= n; ++pos)
    for (int t = 0; t < g; ++t) {
      const Matrix& out = pos == 0 ? cosharp[t] : h[t].co[pos - 1];
      if (auto gap = exactness_gap(out, h[t].co[pos])) return fail("covariant", pos, t, *gap);
    }
  return {};
}

Verdict inner_exactness(const AddCategory& cat, const Exangle& x) {
  const int n = x.n();
  if (auto bad = complex_failure(cat, x)) return fail("complex", *bad, -1, {}, "d_{i+1} d_i is not zero");
  std::vector<HomMaps> h;
  for (int t = 0; t < cat.size(); ++t) h.push_back(hom_maps(cat, x, t));
  for (int pos = 1; pos <= n; ++pos)
    for (int t = 0; t < cat.size(); ++t)
      if (auto gap = exactness_gap(h[t].contra[pos], h[t].contra[pos - 1])) return fail("contravariant", pos, t, *gap);
  for (int pos = 1; pos <= n; ++pos)
    for (int t = 0; t < cat.size(); ++t)
      if (auto gap = exactness_gap(h[t].co[pos - 1], h[t].co[pos])) return fail("covariant", pos, t, *gap);
  return {};
}

Verdict is_distinguished(const ExCategory& ec, const Exangle& x) {
  Verdict v = is_n_exangle(ec, x);
  if (!v.ok) return v;
  try {
    const Exangle& r = ec.realize(x.back(), x.front(), x.delta);
    const AddCategory& cat = ec.cat();
    if (!chain_maps(cat, x, r, cat.identity(x.front()), cat.identity(x.back())))
      return fail("realization", -1, -1, x.delta, "no morphism with identity ends to the realization");
  } catch (const std::runtime_error& err) {
    return fail("realization", -1, -1, x.delta, err.what());
  }
  return v;
}

// ---------------------------------------------------------------- lifts

std::optional<Lift> chain_maps(const AddCategory& cat, const Exangle& x, const Exangle& y, const Mor& a,
                               const Mor& c) {
  const int n = x.n();
  if (y.n() != n) throw std::invalid_argument("exangles of different lengths");
  const Fp p = cat.prime();
  std::vector<std::size_t> col_off(n + 2, 0), row_off(n + 2, 0);
  for (int j = 1; j <= n; ++j) col_off[j + 1] = col_off[j] + cat.hom_dim(x.terms[j], y.terms[j]);
  for (int i = 0; i <= n; ++i) row_off[i + 1] = row_off[i] + cat.hom_dim(x.terms[i], y.terms[i + 1]);
  Matrix m(row_off[n + 1], col_off[n + 1], p), rhs(row_off[n + 1], 1, p);
  for (int i = 0; i <= n; ++i) {
    if (i + 1 <= n) m.paste(row_off[i], col_off[i + 1], cat.pre_matrix(x.d[i], y.terms[i + 1]));
    if (i >= 1) m.paste(row_off[i], col_off[i], -cat.post_matrix(y.d[i], x.terms[i]));
    Matrix r(row_off[i + 1] - row_off[i], 1, p);
    if (i == 0) r = r + cat.coords(cat.compose(y.d[0], a));
    if (i == n) r = r - cat.coords(cat.compose(c, x.d[n]));
    rhs.paste(row_off[i], 0, r);
  }
  auto sol = alg::rref_solve(m, rhs);
  if (!sol.solution) return std::nullopt;
  auto split = [&](const Matrix& col) {
    std::vector<Mor> fs;
    for (int j = 1; j <= n; ++j)
      fs.push_back(cat.from_coords(x.terms[j], y.terms[j], col.row_range(col_off[j], col_off[j + 1] - col_off[j])));
    return fs;
  };
  Lift l;
  l.f.push_back(a);
  for (auto& f : split(*sol.solution)) l.f.push_back(std::move(f));
  l.f.push_back(c);
  for (std::size_t k = 0; k < sol.nullspace.cols(); ++k) l.kernel.push_back(split(sol.nullspace.col_range(k, 1)));
  return l;
}

Lift lift_morphism(const ExCategory& ec, const Exangle& x, const Exangle& y, const Mor& a, const Mor& c) {
  const Bifunctor& e = ec.E();
  if (e.push(a, x.back(), x.delta) != e.pull(c, y.front(), y.delta))
    throw std::runtime_error("precondition a_*δ = c^*δ violated");
  auto l = chain_maps(ec.cat(), x, y, a, c);
  if (!l) throw std::runtime_error("no lift found");
  return *l;
}

std::vector<std::vector<Mor>> lift_points(const AddCategory& cat, const Lift& l, std::size_t cap) {
  std::vector<std::vector<Mor>> out;
  for (const Vec& w : bounded_points(l.kernel.size(), cat.prime(), cap)) {
    std::vector<Mor> f = l.f;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k])
        for (std::size_t j = 0; j < l.kernel[k].size(); ++j)
          f[j + 1] = cat.add(f[j + 1], cat.scale(l.kernel[k][j], w[k]));
    out.push_back(std::move(f));
  }
  return out;
}

bool squares_commute(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f) {
  for (std::size_t i = 0; i < x.d.size(); ++i)
    if (!cat.equal(cat.compose(f[i + 1], x.d[i]), cat.compose(y.d[i], f[i]))) return false;
  return true;
}

// ---------------------------------------------------------------- cones

Exangle mapping_cone(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f) {
  const int n = x.n();
  if (x.front() != y.front() || !cat.equal(f[0], cat.identity(x.front()))) throw std::invalid_argument("f_0 not identity");
  Exangle m;
  m.terms.push_back(x.terms[1]);
  for (int i = 1; i <= n; ++i) m.terms.push_back(concat(x.terms[i + 1], y.terms[i]));
  m.terms.push_back(y.terms[n + 1]);
  m.d.push_back(cat.assemble({x.terms[2], y.terms[1]}, {x.terms[1]}, {{cat.neg(x.d[1])}, {f[1]}}));
  for (int i = 1; i <= n - 1; ++i)
    m.d.push_back(cat.assemble({x.terms[i + 2], y.terms[i + 1]}, {x.terms[i + 1], y.terms[i]},
                               {{cat.neg(x.d[i + 1]), cat.zero(y.terms[i], x.terms[i + 2])}, {f[i + 1], y.d[i]}}));
  m.d.push_back(cat.assemble({y.terms[n + 1]}, {x.terms[n + 1], y.terms[n]}, {{f[n + 1], y.d[n]}}));
  return m;
}

Exangle mapping_cocone(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f) {
  const int n = x.n();
  if (x.back() != y.back() || !cat.equal(f[n + 1], cat.identity(x.back())))
    throw std::invalid_argument("f_{n+1} not identity");
  Exangle m;
  m.terms.push_back(x.terms[0]);
  for (int i = 1; i <= n; ++i) m.terms.push_back(concat(x.terms[i], y.terms[i - 1]));
  m.terms.push_back(y.terms[n]);
  m.d.push_back(cat.assemble({x.terms[1], y.terms[0]}, {x.terms[0]}, {{cat.neg(x.d[0])}, {f[0]}}));
  for (int i = 1; i <= n - 1; ++i)
    m.d.push_back(cat.assemble({x.terms[i + 1], y.terms[i]}, {x.terms[i], y.terms[i - 1]},
                               {{cat.neg(x.d[i]), cat.zero(y.terms[i - 1], x.terms[i + 1])}, {f[i], y.d[i - 1]}}));
  m.d.push_back(cat.assemble({y.terms[n]}, {x.terms[n], y.terms[n - 1]}, {{f[n], y.d[n - 1]}}));
  return m;
}

// ---------------------------------------------------------------- minimize

Exangle minimize(const AddCategory& cat, Exangle x) {
  const int n = x.n();
  for (int i = 1; i <= n; ++i) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < x.terms[i].size(); ++k)
      if (!cat.is_zero_object(x.terms[i][k])) keep.push_back(k);
    if (keep.size() == x.terms[i].size()) continue;
    x.d[i - 1] = cat.restrict(x.d[i - 1], all_indices(x.terms[i - 1]), keep);
    x.d[i] = cat.restrict(x.d[i], keep, all_indices(x.terms[i + 1]));
    x.terms[i] = x.d[i].src;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i < n && !changed; ++i) {
      const Obj &xi = x.terms[i], &xj = x.terms[i + 1];
      for (std::size_t s = 0; s < xi.size() && !changed; ++s)
        for (std::size_t t = 0; t < xj.size() && !changed; ++t) {
          if (xi[s] != xj[t]) continue;
          auto inv = cat.inverse(cat.restrict(x.d[i], {s}, {t}));
          if (!inv) continue;
          std::vector<std::size_t> ri, rj;
          for (std::size_t k = 0; k < xi.size(); ++k)
            if (k != s) ri.push_back(k);
          for (std::size_t k = 0; k < xj.size(); ++k)
            if (k != t) rj.push_back(k);
          Mor beta = cat.restrict(x.d[i], ri, {t});
          Mor gamma = cat.restrict(x.d[i], {s}, rj);
          Mor eps = cat.restrict(x.d[i], ri, rj);
          Mor di = cat.sub(eps, cat.compose(gamma, cat.compose(*inv, beta)));
          x.d[i - 1] = cat.restrict(x.d[i - 1], all_indices(x.terms[i - 1]), ri);
          x.d[i + 1] = cat.restrict(x.d[i + 1], rj, all_indices(x.terms[i + 2]));
          x.d[i] = di;
          x.terms[i] = di.src;
          x.terms[i + 1] = di.dst;
          changed = true;
        }
    }
  }
  return x;
}

// ---------------------------------------------------------------- sums

Exangle direct_sum(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Exangle& y) {
  if (x.n() != y.n()) throw std::invalid_argument("exangles of different lengths");
  Exangle s;
  for (std::size_t i = 0; i < x.terms.size(); ++i) s.terms.push_back(concat(x.terms[i], y.terms[i]));
  for (std::size_t i = 0; i < x.d.size(); ++i) s.d.push_back(cat.diag(x.d[i], y.d[i]));
  s.delta = e.direct_sum(x.back(), x.front(), x.delta, y.back(), y.front(), y.delta);
  return s;
}

namespace {

// Permutation isomorphism from -> to sending summand i to summand pos[i].
Mor permutation(const AddCategory& cat, const Obj& from, const Obj& to, const std::vector<std::size_t>& pos) {
  Mor m = cat.zero(from, to);
  for (std::size_t i = 0; i < from.size(); ++i) cat.set_block(m, i, pos[i], cat.identity({from[i]}).c);
  return m;
}

// First-fit matching of equal labels.
std::vector<std::size_t> matching(const Obj& from, const Obj& to) {
  if (from.size() != to.size()) throw std::invalid_argument("objects are not permutations of each other");
  std::vector<std::size_t> pos(from.size());
  std::vector<bool> used(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    std::size_t j = 0;
    while (j < to.size() && (used[j] || to[j] != from[i])) ++j;
    if (j == to.size()) throw std::invalid_argument("objects are not permutations of each other");
    used[j] = true;
    pos[i] = j;
  }
  return pos;
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = i;
  return r;
}

}  // namespace

Exangle reorder_ends(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Obj& a, const Obj& c) {
  return reorder_ends(cat, e, x, a, c, matching(x.front(), a), matching(x.back(), c));
}

Exangle reorder_ends(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Obj& a, const Obj& c,
                     const std::vector<std::size_t>& front_pos, const std::vector<std::size_t>& back_pos) {
  if (x.n() == 0) throw std::invalid_argument("degenerate exangle");
  for (std::size_t i = 0; i < front_pos.size(); ++i)
    if (a.at(front_pos[i]) != x.front()[i]) throw std::invalid_argument("front summands do not match");
  for (std::size_t i = 0; i < back_pos.size(); ++i)
    if (c.at(back_pos[i]) != x.back()[i]) throw std::invalid_argument("back summands do not match");
  Exangle r = x;
  Mor pai = permutation(cat, x.front(), a, front_pos);               // X_0 -> a
  Mor pa = permutation(cat, a, x.front(), inverse_perm(front_pos));  // a -> X_0
  Mor qc = permutation(cat, x.back(), c, back_pos);                  // X_{n+1} -> c
  Mor qci = permutation(cat, c, x.back(), inverse_perm(back_pos));   // c -> X_{n+1}
  r.terms.front() = a;
  r.terms.back() = c;
  r.d.front() = cat.compose(x.d.front(), pa);
  r.d.back() = cat.compose(qc, x.d.back());
  r.delta = e.push(pai, c, e.pull(qci, x.front(), x.delta));
  return r;
}

std::optional<std::vector<Mor>> chain_isomorphism(const AddCategory& cat, const Exangle& x, const Exangle& y,
                                                  std::size_t cap) {
  if (x.front() != y.front() || x.back() != y.back()) return std::nullopt;
  auto l = chain_maps(cat, x, y, cat.identity(x.front()), cat.identity(x.back()));
  if (!l) return std::nullopt;
  for (auto& f : lift_points(cat, *l, cap)) {
    bool iso = true;
    for (std::size_t i = 1; i + 1 < f.size() && iso; ++i) iso = cat.is_iso(f[i]);
    if (iso) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- universes

std::vector<Obj> objects_up_to(int generators, int total) {
  std::vector<Obj> out{{}};
  std::vector<Obj> frontier{{}};
  for (int k = 1; k <= total; ++k) {
    std::vector<Obj> next;
    for (const Obj& o : frontier)
      for (int g = o.empty() ? 0 : o.back(); g < generators; ++g) {
        Obj e = o;
        e.push_back(g);
        next.push_back(e);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<Obj> objects_with_multiplicity(const std::vector<int>& gens, int m) {
  std::vector<Obj> out;
  std::vector<int> mult(gens.size(), 0);
  while (true) {
    Obj o;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (int k = 0; k < mult[i]; ++k) o.push_back(gens[i]);
    std::sort(o.begin(), o.end());
    out.push_back(o);
    std::size_t i = 0;
    while (i < gens.size() && ++mult[i] > m) mult[i++] = 0;
    if (i == gens.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const Obj& a, const Obj& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// ---------------------------------------------------------------- axioms

std::string describe(const AddCategory& cat, const Exangle& x) {
  std::string s;
  for (std::size_t i = 0; i < x.terms.size(); ++i) s += (i ? " -> " : "") + cat.name(x.terms[i]);
  return s;
}

namespace {

AxiomResult check_c1(const ExCategory& ec) {
  AxiomResult r{"C1"};
  const AddCategory& cat = ec.cat();
  const auto universe = objects_up_to(cat.size(), ec.bounds().enumeration);
  for (const Obj& c : universe)
    for (const Obj& a : universe)
      for (const Vec& delta : bounded_points(ec.E().dim(c, a), cat.prime(), ec.bounds().search_cap)) {
        if (is_zero_vec(delta)) continue;
        const std::string tag = "δ ∈ E(" + cat.name(c) + ", " + cat.name(a) + ")";
        ++r.checked;
        try {
          const Exangle& x = ec.realize(c, a, delta);
          Verdict v = is_n_exangle(ec, x);
          if (!v.ok) {
            r.ok = false;
            r.witness = v.witness;
            r.witness->detail = tag + ": " + describe(cat, x);
            return r;
          }
        } catch (const std::runtime_error& e) {
          r.ok = false;
          r.witness = Witness{"realization", -1, -1, delta, tag + ": " + e.what()};
          return r;
        }
      }
  return r;
}

AxiomResult check_c2(const ExCategory& ec, bool dual) {
  AxiomResult r{dual ? "C2'" : "C2"};
  const AddCategory& cat = ec.cat();
  for (int a = 0; a < cat.size(); ++a) {
    ++r.checked;
    const Obj o{a};
    const Exangle& x = dual ? ec.realize(o, {}, {}) : ec.realize({}, o, {});
    Exangle shape = dual ? split_exangle(cat, ec.n(), o, {}, 0) : split_exangle(cat, ec.n(), {}, o, 0);
    Verdict v = is_distinguished(ec, shape);
    if (v.ok && !chain_isomorphism(cat, shape, x, ec.bounds().search_cap)) {
      v.ok = false;
      v.witness = Witness{"realization", -1, a, {}, "realization differs from the split shape"};
    }
    if (!v.ok) {
      r.ok = false;
      r.witness = v.witness;
      r.witness->detail = "object " + cat.name(a) + ": " + describe(cat, shape) + (r.witness->detail.empty() ? "" : "; " + r.witness->detail);
      return r;
    }
  }
  return r;
}

// Good-lift search for (C3) (cocone of (a, id)) or (C3') (cone of (id, c)).
AxiomResult check_c3(const ExCategory& ec, bool dual) {
  AxiomResult r{dual ? "C3'" : "C3"};
  const AddCategory& cat = ec.cat();
  const Bifunctor& e = ec.E();
  const int n = ec.n();
  const auto universe = objects_up_to(cat.size(), ec.bounds().enumeration);
  for (const Obj& c : universe)
    for (const Obj& a : universe)
      for (std::size_t k = 0; k < e.dim(c, a); ++k) {
        Vec delta(e.dim(c, a), 0);
        delta[k] = 1;
        for (const Obj& b : universe) {
          // (C3): α : a -> b ; (C3'): γ : b -> c
          const Obj& from = dual ? b : a;
          const Obj& to = dual ? c : b;
          for (const Mor& m : cat.basis(from, to)) {
            ++r.checked;
            std::string tag = std::string(dual ? "ρ" : "δ") + " = E(" + cat.name(c) + ", " + cat.name(a) + ") basis " +
                              std::to_string(k) + ", morphism " + cat.name(from) + " -> " + cat.name(to);
            try {
              Exangle x, y;
              Mor f0, fn;
              if (!dual) {
                x = ec.realize(c, a, delta);
                y = ec.realize(c, b, e.push(m, c, delta));
                f0 = m;
                fn = cat.identity(c);
              } else {
                x = ec.realize(b, a, e.pull(m, a, delta));
                y = ec.realize(c, a, delta);
                f0 = cat.identity(a);
                fn = m;
              }
              Lift l = lift_morphism(ec, x, y, f0, fn);
              bool good = false;
              std::optional<Witness> last;
              for (auto& f : lift_points(cat, l, ec.bounds().search_cap)) {
                Exangle cone = dual ? mapping_cone(cat, x, y, f) : mapping_cocone(cat, x, y, f);
                cone.delta = dual ? e.push(x.d[0], c, delta) : e.pull(y.d[n], a, delta);
                Verdict v = is_distinguished(ec, cone);
                if (v.ok) {
                  good = true;
                  break;
                }
                if (!last) last = v.witness;
              }
              if (!good) {
                r.ok = false;
                r.witness = last.value_or(Witness{"lift", -1, -1, {}, ""});
                r.witness->detail = tag + ": no good lift" + (r.witness->detail.empty() ? "" : "; " + r.witness->detail);
                return r;
              }
            } catch (const std::runtime_error& err) {
              r.ok = false;
              r.witness = Witness{"realization", -1, -1, delta, tag + ": " + err.what()};
              return r;
            }
          }
        }
      }
  return r;
}

std::string mor_text(const AddCategory& cat, const Mor& f) {
  std::string s = cat.name(f.src) + " -> " + cat.name(f.dst) + " [";
  for (std::size_t i = 0; i < f.c.size(); ++i) s += (i ? " " : "") + std::to_string(f.c[i]);
  return s + "]";
}

void check_c4_wic(const ExCategory& ec, AxiomResult& c4, AxiomResult& wic) {
  const AddCategory& cat = ec.cat();
  const auto universe = objects_up_to(cat.size(), ec.bounds().enumeration);
  std::map<std::pair<Obj, Obj>, std::vector<Mor>> homs;
  for (const Obj& x : universe)
    for (const Obj& y : universe) {
      auto& v = homs[{x, y}];
      for (const Vec& c : bounded_points(cat.hom_dim(x, y), cat.prime(), ec.bounds().search_cap)) v.push_back(Mor{x, y, c});
    }
  auto record = [&](AxiomResult& r, const std::string& side, const Mor& f, const Mor& g, const std::string& what) {
    if (!r.ok) return;
    r.ok = false;
    Vec el = f.c;
    el.insert(el.end(), g.c.begin(), g.c.end());
    r.witness = Witness{side, -1, -1, el, "f = " + mor_text(cat, f) + ", g = " + mor_text(cat, g) + ": " + what};
  };
  for (const Obj& a : universe)
    for (const Obj& b : universe)
      for (const Obj& c : universe)
        for (const Mor& f : homs[{a, b}])
          for (const Mor& g : homs[{b, c}]) {
            ++c4.checked;
            ++wic.checked;
            const Mor gf = cat.compose(g, f);
            const bool fi = ec.is_inflation(f), gi = ec.is_inflation(g), gfi = ec.is_inflation(gf);
            const bool fd = ec.is_deflation(f), gd = ec.is_deflation(g), gfd = ec.is_deflation(gf);
            if (fi && gi && !gfi) record(c4, "inflation", f, g, "g f is not an inflation");
            if (fd && gd && !gfd) record(c4, "deflation", f, g, "g f is not a deflation");
            if (gfd && !gd) record(wic, "deflation", f, g, "g f is a deflation but g is not");
            if (gfi && !fi) record(wic, "inflation", f, g, "g f is an inflation but f is not");
          }
}

}  // namespace

std::vector<AxiomResult> check_core_axioms(const ExCategory& ec) {
  std::vector<AxiomResult> out;
  out.push_back(check_c1(ec));
  out.push_back(check_c2(ec, false));
  out.push_back(check_c2(ec, true));
  out.push_back(check_c3(ec, false));
  out.push_back(check_c3(ec, true));
  AxiomResult c4{"C4"}, wic{"WIC"};
  try {
    check_c4_wic(ec, c4, wic);
  } catch (const std::runtime_error& err) {
    for (AxiomResult* r : {&c4, &wic})
      if (r->ok) {
        r->ok = false;
        r->witness = Witness{"realization", -1, -1, {}, err.what()};
      }
  }
  out.push_back(c4);
  out.push_back(wic);
  return out;
}

}  // namespace exangulate::ex
