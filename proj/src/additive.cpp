#include "exangulate/additive.hpp"

#include <stdexcept>

namespace exangulate::ex {

using alg::PrimeField;

AddCategory::AddCategory(Fp p, std::vector<std::string> names, std::vector<std::vector<std::size_t>> hom_dims,
                         std::vector<Matrix> comp, std::vector<Vec> identities)
    : p_(p), names_(std::move(names)), dims_(std::move(hom_dims)), comp_(std::move(comp)), ids_(std::move(identities)) {
  const std::size_t g = names_.size();
  if (dims_.size() != g || comp_.size() != g * g * g || ids_.size() != g)
    throw std::invalid_argument("inconsistent category tables");
}

std::string AddCategory::name(const Obj& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " + " : "") + names_[x[i]];
  return s;
}

std::size_t AddCategory::hom_dim(const Obj& x, const Obj& y) const {
  std::size_t d = 0;
  for (int g : x)
    for (int h : y) d += dims_[g][h];
  return d;
}

std::size_t AddCategory::block_offset(const Obj& x, const Obj& y, std::size_t i, std::size_t j) const {
  std::size_t off = 0;
  for (std::size_t a = 0; a < i; ++a)
    for (int h : y) off += dims_[x[a]][h];
  for (std::size_t b = 0; b < j; ++b) off += dims_[x[i]][y[b]];
  return off;
}

Vec AddCategory::block(const Mor& f, std::size_t i, std::size_t j) const {
  std::size_t off = block_offset(f.src, f.dst, i, j);
  std::size_t d = dims_[f.src[i]][f.dst[j]];
  return Vec(f.c.begin() + off, f.c.begin() + off + d);
}

void AddCategory::set_block(Mor& f, std::size_t i, std::size_t j, const Vec& v) const {
  std::size_t off = block_offset(f.src, f.dst, i, j);
  std::copy(v.begin(), v.end(), f.c.begin() + off);
}

Mor AddCategory::zero(const Obj& x, const Obj& y) const { return Mor{x, y, Vec(hom_dim(x, y), 0)}; }

Mor AddCategory::identity(const Obj& x) const {
  Mor f = zero(x, x);
  for (std::size_t i = 0; i < x.size(); ++i) set_block(f, i, i, ids_[x[i]]);
  return f;
}

Mor AddCategory::compose(const Mor& g, const Mor& f) const {
  if (f.dst != g.src) throw std::invalid_argument("composition of non-composable morphisms");
  PrimeField fld(p_);
  const Obj &x = f.src, &y = f.dst, &z = g.dst;
  Mor r = zero(x, z);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) {
      const std::size_t ok = block_offset(x, z, i, k);
      for (std::size_t j = 0; j < y.size(); ++j) {
        const std::size_t d1 = dims_[x[i]][y[j]], d2 = dims_[y[j]][z[k]];
        if (!d1 || !d2) continue;
        const std::size_t of = block_offset(x, y, i, j), og = block_offset(y, z, j, k);
        const Matrix& t = structure(x[i], y[j], z[k]);
        for (std::size_t b1 = 0; b1 < d1; ++b1) {
          Fp c1 = f.c[of + b1];
          if (!c1) continue;
          for (std::size_t b2 = 0; b2 < d2; ++b2) {
            Fp c2 = g.c[og + b2];
            if (!c2) continue;
            Fp c = fld.mul(c1, c2);
            const std::size_t col = b1 * d2 + b2;
            for (std::size_t r0 = 0; r0 < t.rows(); ++r0)
              if (Fp tv = t.at(r0, col)) r.c[ok + r0] = fld.add(r.c[ok + r0], fld.mul(c, tv));
          }
        }
      }
    }
  return r;
}

Mor AddCategory::add(const Mor& f, const Mor& g) const {
  if (f.src != g.src || f.dst != g.dst) throw std::invalid_argument("sum of non-parallel morphisms");
  Mor r = f;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + g.c[i]) % p_;
  return r;
}

Mor AddCategory::sub(const Mor& f, const Mor& g) const { return add(f, neg(g)); }

Mor AddCategory::neg(const Mor& f) const {
  Mor r = f;
  for (auto& v : r.c) v = v ? p_ - v : 0;
  return r;
}

Mor AddCategory::scale(const Mor& f, Fp s) const {
  PrimeField fld(p_);
  Mor r = f;
  for (auto& v : r.c) v = fld.mul(v, s % p_);
  return r;
}

bool AddCategory::is_zero(const Mor& f) const {
  for (auto v : f.c)
    if (v) return false;
  return true;
}

bool AddCategory::equal(const Mor& f, const Mor& g) const {
  return f.src == g.src && f.dst == g.dst && f.c == g.c;
}

std::vector<Mor> AddCategory::basis(const Obj& x, const Obj& y) const {
  std::vector<Mor> out;
  const std::size_t d = hom_dim(x, y);
  for (std::size_t i = 0; i < d; ++i) {
    Mor f = zero(x, y);
    f.c[i] = 1;
    out.push_back(std::move(f));
  }
  return out;
}

Mor AddCategory::from_coords(const Obj& x, const Obj& y, const Matrix& col) const {
  Mor f = zero(x, y);
  if (col.rows() != f.c.size()) throw std::invalid_argument("coordinate length mismatch");
  for (std::size_t i = 0; i < f.c.size(); ++i) f.c[i] = col.at(i, 0);
  return f;
}

Matrix AddCategory::coords(const Mor& f) const { return to_col(f.c, p_); }

Matrix AddCategory::post_matrix(const Mor& g, const Obj& x) const {
  const auto b = basis(x, g.src);
  Matrix m(hom_dim(x, g.dst), b.size(), p_);
  for (std::size_t k = 0; k < b.size(); ++k) m.paste(0, k, coords(compose(g, b[k])));
  return m;
}

Matrix AddCategory::pre_matrix(const Mor& f, const Obj& z) const {
  const auto b = basis(f.dst, z);
  Matrix m(hom_dim(f.src, z), b.size(), p_);
  for (std::size_t k = 0; k < b.size(); ++k) m.paste(0, k, coords(compose(b[k], f)));
  return m;
}

std::optional<Mor> AddCategory::inverse(const Mor& f) const {
  const Obj &x = f.src, &y = f.dst;
  Matrix a = alg::vstack({pre_matrix(f, x), post_matrix(f, y)}, hom_dim(y, x), p_);
  Matrix rhs = alg::vstack({coords(identity(x)), coords(identity(y))}, 1, p_);
  auto s = alg::solve_matrix(a, rhs);
  if (!s) return std::nullopt;
  return from_coords(y, x, *s);
}

std::optional<Mor> AddCategory::retraction(const Mor& f) const {
  auto s = alg::solve_matrix(pre_matrix(f, f.src), coords(identity(f.src)));
  if (!s) return std::nullopt;
  return from_coords(f.dst, f.src, *s);
}

std::optional<Mor> AddCategory::section(const Mor& f) const {
  auto s = alg::solve_matrix(post_matrix(f, f.dst), coords(identity(f.dst)));
  if (!s) return std::nullopt;
  return from_coords(f.dst, f.src, *s);
}

Mor AddCategory::diag(const Mor& f, const Mor& g) const {
  return assemble({f.dst, g.dst}, {f.src, g.src}, {{f, zero(g.src, f.dst)}, {zero(f.src, g.dst), g}});
}

Mor AddCategory::assemble(const std::vector<Obj>& dst_parts, const std::vector<Obj>& src_parts,
                          const std::vector<std::vector<Mor>>& blocks) const {
  Obj x, y;
  for (const auto& s : src_parts) x = concat(x, s);
  for (const auto& d : dst_parts) y = concat(y, d);
  Mor r = zero(x, y);
  std::size_t ybase = 0;
  for (std::size_t rr = 0; rr < dst_parts.size(); ++rr) {
    std::size_t xbase = 0;
    for (std::size_t cc = 0; cc < src_parts.size(); ++cc) {
      const Mor& b = blocks[rr][cc];
      if (b.src != src_parts[cc] || b.dst != dst_parts[rr]) throw std::invalid_argument("block shape mismatch");
      for (std::size_t i = 0; i < b.src.size(); ++i)
        for (std::size_t j = 0; j < b.dst.size(); ++j) set_block(r, xbase + i, ybase + j, block(b, i, j));
      xbase += src_parts[cc].size();
    }
    ybase += dst_parts[rr].size();
  }
  return r;
}

Mor AddCategory::restrict(const Mor& f, const std::vector<std::size_t>& src_idx,
                          const std::vector<std::size_t>& dst_idx) const {
  Obj x, y;
  for (auto i : src_idx) x.push_back(f.src[i]);
  for (auto j : dst_idx) y.push_back(f.dst[j]);
  Mor r = zero(x, y);
  for (std::size_t a = 0; a < src_idx.size(); ++a)
    for (std::size_t b = 0; b < dst_idx.size(); ++b) set_block(r, a, b, block(f, src_idx[a], dst_idx[b]));
  return r;
}

Obj concat(const Obj& a, const Obj& b) {
  Obj r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::vector<Vec> enumerate_space(std::size_t dim, Fp p, std::size_t cap) {
  double count = 1;
  for (std::size_t i = 0; i < dim; ++i) count *= p;
  if (count > static_cast<double>(cap)) throw std::length_error("space too large to enumerate");
  std::vector<Vec> out;
  Vec v(dim, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < dim && ++v[i] == p) v[i++] = 0;
    if (i == dim) break;
  }
  return out;
}

Matrix to_col(const Vec& v, Fp p) { return Matrix::column(v, p); }

Vec from_col(const Matrix& m) { return m.col(0); }

// ---------------------------------------------------------------- Bifunctor

Bifunctor::Bifunctor(std::shared_ptr<const AddCategory> cat, std::vector<std::vector<std::size_t>> dims,
                     std::vector<std::vector<Matrix>> push, std::vector<std::vector<Matrix>> pull)
    : cat_(std::move(cat)), dims_(std::move(dims)), push_(std::move(push)), pull_(std::move(pull)) {
  const std::size_t g = cat_->size();
  if (dims_.size() != g || push_.size() != g * g * g || pull_.size() != g * g * g)
    throw std::invalid_argument("inconsistent bifunctor tables");
}

std::size_t Bifunctor::dim(const Obj& c, const Obj& a) const {
  std::size_t d = 0;
  for (int x : c)
    for (int y : a) d += dims_[x][y];
  return d;
}

std::size_t Bifunctor::block_offset(const Obj& c, const Obj& a, std::size_t i, std::size_t j) const {
  std::size_t off = 0;
  for (std::size_t x = 0; x < i; ++x)
    for (int y : a) off += dims_[c[x]][y];
  for (std::size_t y = 0; y < j; ++y) off += dims_[c[i]][a[y]];
  return off;
}

const std::vector<Matrix>& Bifunctor::push_table(int c, int a, int a2) const {
  const int g = cat_->size();
  return push_[(c * g + a) * g + a2];
}

const std::vector<Matrix>& Bifunctor::pull_table(int c2, int c, int a) const {
  const int g = cat_->size();
  return pull_[(c2 * g + c) * g + a];
}

Matrix Bifunctor::push_matrix(const Mor& f, const Obj& c) const {
  const AddCategory& cat = *cat_;
  const Fp p = cat.prime();
  const Obj &a = f.src, &a2 = f.dst;
  Matrix m(dim(c, a2), dim(c, a), p);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::size_t din = dims_[c[i]][a[j]];
      if (!din) continue;
      const std::size_t oin = block_offset(c, a, i, j);
      for (std::size_t j2 = 0; j2 < a2.size(); ++j2) {
        const std::size_t dout = dims_[c[i]][a2[j2]];
        if (!dout) continue;
        Vec coef = cat.block(f, j, j2);
        const auto& tab = push_table(c[i], a[j], a2[j2]);
        Matrix blk(dout, din, p);
        for (std::size_t b = 0; b < coef.size(); ++b)
          if (coef[b]) blk = blk + tab[b].scaled(coef[b]);
        const std::size_t oout = block_offset(c, a2, i, j2);
        m.paste(oout, oin, m.block(oout, oin, dout, din) + blk);
      }
    }
  return m;
}

Matrix Bifunctor::pull_matrix(const Mor& g, const Obj& a) const {
  const AddCategory& cat = *cat_;
  const Fp p = cat.prime();
  const Obj &c2 = g.src, &c = g.dst;
  Matrix m(dim(c2, a), dim(c, a), p);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const std::size_t din = dims_[c[i]][a[j]];
      if (!din) continue;
      const std::size_t oin = block_offset(c, a, i, j);
      for (std::size_t i2 = 0; i2 < c2.size(); ++i2) {
        const std::size_t dout = dims_[c2[i2]][a[j]];
        if (!dout) continue;
        Vec coef = cat.block(g, i2, i);
        const auto& tab = pull_table(c2[i2], c[i], a[j]);
        Matrix blk(dout, din, p);
        for (std::size_t b = 0; b < coef.size(); ++b)
          if (coef[b]) blk = blk + tab[b].scaled(coef[b]);
        const std::size_t oout = block_offset(c2, a, i2, j);
        m.paste(oout, oin, m.block(oout, oin, dout, din) + blk);
      }
    }
  return m;
}

Vec Bifunctor::push(const Mor& f, const Obj& c, const Vec& delta) const {
  return from_col(push_matrix(f, c) * to_col(delta, cat_->prime()));
}

Vec Bifunctor::pull(const Mor& g, const Obj& a, const Vec& delta) const {
  return from_col(pull_matrix(g, a) * to_col(delta, cat_->prime()));
}

Vec Bifunctor::direct_sum(const Obj& c1, const Obj& a1, const Vec& d1, const Obj& c2, const Obj& a2,
                          const Vec& d2) const {
  const Obj c = concat(c1, c2), a = concat(a1, a2);
  Vec out(dim(c, a), 0);
  for (std::size_t i = 0; i < c1.size(); ++i)
    for (std::size_t j = 0; j < a1.size(); ++j) {
      const std::size_t d = dims_[c1[i]][a1[j]];
      const std::size_t src = block_offset(c1, a1, i, j), dst = block_offset(c, a, i, j);
      for (std::size_t k = 0; k < d; ++k) out[dst + k] = d1[src + k];
    }
  for (std::size_t i = 0; i < c2.size(); ++i)
    for (std::size_t j = 0; j < a2.size(); ++j) {
      const std::size_t d = dims_[c2[i]][a2[j]];
      const std::size_t src = block_offset(c2, a2, i, j);
      const std::size_t dst = block_offset(c, a, c1.size() + i, a1.size() + j);
      for (std::size_t k = 0; k < d; ++k) out[dst + k] = d2[src + k];
    }
  return out;
}

}  // namespace exangulate::ex
