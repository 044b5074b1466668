#include "exangulate/quiverrep.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace exangulate::rep {

using alg::PrimeField;

int Quiver::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Path::operator<(const Path& o) const {
  if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
  if (source != o.source) return source < o.source;
  if (target != o.target) return target < o.target;
  return arrows < o.arrows;
}

bool Path::operator==(const Path& o) const {
  return source == o.source && target == o.target && arrows == o.arrows;
}

// ---------------------------------------------------------------- algebra

namespace {

int path_target(const Quiver& q, int source, const std::vector<int>& arrows) {
  int v = source;
  for (int a : arrows) {
    if (q.arrows[a].source != v) return -1;
    v = q.arrows[a].target;
  }
  return v;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b,
                        const std::vector<int>& c = {}) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  r.insert(r.end(), c.begin(), c.end());
  return r;
}

}  // namespace

Algebra::Algebra(Quiver quiver, std::vector<Relation> relations, Fp p, int path_length_bound)
    : quiver_(std::move(quiver)), relations_(std::move(relations)), p_(p), bound_(path_length_bound) {
  PrimeField field(p_);
  const int nv = quiver_.vertex_count;
  if (nv < 0) throw std::invalid_argument("negative vertex count");
  if (bound_ < 1) throw std::invalid_argument("path length bound must be positive");
  for (const auto& a : quiver_.arrows)
    if (a.source < 0 || a.source >= nv || a.target < 0 || a.target >= nv)
      throw std::invalid_argument("arrow " + a.name + " has an invalid endpoint");
  for (std::size_t i = 0; i < quiver_.arrows.size(); ++i)
    for (std::size_t j = i + 1; j < quiver_.arrows.size(); ++j)
      if (quiver_.arrows[i].name == quiver_.arrows[j].name)
        throw std::invalid_argument("duplicate arrow name " + quiver_.arrows[i].name);

  // relation endpoints
  std::vector<std::pair<int, int>> rel_ends;
  for (const auto& r : relations_) {
    if (r.empty()) throw std::invalid_argument("empty relation");
    int s = -1, t = -1;
    for (const auto& term : r) {
      if (term.arrows.size() < 2) throw std::invalid_argument("relation paths must have length >= 2");
      int ts = quiver_.arrows.at(term.arrows.front()).source;
      int tt = path_target(quiver_, ts, term.arrows);
      if (tt < 0) throw std::invalid_argument("relation term is not a path");
      if (s < 0) {
        s = ts;
        t = tt;
      } else if (s != ts || t != tt) {
        throw std::invalid_argument("relation paths are not parallel");
      }
    }
    rel_ends.emplace_back(s, t);
  }

  // enumerate paths up to the bound
  blocks_.assign(static_cast<std::size_t>(nv) * nv, Block{});
  std::vector<std::vector<Path>> from(nv);
  for (int v = 0; v < nv; ++v) {
    std::vector<Path> frontier{Path{v, v, {}}};
    from[v].push_back(frontier.front());
    for (int len = 1; len <= bound_; ++len) {
      std::vector<Path> next;
      for (const auto& path : frontier)
        for (std::size_t a = 0; a < quiver_.arrows.size(); ++a)
          if (quiver_.arrows[a].source == path.target) {
            Path q = path;
            q.arrows.push_back(static_cast<int>(a));
            q.target = quiver_.arrows[a].target;
            next.push_back(std::move(q));
          }
      if (next.size() > 200000) throw std::runtime_error("infinite-dimensional or bound too small");
      for (const auto& q : next) from[v].push_back(q);
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
  }
  for (int v = 0; v < nv; ++v)
    for (const auto& path : from[v]) blocks_[v * nv + path.target].all.push_back(path);
  for (auto& b : blocks_) {
    std::sort(b.all.begin(), b.all.end());
    for (std::size_t i = 0; i < b.all.size(); ++i) b.index[b.all[i].arrows] = i;
  }

  // ideal spanning vectors u·r·v per block
  std::vector<std::vector<std::vector<Fp>>> ideal(blocks_.size());
  for (std::size_t ri = 0; ri < relations_.size(); ++ri) {
    auto [rs, rt] = rel_ends[ri];
    std::size_t min_len = SIZE_MAX;
    for (const auto& term : relations_[ri]) min_len = std::min(min_len, term.arrows.size());
    for (int u0 = 0; u0 < nv; ++u0) {
      for (const auto& u : blocks_[u0 * nv + rs].all) {
        if (u.length() + min_len > static_cast<std::size_t>(bound_)) continue;
        for (int v1 = 0; v1 < nv; ++v1) {
          for (const auto& w : blocks_[rt * nv + v1].all) {
            if (u.length() + min_len + w.length() > static_cast<std::size_t>(bound_)) continue;
            auto& blk = blocks_[u0 * nv + v1];
            std::vector<Fp> vec(blk.all.size(), 0);
            bool any = false;
            for (const auto& term : relations_[ri]) {
              auto full = concat(u.arrows, term.arrows, w.arrows);
              if (full.size() > static_cast<std::size_t>(bound_)) continue;
              auto it = blk.index.find(full);
              if (it == blk.index.end()) continue;
              vec[it->second] = field.add(vec[it->second], field.reduce(term.coefficient));
              any = true;
            }
            if (any) ideal[u0 * nv + v1].push_back(std::move(vec));
          }
        }
      }
    }
  }

  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    auto& blk = blocks_[bi];
    Matrix w(blk.all.size(), ideal[bi].size(), p_);
    for (std::size_t c = 0; c < ideal[bi].size(); ++c)
      for (std::size_t r = 0; r < blk.all.size(); ++r) w.set_raw(r, c, ideal[bi][c][r]);
    blk.quotient = alg::quotient_with_section(blk.all.size(), w);
    for (std::size_t k = 0; k < blk.quotient.dim(); ++k)
      for (std::size_t r = 0; r < blk.all.size(); ++r)
        if (blk.quotient.section.at(r, k)) blk.basis.push_back(blk.all[r]);
    // certification: paths of maximal length vanish
    for (std::size_t r = 0; r < blk.all.size(); ++r) {
      if (blk.all[r].length() != static_cast<std::size_t>(bound_)) continue;
      for (std::size_t k = 0; k < blk.quotient.dim(); ++k)
        if (blk.quotient.projection.at(k, r))
          throw std::runtime_error("infinite-dimensional or bound too small");
    }
  }
}

const std::vector<Path>& Algebra::basis(int source, int target) const {
  return block(source, target).basis;
}

std::size_t Algebra::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks_) d += b.basis.size();
  return d;
}

Matrix Algebra::reduce(const Path& path) const {
  const auto& blk = block(path.source, path.target);
  Matrix r(blk.basis.size(), 1, p_);
  if (path.length() > static_cast<std::size_t>(bound_)) return r;
  auto it = blk.index.find(path.arrows);
  if (it == blk.index.end()) throw std::invalid_argument("not a path of the quiver");
  return blk.quotient.projection.col_range(it->second, 1);
}

Matrix Algebra::multiply(const Path& u, const Path& v) const {
  if (u.target != v.source) return Matrix(block(u.source, v.target).basis.size(), 1, p_);
  return reduce(Path{u.source, v.target, concat(u.arrows, v.arrows)});
}

// ---------------------------------------------------------------- modules

std::size_t Module::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

ModMorphism ModMorphism::operator*(const ModMorphism& o) const {
  ModMorphism r;
  for (std::size_t v = 0; v < maps.size(); ++v) r.maps.push_back(maps[v] * o.maps[v]);
  return r;
}
ModMorphism ModMorphism::operator+(const ModMorphism& o) const {
  ModMorphism r;
  for (std::size_t v = 0; v < maps.size(); ++v) r.maps.push_back(maps[v] + o.maps[v]);
  return r;
}
ModMorphism ModMorphism::operator-(const ModMorphism& o) const {
  ModMorphism r;
  for (std::size_t v = 0; v < maps.size(); ++v) r.maps.push_back(maps[v] - o.maps[v]);
  return r;
}
ModMorphism ModMorphism::operator-() const {
  ModMorphism r;
  for (const auto& m : maps) r.maps.push_back(-m);
  return r;
}
ModMorphism ModMorphism::scaled(Fp s) const {
  ModMorphism r;
  for (const auto& m : maps) r.maps.push_back(m.scaled(s));
  return r;
}
bool ModMorphism::is_zero() const {
  return std::all_of(maps.begin(), maps.end(), [](const Matrix& m) { return m.is_zero(); });
}
bool ModMorphism::operator==(const ModMorphism& o) const { return maps == o.maps; }
bool ModMorphism::is_bijective() const {
  return std::all_of(maps.begin(), maps.end(), [](const Matrix& m) {
    return m.is_square() && alg::rank(m) == m.rows();
  });
}
bool ModMorphism::is_injective() const {
  return std::all_of(maps.begin(), maps.end(), [](const Matrix& m) { return alg::rank(m) == m.cols(); });
}
bool ModMorphism::is_surjective() const {
  return std::all_of(maps.begin(), maps.end(), [](const Matrix& m) { return alg::rank(m) == m.rows(); });
}

Matrix path_action(const Module& m, const std::vector<int>& arrows, int source_vertex, Fp p) {
  Matrix r = Matrix::identity(m.dims[source_vertex], p);
  for (int a : arrows) r = m.arrow_maps[a] * r;
  return r;
}

bool satisfies_relations(const Algebra& a, const Module& m) {
  const auto& q = a.quiver();
  if (m.dims.size() != static_cast<std::size_t>(q.vertex_count)) return false;
  if (m.arrow_maps.size() != q.arrows.size()) return false;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& ar = q.arrows[i];
    if (m.arrow_maps[i].rows() != m.dims[ar.target] || m.arrow_maps[i].cols() != m.dims[ar.source])
      return false;
  }
  PrimeField f(a.prime());
  for (const auto& r : a.relations()) {
    int s = q.arrows[r.front().arrows.front()].source;
    int t = q.arrows[r.front().arrows.back()].target;
    Matrix sum(m.dims[t], m.dims[s], a.prime());
    for (const auto& term : r)
      sum = sum + path_action(m, term.arrows, s, a.prime()).scaled(f.reduce(term.coefficient));
    if (!sum.is_zero()) return false;
  }
  return true;
}

bool is_homomorphism(const Algebra& a, const Module& src, const Module& dst, const ModMorphism& f) {
  const auto& q = a.quiver();
  if (f.maps.size() != static_cast<std::size_t>(q.vertex_count)) return false;
  for (int v = 0; v < q.vertex_count; ++v)
    if (f.maps[v].rows() != dst.dims[v] || f.maps[v].cols() != src.dims[v]) return false;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    const auto& ar = q.arrows[i];
    if (f.maps[ar.target] * src.arrow_maps[i] != dst.arrow_maps[i] * f.maps[ar.source]) return false;
  }
  return true;
}

Module zero_module(const Algebra& a) {
  Module m;
  m.dims.assign(a.vertex_count(), 0);
  for (std::size_t i = 0; i < a.quiver().arrows.size(); ++i) m.arrow_maps.emplace_back(0, 0, a.prime());
  m.label = "0";
  return m;
}

ModMorphism zero_morphism(const Module& src, const Module& dst, Fp p) {
  ModMorphism f;
  for (std::size_t v = 0; v < src.dims.size(); ++v) f.maps.emplace_back(dst.dims[v], src.dims[v], p);
  return f;
}

ModMorphism identity_morphism(const Module& m, Fp p) {
  ModMorphism f;
  for (auto d : m.dims) f.maps.push_back(Matrix::identity(d, p));
  return f;
}

ModMorphism inverse_morphism(const ModMorphism& f) {
  ModMorphism r;
  for (const auto& m : f.maps) {
    auto inv = alg::inverse(m);
    if (!inv) throw std::invalid_argument("morphism is not invertible");
    r.maps.push_back(*inv);
  }
  return r;
}

Module projective_sum(const Algebra& a, const std::vector<int>& vertices) {
  const auto& q = a.quiver();
  const int nv = q.vertex_count;
  Module m;
  m.dims.assign(nv, 0);
  for (int v : vertices)
    for (int w = 0; w < nv; ++w) m.dims[w] += a.basis(v, w).size();
  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const auto& ar = q.arrows[ai];
    Matrix mat(m.dims[ar.target], m.dims[ar.source], a.prime());
    std::size_t off_s = 0, off_t = 0;
    for (int v : vertices) {
      const auto& bs = a.basis(v, ar.source);
      for (std::size_t c = 0; c < bs.size(); ++c) {
        Path ext = bs[c];
        ext.arrows.push_back(static_cast<int>(ai));
        ext.target = ar.target;
        mat.paste(off_t, off_s + c, a.reduce(ext));
      }
      off_s += bs.size();
      off_t += a.basis(v, ar.target).size();
    }
    m.arrow_maps.push_back(std::move(mat));
  }
  return m;
}

Matrix projective_generator(const Algebra& a, const std::vector<int>& vertices, std::size_t k) {
  int v = vertices[k];
  std::size_t off = 0;
  for (std::size_t j = 0; j < k; ++j) off += a.basis(vertices[j], v).size();
  const auto& b = a.basis(v, v);
  std::size_t total = 0;
  for (int u : vertices) total += a.basis(u, v).size();
  Matrix g(total, 1, a.prime());
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].arrows.empty()) {
      g.set_raw(off + i, 0, 1);
      return g;
    }
  throw std::logic_error("trivial path missing from basis");
}

ModMorphism map_from_projective(const Algebra& a, const std::vector<int>& vertices,
                                const std::vector<Matrix>& images, const Module& target) {
  const int nv = a.vertex_count();
  ModMorphism f;
  std::vector<std::size_t> src_dims(nv, 0);
  for (int v : vertices)
    for (int w = 0; w < nv; ++w) src_dims[w] += a.basis(v, w).size();
  for (int w = 0; w < nv; ++w) f.maps.emplace_back(target.dims[w], src_dims[w], a.prime());
  std::vector<std::size_t> off(nv, 0);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    int v = vertices[k];
    for (int w = 0; w < nv; ++w) {
      const auto& b = a.basis(v, w);
      for (std::size_t c = 0; c < b.size(); ++c)
        f.maps[w].paste(0, off[w] + c, path_action(target, b[c].arrows, v, a.prime()) * images[k]);
      off[w] += b.size();
    }
  }
  return f;
}

Module standard_module(const Algebra& a, StandardKind kind, int vertex) {
  const auto& q = a.quiver();
  const int nv = q.vertex_count;
  if (vertex < 0 || vertex >= nv) throw std::invalid_argument("vertex out of range");
  Module m;
  switch (kind) {
    case StandardKind::Simple:
      m.dims.assign(nv, 0);
      m.dims[vertex] = 1;
      for (const auto& ar : q.arrows) m.arrow_maps.emplace_back(m.dims[ar.target], m.dims[ar.source], a.prime());
      m.label = "S" + std::to_string(vertex + 1);
      break;
    case StandardKind::Projective:
      m = projective_sum(a, {vertex});
      m.label = "P" + std::to_string(vertex + 1);
      break;
    case StandardKind::Injective: {
      m.dims.assign(nv, 0);
      for (int w = 0; w < nv; ++w) m.dims[w] = a.basis(w, vertex).size();
      for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& ar = q.arrows[ai];
        // left multiplication by the arrow: basis(target, i) -> basis(source, i), transposed
        const auto& bt = a.basis(ar.target, vertex);
        Matrix left(m.dims[ar.source], bt.size(), a.prime());
        for (std::size_t c = 0; c < bt.size(); ++c) {
          Path ext{ar.source, vertex, concat({static_cast<int>(ai)}, bt[c].arrows)};
          left.paste(0, c, a.reduce(ext));
        }
        m.arrow_maps.push_back(left.transpose());
      }
      m.label = "I" + std::to_string(vertex + 1);
      break;
    }
  }
  return m;
}

Module uniserial_module(const Algebra& a, const std::vector<int>& series) {
  const auto& q = a.quiver();
  const int nv = q.vertex_count;
  Module m;
  m.dims.assign(nv, 0);
  std::vector<std::size_t> pos(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series[k] < 0 || series[k] >= nv) throw std::invalid_argument("vertex out of range in module literal");
    pos[k] = m.dims[series[k]]++;
  }
  for (const auto& ar : q.arrows) m.arrow_maps.emplace_back(m.dims[ar.target], m.dims[ar.source], a.prime());
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    int found = -1;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
      if (q.arrows[ai].source == series[k] && q.arrows[ai].target == series[k + 1]) {
        if (found >= 0) throw std::invalid_argument("ambiguous module literal: parallel arrows");
        found = static_cast<int>(ai);
      }
    if (found < 0)
      throw std::invalid_argument("no arrow " + std::to_string(series[k] + 1) + " -> " +
                                  std::to_string(series[k + 1] + 1) + " in module literal");
    m.arrow_maps[found].set_raw(pos[k + 1], pos[k], 1);
  }
  if (!satisfies_relations(a, m)) throw std::invalid_argument("module literal violates the relations");
  for (std::size_t k = 0; k < series.size(); ++k)
    m.label += (k ? "/" : "") + std::to_string(series[k] + 1);
  return m;
}

DirectSum direct_sum(const Algebra& a, const std::vector<Module>& parts) {
  const int nv = a.vertex_count();
  const Fp p = a.prime();
  DirectSum ds;
  ds.sum.dims.assign(nv, 0);
  for (const auto& m : parts)
    for (int v = 0; v < nv; ++v) ds.sum.dims[v] += m.dims[v];
  for (std::size_t ai = 0; ai < a.quiver().arrows.size(); ++ai) {
    std::vector<Matrix> blocks;
    for (const auto& m : parts) blocks.push_back(m.arrow_maps[ai]);
    ds.sum.arrow_maps.push_back(alg::block_diag(blocks, p));
  }
  std::vector<std::size_t> off(nv, 0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    ModMorphism inc, proj;
    for (int v = 0; v < nv; ++v) {
      Matrix i(ds.sum.dims[v], parts[k].dims[v], p);
      i.paste(off[v], 0, Matrix::identity(parts[k].dims[v], p));
      proj.maps.push_back(i.transpose());
      inc.maps.push_back(std::move(i));
      off[v] += parts[k].dims[v];
    }
    ds.inclusions.push_back(std::move(inc));
    ds.projections.push_back(std::move(proj));
  }
  for (std::size_t k = 0; k < parts.size(); ++k)
    ds.sum.label += (k ? " + " : "") + parts[k].label;
  return ds;
}

// ---------------------------------------------------------------- Hom

namespace {

std::vector<std::size_t> hom_offsets(const Module& m, const Module& n, std::size_t* total) {
  std::vector<std::size_t> off(m.dims.size());
  std::size_t t = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    off[v] = t;
    t += m.dims[v] * n.dims[v];
  }
  *total = t;
  return off;
}

}  // namespace

std::vector<ModMorphism> hom_basis(const Algebra& a, const Module& m, const Module& n) {
  const auto& q = a.quiver();
  const Fp p = a.prime();
  PrimeField f(p);
  std::size_t total = 0;
  auto off = hom_offsets(m, n, &total);
  std::size_t eqs = 0;
  for (const auto& ar : q.arrows) eqs += n.dims[ar.target] * m.dims[ar.source];
  Matrix c(eqs, total, p);
  std::size_t row = 0;
  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const auto& ar = q.arrows[ai];
    const int s = ar.source, t = ar.target;
    const Matrix& ma = m.arrow_maps[ai];
    const Matrix& na = n.arrow_maps[ai];
    // phi_t * M_a - N_a * phi_s, entry (i,j)
    for (std::size_t i = 0; i < n.dims[t]; ++i)
      for (std::size_t j = 0; j < m.dims[s]; ++j, ++row) {
        for (std::size_t k = 0; k < m.dims[t]; ++k) {
          Fp v = ma.at(k, j);
          if (!v) continue;
          std::size_t col = off[t] + k * n.dims[t] + i;
          c.set_raw(row, col, f.add(c.at(row, col), v));
        }
        for (std::size_t k = 0; k < n.dims[s]; ++k) {
          Fp v = na.at(i, k);
          if (!v) continue;
          std::size_t col = off[s] + j * n.dims[s] + k;
          c.set_raw(row, col, f.sub(c.at(row, col), v));
        }
      }
  }
  Matrix k = alg::kernel_basis(c);
  std::vector<ModMorphism> basis;
  for (std::size_t b = 0; b < k.cols(); ++b) basis.push_back(unflatten(m, n, k.col_range(b, 1)));
  return basis;
}

Matrix flatten(const ModMorphism& f, Fp p) {
  std::vector<Fp> v;
  for (const auto& m : f.maps) {
    auto x = m.vec();
    v.insert(v.end(), x.begin(), x.end());
  }
  return Matrix::column(v, p);
}

ModMorphism unflatten(const Module& src, const Module& dst, const Matrix& v) {
  ModMorphism f;
  std::size_t idx = 0;
  for (std::size_t w = 0; w < src.dims.size(); ++w) {
    Matrix m(dst.dims[w], src.dims[w], v.prime());
    for (std::size_t c = 0; c < src.dims[w]; ++c)
      for (std::size_t r = 0; r < dst.dims[w]; ++r) m.set_raw(r, c, v.at(idx++, 0));
    f.maps.push_back(std::move(m));
  }
  return f;
}

std::optional<Matrix> coordinates(const std::vector<ModMorphism>& basis, const ModMorphism& f,
                                  std::size_t flat_dim, Fp p) {
  Matrix b(flat_dim, basis.size(), p);
  for (std::size_t i = 0; i < basis.size(); ++i) b.paste(0, i, flatten(basis[i], p));
  return alg::solve_matrix(b, flatten(f, p));
}

// ---------------------------------------------------------------- kernels

KernelData kernel(const Algebra& a, const Module& src, const ModMorphism& f) {
  const auto& q = a.quiver();
  KernelData kd;
  for (std::size_t v = 0; v < src.dims.size(); ++v) {
    Matrix k = alg::kernel_basis(f.maps[v]);
    kd.kernel.dims.push_back(k.cols());
    kd.inclusion.maps.push_back(std::move(k));
  }
  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const auto& ar = q.arrows[ai];
    auto x = alg::solve_matrix(kd.inclusion.maps[ar.target], src.arrow_maps[ai] * kd.inclusion.maps[ar.source]);
    if (!x) throw std::logic_error("kernel is not a submodule");
    kd.kernel.arrow_maps.push_back(*x);
  }
  return kd;
}

CokernelData cokernel(const Algebra& a, const Module& dst, const ModMorphism& f) {
  const auto& q = a.quiver();
  CokernelData cd;
  std::vector<alg::Quotient> qs;
  for (std::size_t v = 0; v < dst.dims.size(); ++v) {
    qs.push_back(alg::quotient_with_section(dst.dims[v], alg::column_space_basis(f.maps[v])));
    cd.cokernel.dims.push_back(qs.back().dim());
    cd.projection.maps.push_back(qs.back().projection);
  }
  for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const auto& ar = q.arrows[ai];
    cd.cokernel.arrow_maps.push_back(qs[ar.target].projection * dst.arrow_maps[ai] * qs[ar.source].section);
  }
  return cd;
}

std::vector<std::size_t> top_dims(const Algebra& a, const Module& m) {
  const auto& q = a.quiver();
  std::vector<std::size_t> top;
  for (int v = 0; v < q.vertex_count; ++v) {
    std::vector<Matrix> imgs;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
      if (q.arrows[ai].target == v) imgs.push_back(m.arrow_maps[ai]);
    std::size_t r = imgs.empty() ? 0 : alg::rank(alg::hstack(imgs, m.dims[v], a.prime()));
    top.push_back(m.dims[v] - r);
  }
  return top;
}

ProjectiveCover projective_cover(const Algebra& a, const Module& m) {
  const auto& q = a.quiver();
  const Fp p = a.prime();
  ProjectiveCover pc;
  std::vector<Matrix> images;
  for (int v = 0; v < q.vertex_count; ++v) {
    std::vector<Matrix> imgs;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
      if (q.arrows[ai].target == v) imgs.push_back(m.arrow_maps[ai]);
    Matrix rad = imgs.empty() ? Matrix(m.dims[v], 0, p)
                              : alg::column_space_basis(alg::hstack(imgs, m.dims[v], p));
    auto quo = alg::quotient_with_section(m.dims[v], rad);
    for (std::size_t k = 0; k < quo.dim(); ++k) {
      pc.vertices.push_back(v);
      images.push_back(quo.section.col_range(k, 1));
    }
  }
  pc.projective = projective_sum(a, pc.vertices);
  pc.cover = map_from_projective(a, pc.vertices, images, m);
  return pc;
}

Resolution resolution(const Algebra& a, const Module& m, int length) {
  if (length < 0) throw std::invalid_argument("negative resolution length");
  Resolution r;
  auto pc = projective_cover(a, m);
  r.terms.push_back(pc.projective);
  r.differentials.push_back(pc.cover);
  r.vertices.push_back(pc.vertices);
  for (int i = 1; i <= length; ++i) {
    auto kd = kernel(a, r.terms.back(), r.differentials.back());
    auto next = projective_cover(a, kd.kernel);
    r.terms.push_back(next.projective);
    r.differentials.push_back(kd.inclusion * next.cover);
    r.vertices.push_back(next.vertices);
  }
  return r;
}

Resolution direct_sum_resolution(const Algebra& a, const std::vector<Resolution>& parts) {
  Resolution r;
  if (parts.empty()) throw std::invalid_argument("empty direct sum of resolutions");
  const std::size_t len = parts.front().terms.size();
  const Fp p = a.prime();
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<int> verts;
    std::vector<Module> ts;
    for (const auto& pr : parts) {
      verts.insert(verts.end(), pr.vertices[i].begin(), pr.vertices[i].end());
      ts.push_back(pr.terms[i]);
    }
    r.terms.push_back(projective_sum(a, verts));
    r.vertices.push_back(verts);
    ModMorphism d;
    for (int v = 0; v < a.vertex_count(); ++v) {
      std::vector<Matrix> blocks;
      for (const auto& pr : parts) blocks.push_back(pr.differentials[i].maps[v]);
      d.maps.push_back(alg::block_diag(blocks, p));
    }
    r.differentials.push_back(std::move(d));
  }
  return r;
}

// ---------------------------------------------------------------- decomposition

namespace {

Matrix power(const Matrix& m, std::size_t e) {
  Matrix r = Matrix::identity(m.rows(), m.prime());
  Matrix b = m;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// Fitting splitting of phi: returns true and fills image/kernel parts when
// phi is neither nilpotent nor invertible.
bool fitting_split(const Algebra& a, const Module& m, const ModMorphism& phi, Summand* img, Summand* ker) {
  const std::size_t n = m.total_dim();
  ModMorphism psi;
  bool all_zero = true, all_bij = true;
  for (const auto& mat : phi.maps) psi.maps.push_back(power(mat, n));
  for (const auto& mat : psi.maps) {
    if (!mat.is_zero()) all_zero = false;
    if (alg::rank(mat) != mat.rows()) all_bij = false;
  }
  if (all_zero || all_bij) return false;
  const Fp p = a.prime();
  const auto& q = a.quiver();
  ModMorphism inc_i, inc_k, pr_i, pr_k;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Matrix bi = alg::column_space_basis(psi.maps[v]);
    Matrix bk = alg::kernel_basis(psi.maps[v]);
    Matrix change = alg::hstack({bi, bk}, m.dims[v], p);
    auto inv = alg::inverse(change);
    if (!inv) throw std::logic_error("Fitting decomposition is not direct");
    inc_i.maps.push_back(bi);
    inc_k.maps.push_back(bk);
    pr_i.maps.push_back(inv->row_range(0, bi.cols()));
    pr_k.maps.push_back(inv->row_range(bi.cols(), bk.cols()));
  }
  auto restrict = [&](const ModMorphism& inc, const ModMorphism& pr) {
    Module s;
    for (auto& mat : inc.maps) s.dims.push_back(mat.cols());
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
      const auto& ar = q.arrows[ai];
      s.arrow_maps.push_back(pr.maps[ar.target] * m.arrow_maps[ai] * inc.maps[ar.source]);
    }
    return s;
  };
  *img = Summand{restrict(inc_i, pr_i), inc_i, pr_i};
  *ker = Summand{restrict(inc_k, pr_k), inc_k, pr_k};
  return true;
}

ModMorphism combine(const std::vector<ModMorphism>& basis, const std::vector<Fp>& coeffs,
                    const Module& m, Fp p) {
  ModMorphism r = zero_morphism(m, m, p);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i]) r = r + basis[i].scaled(coeffs[i]);
  return r;
}

// Searches End(M) for an element that splits M. Returns false when End(M)
// is certified local (exhaustive) or the random budget is exhausted.
bool find_split(const Algebra& a, const Module& m, std::uint64_t seed, Summand* s1, Summand* s2,
                bool* certified) {
  const Fp p = a.prime();
  auto end = hom_basis(a, m, m);
  *certified = false;
  if (end.size() <= 1) {
    *certified = true;
    return false;
  }
  for (const auto& b : end)
    if (fitting_split(a, m, b, s1, s2)) return true;
  double space = 1;
  for (std::size_t i = 0; i < end.size(); ++i) space *= p;
  if (end.size() <= 6 && space <= 200000) {
    std::vector<Fp> c(end.size(), 0);
    while (true) {
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == p) c[i++] = 0;
      if (i == c.size()) break;
      if (fitting_split(a, m, combine(end, c, m, p), s1, s2)) return true;
    }
    *certified = true;
    return false;
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<Fp> c(end.size());
    for (auto& x : c) x = static_cast<Fp>(rng() % p);
    if (fitting_split(a, m, combine(end, c, m, p), s1, s2)) return true;
  }
  return false;
}

}  // namespace

std::vector<Summand> decompose(const Algebra& a, const Module& m, std::uint64_t seed) {
  const Fp p = a.prime();
  std::vector<Summand> out;
  if (m.is_zero()) return out;
  Summand s1, s2;
  bool certified = false;
  if (!find_split(a, m, seed, &s1, &s2, &certified)) {
    out.push_back(Summand{m, identity_morphism(m, p), identity_morphism(m, p)});
    return out;
  }
  for (Summand* part : {&s1, &s2}) {
    for (auto& sub : decompose(a, part->module, seed)) {
      out.push_back(Summand{sub.module, part->inclusion * sub.inclusion, sub.projection * part->projection});
    }
  }
  return out;
}

bool is_indecomposable(const Algebra& a, const Module& m, std::uint64_t seed) {
  if (m.is_zero()) return false;
  return decompose(a, m, seed).size() == 1;
}

namespace {

std::optional<ModMorphism> iso_between_indecomposables(const Algebra& a, const Module& m, const Module& n) {
  if (m.dims != n.dims) return std::nullopt;
  for (const auto& f : hom_basis(a, m, n))
    if (f.is_bijective()) return f;
  return std::nullopt;
}

}  // namespace

std::optional<ModMorphism> find_isomorphism(const Algebra& a, const Module& m, const Module& n,
                                            std::uint64_t seed) {
  if (m.dims != n.dims) return std::nullopt;
  if (m.is_zero()) return zero_morphism(m, n, a.prime());
  if (auto direct = iso_between_indecomposables(a, m, n)) return direct;
  auto dm = decompose(a, m, seed), dn = decompose(a, n, seed);
  if (dm.size() != dn.size() || dm.size() == 1) return std::nullopt;
  std::vector<bool> used(dn.size(), false);
  ModMorphism total = zero_morphism(m, n, a.prime());
  for (const auto& sm : dm) {
    bool matched = false;
    for (std::size_t j = 0; j < dn.size() && !matched; ++j) {
      if (used[j]) continue;
      if (auto iso = iso_between_indecomposables(a, sm.module, dn[j].module)) {
        total = total + dn[j].inclusion * *iso * sm.projection;
        used[j] = matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  return total;
}

// ---------------------------------------------------------------- Ext

ExtGroup::ExtGroup(const Algebra& a, int n, Module c, Module a_mod)
    : ExtGroup(a, n, c, std::move(a_mod), resolution(a, c, n + 1)) {}

ExtGroup::ExtGroup(const Algebra& a, int n, Module c, Module a_mod, Resolution res)
    : n_(n), c_(std::move(c)), a_(std::move(a_mod)), res_(std::move(res)), p_(a.prime()) {
  if (n_ < 1) throw std::invalid_argument("Ext degree must be at least 1");
  if (res_.terms.size() < static_cast<std::size_t>(n_ + 2))
    throw std::invalid_argument("resolution too short for Ext degree");
  build(a);
}

void ExtGroup::build(const Algebra& a) {
  const Module& pn = res_.terms[n_];
  hom_pn_ = hom_basis(a, pn, a_);
  flat_dim_ = 0;
  for (std::size_t v = 0; v < pn.dims.size(); ++v) flat_dim_ += pn.dims[v] * a_.dims[v];
  const Module& pn1 = res_.terms[n_ + 1];
  std::size_t next_flat = 0;
  for (std::size_t v = 0; v < pn1.dims.size(); ++v) next_flat += pn1.dims[v] * a_.dims[v];
  Matrix z(next_flat, hom_pn_.size(), p_);
  for (std::size_t i = 0; i < hom_pn_.size(); ++i)
    z.paste(0, i, flatten(hom_pn_[i] * res_.differentials[n_ + 1], p_));
  cocycle_basis_ = alg::kernel_basis(z);
  // coboundaries g∘∂_n for g in Hom(P_{n-1}, A)
  auto prev = hom_basis(a, res_.terms[n_ - 1], a_);
  Matrix bounds(cocycle_basis_.cols(), prev.size(), p_);
  for (std::size_t j = 0; j < prev.size(); ++j) {
    auto h = coordinates(hom_pn_, prev[j] * res_.differentials[n_], flat_dim_, p_);
    if (!h) throw std::logic_error("coboundary outside Hom(P_n, A)");
    auto y = alg::solve_matrix(cocycle_basis_, *h);
    if (!y) throw std::logic_error("coboundary is not a cocycle");
    bounds.paste(0, j, *y);
  }
  quotient_ = alg::quotient_with_section(cocycle_basis_.cols(), bounds);
}

ModMorphism ExtGroup::cocycle(const Matrix& coords) const {
  Matrix h = cocycle_basis_ * (quotient_.section * coords);
  ModMorphism r = zero_morphism(res_.terms[n_], a_, p_);
  for (std::size_t i = 0; i < hom_pn_.size(); ++i)
    if (h.at(i, 0)) r = r + hom_pn_[i].scaled(h.at(i, 0));
  return r;
}

ModMorphism ExtGroup::basis_cocycle(std::size_t i) const {
  Matrix e(dim(), 1, p_);
  e.set_raw(i, 0, 1);
  return cocycle(e);
}

bool ExtGroup::is_cocycle(const ModMorphism& f) const {
  return (f * res_.differentials[n_ + 1]).is_zero();
}

Matrix ExtGroup::class_of(const ModMorphism& f) const {
  auto h = coordinates(hom_pn_, f, flat_dim_, p_);
  if (!h) throw std::invalid_argument("not a morphism P_n -> A");
  auto y = alg::solve_matrix(cocycle_basis_, *h);
  if (!y) throw std::invalid_argument("not a cocycle");
  return quotient_.projection * *y;
}

namespace {

// Lifts g : P -> Y through the surjection-onto-image d : X -> Y, where P is
// projective with summand vertices `verts`. Returns nullopt when some
// generator image is not in the image of d.
std::optional<ModMorphism> lift_projective(const Algebra& a, const std::vector<int>& verts,
                                           const ModMorphism& g, const ModMorphism& d, const Module& x) {
  std::vector<Matrix> images;
  for (std::size_t k = 0; k < verts.size(); ++k) {
    int v = verts[k];
    Matrix target = g.maps[v] * projective_generator(a, verts, k);
    auto sol = alg::solve_matrix(d.maps[v], target);
    if (!sol) return std::nullopt;
    images.push_back(*sol);
  }
  return map_from_projective(a, verts, images, x);
}

}  // namespace

std::vector<ModMorphism> lift_to_resolutions(const Algebra& a, const Resolution& src, const Resolution& dst,
                                             const ModMorphism& c) {
  std::vector<ModMorphism> f;
  const std::size_t len = std::min(src.terms.size(), dst.terms.size());
  for (std::size_t i = 0; i < len; ++i) {
    ModMorphism target = i == 0 ? c * src.differentials[0] : f[i - 1] * src.differentials[i];
    auto lifted = lift_projective(a, src.vertices[i], target, dst.differentials[i], dst.terms[i]);
    if (!lifted) throw std::logic_error("comparison map does not lift");
    f.push_back(*lifted);
  }
  return f;
}

Matrix push_matrix(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ModMorphism& f) {
  (void)a;
  Matrix r(to.dim(), from.dim(), a.prime());
  for (std::size_t i = 0; i < from.dim(); ++i) r.paste(0, i, to.class_of(f * from.basis_cocycle(i)));
  return r;
}

Matrix pull_matrix(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ModMorphism& c) {
  Matrix r(to.dim(), from.dim(), a.prime());
  if (from.dim() == 0 || to.dim() == 0) return r;
  auto chain = lift_to_resolutions(a, to.res(), from.res(), c);
  const auto& fn = chain[from.degree()];
  for (std::size_t i = 0; i < from.dim(); ++i) r.paste(0, i, to.class_of(from.basis_cocycle(i) * fn));
  return r;
}

ExtElement push(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ExtElement& d,
                const ModMorphism& f) {
  if (d.n != from.degree() || from.degree() != to.degree()) throw std::invalid_argument("degree mismatch");
  ExtElement r;
  r.n = d.n;
  r.coords = push_matrix(a, from, to, f) * d.coords;
  r.cocycle = to.cocycle(r.coords);
  return r;
}

ExtElement pull(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ExtElement& d,
                const ModMorphism& c) {
  if (d.n != from.degree() || from.degree() != to.degree()) throw std::invalid_argument("degree mismatch");
  ExtElement r;
  r.n = d.n;
  r.coords = pull_matrix(a, from, to, c) * d.coords;
  r.cocycle = to.cocycle(r.coords);
  return r;
}

// ---------------------------------------------------------------- sequences

std::optional<std::size_t> exactness_failure(const Algebra& a, const ModSequence& s) {
  const std::size_t len = s.terms.size();
  for (std::size_t i = 0; i < len; ++i) {
    for (int v = 0; v < a.vertex_count(); ++v) {
      std::size_t in = i > 0 ? alg::rank(s.maps[i - 1].maps[v]) : 0;
      std::size_t out = i + 1 < len ? alg::rank(s.maps[i].maps[v]) : 0;
      if (in + out != s.terms[i].dims[v]) return i;
      if (i > 0 && i + 1 < len && !(s.maps[i].maps[v] * s.maps[i - 1].maps[v]).is_zero()) return i;
    }
  }
  return std::nullopt;
}

Matrix yoneda_class(const Algebra& a, const ExtGroup& ext, const ModSequence& s) {
  const int n = ext.degree();
  if (s.terms.size() != static_cast<std::size_t>(n + 2)) throw std::invalid_argument("sequence length does not match degree");
  if (auto bad = exactness_failure(a, s)) throw std::runtime_error("not exact at position " + std::to_string(*bad));
  const auto& res = ext.res();
  // g_0 : P_0 -> X_n lifting the augmentation through X_n -> X_{n+1} = C
  ModMorphism g;
  for (int i = 0; i <= n; ++i) {
    const std::size_t xi = static_cast<std::size_t>(n - i);
    ModMorphism target = i == 0 ? res.differentials[0] : g * res.differentials[i];
    auto lifted = lift_projective(a, res.vertices[i], target, s.maps[xi], s.terms[xi]);
    if (!lifted) throw std::runtime_error("not exact at position " + std::to_string(xi));
    g = *lifted;
  }
  return ext.class_of(g);
}

ModSequence splice(const Algebra& a, const ExtGroup& ext, const ModMorphism& cocycle) {
  const int n = ext.degree();
  const auto& res = ext.res();
  const Module& am = ext.end_a();
  auto ds = direct_sum(a, {am, res.terms[n - 1]});
  ModMorphism into = ds.inclusions[0] * cocycle - ds.inclusions[1] * res.differentials[n];
  auto cd = cokernel(a, ds.sum, into);
  ModSequence seq;
  seq.terms.push_back(am);
  seq.terms.push_back(cd.cokernel);
  seq.maps.push_back(cd.projection * ds.inclusions[0]);
  // induced map out of the pushout: (0, ∂_{n-1}) through the section
  ModMorphism out = res.differentials[n - 1] * ds.projections[1];
  ModMorphism sec;
  for (std::size_t v = 0; v < cd.cokernel.dims.size(); ++v) {
    auto q = alg::quotient_with_section(ds.sum.dims[v], alg::column_space_basis(into.maps[v]));
    sec.maps.push_back(q.section);
  }
  seq.maps.push_back(out * sec);
  for (int i = n - 2; i >= 0; --i) {
    seq.terms.push_back(res.terms[i]);
    seq.maps.push_back(res.differentials[i]);
  }
  seq.terms.push_back(ext.end_c());
  return seq;
}

}  // namespace exangulate::rep
