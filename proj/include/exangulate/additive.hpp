#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exangulate/matrix.hpp"

namespace exangulate::ex {

using alg::Fp;
using alg::Matrix;
using Vec = std::vector<Fp>;

/// An object is a list of generator indices, read as their direct sum. The
/// order fixes the block layout of morphisms.
using Obj = std::vector<int>;

/// Morphism between objects: concatenated coordinate blocks, one block per
/// (source summand i, target summand j) pair, i outer.
struct Mor {
  Obj src, dst;
  Vec c;
};

/// Finite k-linear Krull-Schmidt category presented by generators, basis
/// hom spaces and composition structure constants.
class AddCategory {
 public:
  /// comp[g][h][k] has hom(g,k) rows and hom(g,h)*hom(h,k) columns; the
  /// column b1*hom(h,k)+b2 holds the coordinates of (basis b2)∘(basis b1).
  AddCategory(Fp p, std::vector<std::string> names, std::vector<std::vector<std::size_t>> hom_dims,
              std::vector<Matrix> comp, std::vector<Vec> identities);

  Fp prime() const { return p_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_[g]; }
  std::string name(const Obj& x) const;
  std::size_t hom_dim(int g, int h) const { return dims_[g][h]; }
  std::size_t hom_dim(const Obj& x, const Obj& y) const;
  const Matrix& structure(int g, int h, int k) const { return comp_[(g * size() + h) * size() + k]; }

  std::size_t block_offset(const Obj& x, const Obj& y, std::size_t i, std::size_t j) const;
  Vec block(const Mor& f, std::size_t i, std::size_t j) const;
  void set_block(Mor& f, std::size_t i, std::size_t j, const Vec& v) const;

  Mor zero(const Obj& x, const Obj& y) const;
  Mor identity(const Obj& x) const;
  Mor compose(const Mor& g, const Mor& f) const;  // g∘f
  Mor add(const Mor& f, const Mor& g) const;
  Mor sub(const Mor& f, const Mor& g) const;
  Mor neg(const Mor& f) const;
  Mor scale(const Mor& f, Fp s) const;
  bool is_zero(const Mor& f) const;
  bool equal(const Mor& f, const Mor& g) const;

  std::vector<Mor> basis(const Obj& x, const Obj& y) const;
  Mor from_coords(const Obj& x, const Obj& y, const Matrix& col) const;
  Matrix coords(const Mor& f) const;  // column

  /// Matrix of Hom(x, y) -> Hom(x, z), u ↦ g∘u, for g : y -> z.
  Matrix post_matrix(const Mor& g, const Obj& x) const;
  /// Matrix of Hom(y, z) -> Hom(x, z), u ↦ u∘f, for f : x -> y.
  Matrix pre_matrix(const Mor& f, const Obj& z) const;

  std::optional<Mor> inverse(const Mor& f) const;
  bool is_iso(const Mor& f) const { return inverse(f).has_value(); }
  /// Some u with u∘f = id, if f is a split monomorphism.
  std::optional<Mor> retraction(const Mor& f) const;
  /// Some v with f∘v = id, if f is a split epimorphism.
  std::optional<Mor> section(const Mor& f) const;

  /// Block-diagonal morphism x1+x2 -> y1+y2.
  Mor diag(const Mor& f, const Mor& g) const;
  /// Morphism assembled from a matrix of morphisms between summand lists:
  /// blocks[r][c] : src_parts[c] -> dst_parts[r].
  Mor assemble(const std::vector<Obj>& dst_parts, const std::vector<Obj>& src_parts,
               const std::vector<std::vector<Mor>>& blocks) const;
  /// Restriction of f to the summands listed (by index) of source and target.
  Mor restrict(const Mor& f, const std::vector<std::size_t>& src_idx, const std::vector<std::size_t>& dst_idx) const;

  /// Is g an isomorphism-invariant zero object (End(g) = 0)?
  bool is_zero_object(int g) const { return hom_dim(g, g) == 0; }

 private:
  Fp p_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> dims_;
  std::vector<Matrix> comp_;
  std::vector<Vec> ids_;
};

Obj concat(const Obj& a, const Obj& b);
std::vector<Vec> enumerate_space(std::size_t dim, Fp p, std::size_t cap);
Matrix to_col(const Vec& v, Fp p);
Vec from_col(const Matrix& m);

/// Additive bifunctor E : C^op × C -> mod k, given on generators by
/// dimensions and the action of basis morphisms on both sides.
class Bifunctor {
 public:
  /// push[(c*G + a)*G + a2][b] : E(c,a) -> E(c,a2) for basis b of Hom(a,a2)
  /// pull[(c2*G + c)*G + a][b] : E(c,a) -> E(c2,a) for basis b of Hom(c2,c)
  Bifunctor(std::shared_ptr<const AddCategory> cat, std::vector<std::vector<std::size_t>> dims,
            std::vector<std::vector<Matrix>> push, std::vector<std::vector<Matrix>> pull);

  const AddCategory& category() const { return *cat_; }
  std::shared_ptr<const AddCategory> category_ptr() const { return cat_; }
  std::size_t dim(int c, int a) const { return dims_[c][a]; }
  std::size_t dim(const Obj& c, const Obj& a) const;
  std::size_t block_offset(const Obj& c, const Obj& a, std::size_t i, std::size_t j) const;

  const std::vector<Matrix>& push_table(int c, int a, int a2) const;
  const std::vector<Matrix>& pull_table(int c2, int c, int a) const;

  /// E(C, f) : E(C, A) -> E(C, A2) for f : A -> A2.
  Matrix push_matrix(const Mor& f, const Obj& c) const;
  /// E(g, A) : E(C, A) -> E(C2, A) for g : C2 -> C.
  Matrix pull_matrix(const Mor& g, const Obj& a) const;
  Vec push(const Mor& f, const Obj& c, const Vec& delta) const;
  Vec pull(const Mor& g, const Obj& a, const Vec& delta) const;

  /// δ ⊕ δ' in E(C ⊕ C', A ⊕ A').
  Vec direct_sum(const Obj& c1, const Obj& a1, const Vec& d1, const Obj& c2, const Obj& a2,
                 const Vec& d2) const;

 private:
  std::shared_ptr<const AddCategory> cat_;
  std::vector<std::vector<std::size_t>> dims_;
  std::vector<std::vector<Matrix>> push_;
  std::vector<std::vector<Matrix>> pull_;
};

}  // namespace exangulate::ex
