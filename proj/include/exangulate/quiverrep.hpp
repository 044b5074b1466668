#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exangulate/matrix.hpp"

namespace exangulate::rep {

using alg::Fp;
using alg::Matrix;

struct Arrow {
  std::string name;
  int source = 0;  // 0-based vertex index
  int target = 0;
};

struct Quiver {
  int vertex_count = 0;
  std::vector<Arrow> arrows;

  int arrow_index(const std::string& name) const;  // -1 if absent
};

/// A path is a sequence of arrow indices composed left to right; a trivial
/// path e_v has no arrows and is identified by its vertex.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator<(const Path& o) const;
  bool operator==(const Path& o) const;
};

struct RelationTerm {
  std::int64_t coefficient = 1;
  std::vector<int> arrows;
};

using Relation = std::vector<RelationTerm>;

/// Quotient of the path algebra by a two-sided ideal generated by linear
/// combinations of parallel paths of length at least two.
class Algebra {
 public:
  Algebra(Quiver quiver, std::vector<Relation> relations, Fp p, int path_length_bound = 16);

  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation>& relations() const { return relations_; }
  Fp prime() const { return p_; }
  int vertex_count() const { return quiver_.vertex_count; }
  int path_length_bound() const { return bound_; }

  /// Basis paths of e_source Λ e_target (paths from source to target).
  const std::vector<Path>& basis(int source, int target) const;
  std::size_t dimension() const;

  /// Coordinates of an arbitrary path in the basis of its (source, target)
  /// block. Paths at or beyond the bound reduce to zero.
  Matrix reduce(const Path& path) const;

  /// Product of two basis paths, as coordinates in basis(u.source, v.target).
  Matrix multiply(const Path& u, const Path& v) const;

 private:
  struct Block {
    std::vector<Path> all;  // all paths up to the bound
    std::map<std::vector<int>, std::size_t> index;
    alg::Quotient quotient;
    std::vector<Path> basis;
  };
  const Block& block(int s, int t) const { return blocks_[s * quiver_.vertex_count + t]; }

  Quiver quiver_;
  std::vector<Relation> relations_;
  Fp p_;
  int bound_;
  std::vector<Block> blocks_;
};

/// A finite-dimensional right module given as a quiver representation:
/// one vector space per vertex and one matrix per arrow.
struct Module {
  std::vector<std::size_t> dims;
  std::vector<Matrix> arrow_maps;  // arrow_maps[a] : dims[source] -> dims[target]
  std::string label;               // display name, may be empty

  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
};

/// Morphism of representations: one matrix per vertex.
struct ModMorphism {
  std::vector<Matrix> maps;

  ModMorphism operator*(const ModMorphism& o) const;  // composition this∘o
  ModMorphism operator+(const ModMorphism& o) const;
  ModMorphism operator-(const ModMorphism& o) const;
  ModMorphism operator-() const;
  ModMorphism scaled(Fp s) const;
  bool is_zero() const;
  bool operator==(const ModMorphism& o) const;
  bool is_bijective() const;
  bool is_injective() const;
  bool is_surjective() const;
};

/// Evaluates a path on a module (composite of arrow maps).
Matrix path_action(const Module& m, const std::vector<int>& arrows, int source_vertex, Fp p);

bool satisfies_relations(const Algebra& a, const Module& m);
bool is_homomorphism(const Algebra& a, const Module& src, const Module& dst, const ModMorphism& f);

Module zero_module(const Algebra& a);
ModMorphism zero_morphism(const Module& src, const Module& dst, Fp p);
ModMorphism identity_morphism(const Module& m, Fp p);
ModMorphism inverse_morphism(const ModMorphism& f);

enum class StandardKind { Simple, Projective, Injective };

Module standard_module(const Algebra& a, StandardKind kind, int vertex);

/// Uniserial module with composition series listed from top to socle, e.g.
/// {1,2,3} for "1/2/3"; consecutive vertices must be joined by an arrow.
Module uniserial_module(const Algebra& a, const std::vector<int>& series);

struct DirectSum {
  Module sum;
  std::vector<ModMorphism> inclusions;
  std::vector<ModMorphism> projections;
};
DirectSum direct_sum(const Algebra& a, const std::vector<Module>& parts);

std::vector<ModMorphism> hom_basis(const Algebra& a, const Module& m, const Module& n);

/// Flattened coordinates (vertex by vertex, column-major) of a morphism.
Matrix flatten(const ModMorphism& f, Fp p);
ModMorphism unflatten(const Module& src, const Module& dst, const Matrix& v);

/// Coordinates of f in the given basis; nullopt if f is not in the span.
std::optional<Matrix> coordinates(const std::vector<ModMorphism>& basis, const ModMorphism& f,
                                  std::size_t flat_dim, Fp p);

struct Summand {
  Module module;
  ModMorphism inclusion;   // summand -> M
  ModMorphism projection;  // M -> summand
};

/// Krull-Schmidt decomposition via idempotents of End(M). Deterministic for
/// a fixed seed; throws when no splitting idempotent can be certified.
std::vector<Summand> decompose(const Algebra& a, const Module& m, std::uint64_t seed = 0x5eed);

bool is_indecomposable(const Algebra& a, const Module& m, std::uint64_t seed = 0x5eed);

/// Isomorphism between two modules if one exists (indecomposable inputs are
/// handled by a basis scan; general inputs via decomposition).
std::optional<ModMorphism> find_isomorphism(const Algebra& a, const Module& m, const Module& n,
                                            std::uint64_t seed = 0x5eed);

/// Submodule/quotient helpers. The kernel carries its inclusion, the
/// cokernel its projection.
struct KernelData {
  Module kernel;
  ModMorphism inclusion;
};
struct CokernelData {
  Module cokernel;
  ModMorphism projection;
};
KernelData kernel(const Algebra& a, const Module& src, const ModMorphism& f);
CokernelData cokernel(const Algebra& a, const Module& dst, const ModMorphism& f);

/// Top of M = M / rad M as per-vertex dimensions.
std::vector<std::size_t> top_dims(const Algebra& a, const Module& m);

struct ProjectiveCover {
  Module projective;
  ModMorphism cover;  // projective -> M, surjective
  std::vector<int> vertices;  // P_v summands in order
};
ProjectiveCover projective_cover(const Algebra& a, const Module& m);

/// Projective resolution P_length -> ... -> P_0 -> M. differentials[0] is the
/// augmentation P_0 -> M; differentials[i] : P_i -> P_{i-1} for i >= 1.
struct Resolution {
  std::vector<Module> terms;  // P_0 .. P_length
  std::vector<ModMorphism> differentials;
  std::vector<std::vector<int>> vertices;  // projective summands of each term
};
Resolution resolution(const Algebra& a, const Module& m, int length);

/// Ext^n(C, A) = H^n Hom(P_•, A) with a fixed basis of cocycle representatives.
class ExtGroup {
 public:
  ExtGroup(const Algebra& a, int n, Module c, Module a_mod);
  ExtGroup(const Algebra& a, int n, Module c, Module a_mod, Resolution res);

  int degree() const { return n_; }
  std::size_t dim() const { return quotient_.dim(); }
  const Module& end_c() const { return c_; }
  const Module& end_a() const { return a_; }
  const Resolution& res() const { return res_; }

  /// Cocycle P_n -> A of the basis element (or of a coordinate vector).
  ModMorphism cocycle(const Matrix& coords) const;
  ModMorphism basis_cocycle(std::size_t i) const;

  /// Class of a cocycle P_n -> A in the basis.
  Matrix class_of(const ModMorphism& cocycle) const;
  bool is_cocycle(const ModMorphism& f) const;

 private:
  void build(const Algebra& a);

  int n_;
  Module c_, a_;
  Resolution res_;
  Fp p_;
  std::vector<ModMorphism> hom_pn_;  // basis of Hom(P_n, A)
  std::size_t flat_dim_ = 0;
  alg::Quotient quotient_;          // cocycles modulo coboundaries
  Matrix cocycle_basis_;             // columns in hom_pn_ coordinates
};

struct ExtElement {
  int n = 1;
  Matrix coords;       // in the ExtGroup basis
  ModMorphism cocycle; // P_n -> A
};

/// Chain map between resolutions lifting c : C' -> C; returns components
/// f_0 .. f_length with f_i : P'_i -> P_i.
std::vector<ModMorphism> lift_to_resolutions(const Algebra& a, const Resolution& src,
                                             const Resolution& dst, const ModMorphism& c);

/// a_* : Ext^n(C, A) -> Ext^n(C, A') as a matrix.
Matrix push_matrix(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ModMorphism& f);
/// c^* : Ext^n(C, A) -> Ext^n(C', A) as a matrix.
Matrix pull_matrix(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ModMorphism& c);

ExtElement push(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ExtElement& d,
                const ModMorphism& f);
ExtElement pull(const Algebra& a, const ExtGroup& from, const ExtGroup& to, const ExtElement& d,
                const ModMorphism& c);

/// A module sequence 0 -> X_0 -> X_1 -> ... -> X_{n+1} -> 0.
struct ModSequence {
  std::vector<Module> terms;
  std::vector<ModMorphism> maps;  // maps[i] : terms[i] -> terms[i+1]
};

/// Position of the first failure of exactness of 0 -> X_0 -> ... -> X_{n+1} -> 0
/// (position i refers to terms[i]); nullopt when exact.
std::optional<std::size_t> exactness_failure(const Algebra& a, const ModSequence& s);

/// Yoneda class of an exact sequence with ends A = terms.front(),
/// C = terms.back() in the group ext (which must have matching ends).
/// Throws std::runtime_error("not exact at position i") on failure.
Matrix yoneda_class(const Algebra& a, const ExtGroup& ext, const ModSequence& s);

/// The standard sequence representing a cocycle: the pushout of the
/// truncated resolution along it. Middle terms P_{n-2},...,P_0 and the
/// pushout module.
ModSequence splice(const Algebra& a, const ExtGroup& ext, const ModMorphism& cocycle);

/// Morphism out of a projective ⊕ P_{v_k} sending the k-th top generator to
/// images[k] (a column in target.dims[v_k]).
ModMorphism map_from_projective(const Algebra& a, const std::vector<int>& vertices,
                                const std::vector<Matrix>& images, const Module& target);

/// Projective ⊕ P_{v_k} in the layout used by map_from_projective.
Module projective_sum(const Algebra& a, const std::vector<int>& vertices);

/// Generator of the k-th summand of projective_sum(vertices), as a column
/// at vertex vertices[k].
Matrix projective_generator(const Algebra& a, const std::vector<int>& vertices, std::size_t k);

/// Resolution of a direct sum assembled from resolutions of the parts.
Resolution direct_sum_resolution(const Algebra& a, const std::vector<Resolution>& parts);

}  // namespace exangulate::rep
