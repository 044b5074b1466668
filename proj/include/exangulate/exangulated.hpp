#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exangulate/additive.hpp"

namespace exangulate::ex {

/// ⟨X•, δ⟩ with X_0 .. X_{n+1}, d_i : X_i -> X_{i+1} and δ ∈ E(X_{n+1}, X_0).
struct Exangle {
  std::vector<Obj> terms;
  std::vector<Mor> d;
  Vec delta;

  int n() const { return static_cast<int>(terms.size()) - 2; }
  const Obj& front() const { return terms.front(); }
  const Obj& back() const { return terms.back(); }
};

/// A failing datum. side is one of "complex", "contravariant", "covariant",
/// "realization" or an axiom-specific tag.
struct Witness {
  std::string side;
  int position = -1;
  int test_object = -1;  // generator index
  Vec element;
  std::string detail;
};

struct Verdict {
  bool ok = true;
  std::optional<Witness> witness;
};

struct Bounds {
  int multiplicity = 2;       // per-generator multiplicity of searched objects
  int enumeration = 2;        // total multiplicity of objects in axiom and MR enumerations
  std::size_t search_cap = 4096;  // largest affine space enumerated point by point
};

class Realizer {
 public:
  virtual ~Realizer() = default;
  /// A distinguished exangle for δ ∈ E(C, A) with ends exactly A and C.
  virtual Exangle realize(const Obj& c, const Obj& a, const Vec& delta) const = 0;
};

/// The split exangle of 0 ∈ E(C, A): A → A → 0 … 0 → C → C, or A → A⊕C → C for n = 1.
Exangle split_exangle(const AddCategory& cat, int n, const Obj& c, const Obj& a, std::size_t ext_dim);

class ExCategory {
 public:
  ExCategory(int n, std::shared_ptr<const Bifunctor> e, std::shared_ptr<const Realizer> s, Bounds bounds);

  int n() const { return n_; }
  const AddCategory& cat() const { return e_->category(); }
  const Bifunctor& E() const { return *e_; }
  std::shared_ptr<const Bifunctor> E_ptr() const { return e_; }
  const Bounds& bounds() const { return bounds_; }

  /// Cached realization; throws std::runtime_error when the backend has none.
  const Exangle& realize(const Obj& c, const Obj& a, const Vec& delta) const;

  bool is_inflation(const Mor& f) const;
  bool is_deflation(const Mor& g) const;

  /// Generators g with E(g, x) ≠ 0 for some summand x of a (left = true), or
  /// E(x, g) ≠ 0 for some summand x of a.
  std::vector<int> relevant(const Obj& a, bool left) const;

 private:
  int n_;
  std::shared_ptr<const Bifunctor> e_;
  std::shared_ptr<const Realizer> s_;
  Bounds bounds_;
  mutable std::map<std::tuple<Obj, Obj, Vec>, Exangle> cache_;
  mutable std::map<std::tuple<Obj, Obj, Vec>, bool> infl_, defl_;
};

/// δ♯ : Hom(T, C) -> E(T, A), f ↦ f^*δ.
Matrix delta_sharp_contra(const Bifunctor& e, const Obj& c, const Obj& a, const Vec& delta, const Obj& t);
/// δ^♯ : Hom(A, T) -> E(C, T), g ↦ g_*δ.
Matrix delta_sharp_co(const Bifunctor& e, const Obj& c, const Obj& a, const Vec& delta, const Obj& t);

/// First i with d_{i+1}∘d_i ≠ 0.
std::optional<int> complex_failure(const AddCategory& cat, const Exangle& x);
/// (d_0)_*δ = 0 and (d_n)^*δ = 0.
bool is_attached(const Bifunctor& e, const Exangle& x);

/// Exactness of both Hom sequences at every generator. Contravariant
/// positions 1..n+1 first, then covariant positions 0..n; within a
/// position, generators in order.
Verdict is_n_exangle(const ExCategory& c, const Exangle& x);

/// Exactness of the two Hom sequences at inner positions 1..n only, with no
/// extension term.
Verdict inner_exactness(const AddCategory& cat, const Exangle& x);

/// n-exangle admitting a morphism with identity ends to the chosen
/// realization of its extension.
Verdict is_distinguished(const ExCategory& c, const Exangle& x);

/// Affine family of chain maps (f_0, f_1, …, f_n, f_{n+1}) with prescribed
/// ends: f = particular, plus any combination of the kernel directions
/// (each lists f_1..f_n).
struct Lift {
  std::vector<Mor> f;
  std::vector<std::vector<Mor>> kernel;
};
std::optional<Lift> chain_maps(const AddCategory& cat, const Exangle& x, const Exangle& y, const Mor& a,
                               const Mor& c);
/// Lift of (a, c); throws on a violated precondition or when none exists.
Lift lift_morphism(const ExCategory& c, const Exangle& x, const Exangle& y, const Mor& a, const Mor& cc);
/// Points of the affine family, at most cap of them, in a fixed order.
std::vector<std::vector<Mor>> lift_points(const AddCategory& cat, const Lift& l, std::size_t cap);
bool squares_commute(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f);

/// Mapping cone of f with f_0 = id; the extension is left empty.
Exangle mapping_cone(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f);
/// Mapping cocone of f with f_{n+1} = id; the extension is left empty.
Exangle mapping_cocone(const AddCategory& cat, const Exangle& x, const Exangle& y, const std::vector<Mor>& f);

/// Removes contractible summands between inner positions and zero objects
/// from inner terms. The result is homotopy equivalent with identity ends.
Exangle minimize(const AddCategory& cat, Exangle x);

/// Direct sum of two exangles, with the end summands ordered as a and c.
Exangle direct_sum(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Exangle& y);
/// Reorders the end summands of x to match a and c (same multisets).
Exangle reorder_ends(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Obj& a, const Obj& c);
/// Same, with summand i of X_0 sent to a[front_pos[i]] and summand i of
/// X_{n+1} to c[back_pos[i]].
Exangle reorder_ends(const AddCategory& cat, const Bifunctor& e, const Exangle& x, const Obj& a, const Obj& c,
                     const std::vector<std::size_t>& front_pos, const std::vector<std::size_t>& back_pos);

/// Chain isomorphism with identity ends between two complexes with equal ends,
/// searched in the affine family of chain maps.
std::optional<std::vector<Mor>> chain_isomorphism(const AddCategory& cat, const Exangle& x, const Exangle& y,
                                                  std::size_t cap);

/// Objects whose generator multiplicities sum to at most total (including 0).
std::vector<Obj> objects_up_to(int generators, int total);
/// Objects supported on gens with each multiplicity at most m (including 0).
std::vector<Obj> objects_with_multiplicity(const std::vector<int>& gens, int m);

struct AxiomResult {
  explicit AxiomResult(std::string n = {}) : name(std::move(n)) {}
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  std::optional<Witness> witness;
};

std::vector<AxiomResult> check_core_axioms(const ExCategory& c);

std::string describe(const AddCategory& cat, const Exangle& x);

}  // namespace exangulate::ex
