#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "exangulate/exangulated.hpp"
#include "exangulate/quiverrep.hpp"

namespace exangulate::ex {

using rep::Algebra;
using rep::ModMorphism;
using rep::Module;

/// Indecomposable projectives followed by the injectives not already listed.
std::vector<Module> projective_injective_generators(const Algebra& a, std::uint64_t seed = 0x5eed);

/// "top/…/socle" for uniserial modules, "" otherwise.
std::string radical_label(const Algebra& a, const Module& m, const std::vector<std::string>& vertex_names);

/// The additive subcategory add(generators) of mod Λ with E = Ext^n,
/// presented as an AddCategory plus a Bifunctor on generator data.
class ModuleCategory {
 public:
  ModuleCategory(std::shared_ptr<const Algebra> a, int n, std::vector<Module> gens, std::vector<std::string> names);

  const Algebra& algebra() const { return *alg_; }
  int n() const { return n_; }
  const std::vector<Module>& generators() const { return gens_; }
  std::shared_ptr<const AddCategory> category() const { return cat_; }
  std::shared_ptr<const Bifunctor> ext() const { return ext_; }
  const std::vector<ModMorphism>& hom_basis(int g, int h) const { return homs_[g][h]; }
  const rep::ExtGroup& ext_group(int c, int a) const { return exts_[c][a]; }

  /// Module of a direct sum of generators with its structure maps.
  rep::DirectSum object(const Obj& x) const;
  ModMorphism to_module(const Mor& f) const;
  Mor from_module(const Obj& x, const Obj& y, const ModMorphism& f) const;

  /// Cocycle P_n(C) -> A of δ for the direct-sum resolution of C.
  ModMorphism cocycle(const Obj& c, const Obj& a, const Vec& delta) const;
  rep::Resolution resolution(const Obj& c) const;
  /// Yoneda class of a module-exact sequence with ends object(a), object(c).
  Vec yoneda(const Obj& c, const Obj& a, const rep::ModSequence& s) const;
  rep::ModSequence to_sequence(const Exangle& x) const;

  /// Minimal left add(generators)-approximation of m: target object and map.
  std::pair<Obj, ModMorphism> left_approximation(const Module& m) const;
  /// Decomposition of m into generators, with an isomorphism m -> object.
  std::optional<std::pair<Obj, ModMorphism>> identify(const Module& m) const;

  /// Problems that keep add(generators) from being n-cluster-tilting-like:
  /// non-indecomposable or repeated generators, Ext^i ≠ 0 for 0 < i < n,
  /// projectives or injectives outside add(generators).
  std::vector<std::string> validate(std::uint64_t seed = 0x5eed) const;

 private:
  std::shared_ptr<const Algebra> alg_;
  int n_;
  std::vector<Module> gens_;
  std::vector<std::vector<std::vector<ModMorphism>>> homs_;
  std::vector<std::vector<std::size_t>> flat_;
  std::vector<rep::Resolution> res_;
  std::vector<std::vector<rep::ExtGroup>> exts_;
  std::shared_ptr<const AddCategory> cat_;
  std::shared_ptr<const Bifunctor> ext_;
};

/// Splice the cocycle, then replace middle terms by minimal left
/// approximations and push out, left to right.
class ClusterTiltingRealizer : public Realizer {
 public:
  explicit ClusterTiltingRealizer(std::shared_ptr<const ModuleCategory> mc) : mc_(std::move(mc)) {}
  Exangle realize(const Obj& c, const Obj& a, const Vec& delta) const override;

 private:
  std::shared_ptr<const ModuleCategory> mc_;
};

/// Finite table of realizations of basis extensions of generator pairs,
/// extended to scalar multiples and block-diagonal sums.
class DeclaredRealizer : public Realizer {
 public:
  using Key = std::tuple<int, int, std::size_t>;  // (C, A, basis index)
  DeclaredRealizer(std::shared_ptr<const Bifunctor> e, int n, std::map<Key, Exangle> table)
      : e_(std::move(e)), n_(n), table_(std::move(table)) {}
  Exangle realize(const Obj& c, const Obj& a, const Vec& delta) const override;

 private:
  std::shared_ptr<const Bifunctor> e_;
  int n_;
  std::map<Key, Exangle> table_;
};

}  // namespace exangulate::ex
