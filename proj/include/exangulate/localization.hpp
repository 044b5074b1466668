#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exangulate/exangulated.hpp"

namespace exangulate::loc {

using alg::Fp;
using alg::Matrix;
using ex::AddCategory;
using ex::AxiomResult;
using ex::Bifunctor;
using ex::Bounds;
using ex::ExCategory;
using ex::Exangle;
using ex::Mor;
using ex::Obj;
using ex::Vec;
using ex::Verdict;
using ex::Witness;

/// C̄ = C/[N]: same objects, Hom modulo maps that factor through add(N).
class IdealQuotient {
 public:
  IdealQuotient(std::shared_ptr<const AddCategory> base, std::vector<int> nf);

  const AddCategory& base() const { return *base_; }
  const AddCategory& cat() const { return *bar_; }
  std::shared_ptr<const AddCategory> cat_ptr() const { return bar_; }
  const std::vector<int>& nf() const { return nf_; }
  bool in_nf(int g) const;

  /// The functor p.
  Mor project(const Mor& f) const;
  /// Section of p on Hom spaces (a linear choice, not a functor).
  Mor lift(const Mor& f) const;
  /// Projects every differential; the extension is left as given.
  Exangle project(const Exangle& x) const;
  /// Basis of [N](g, h) as coordinate columns of Hom_C(g, h).
  const Matrix& ideal(int g, int h) const { return ideal_[g * base_->size() + h]; }
  const alg::Quotient& table(int g, int h) const { return tables_[g * base_->size() + h]; }

 private:
  std::shared_ptr<const AddCategory> base_;
  std::vector<int> nf_;
  std::vector<Matrix> ideal_;
  std::vector<alg::Quotient> tables_;
  std::shared_ptr<const AddCategory> bar_;
};

enum class FMode { Iso, Saturate };

/// F̄ inside C̄, and F = p^{-1}(F̄). In iso mode F̄ is the class of
/// isomorphisms. In saturate mode it is the closure of the seeds and the
/// isomorphisms under composition and direct sums, computed over the
/// universe; 2-out-of-3 is left to the MR1 check.
class MorphismClass {
 public:
  MorphismClass(std::shared_ptr<const IdealQuotient> q, FMode mode, std::vector<Mor> seeds, std::vector<Obj> universe,
                std::size_t cap);

  FMode mode() const { return mode_; }
  const IdealQuotient& quotient() const { return *q_; }
  const std::vector<Obj>& universe() const { return universe_; }
  /// Seeds projected to C̄.
  const std::vector<Mor>& seeds() const { return seeds_; }

  bool contains(const Mor& f) const;
  bool contains_base(const Mor& f) const { return contains(q_->project(f)); }
  /// Members of F̄(x, y), enumerated in coordinate order (at most cap).
  const std::vector<Mor>& members(const Obj& x, const Obj& y) const;
  /// Members of F(x, y) in C, enumerated in coordinate order (at most cap).
  const std::vector<Mor>& base_members(const Obj& x, const Obj& y) const;
  /// Number of members of the saturated class (saturate mode only).
  std::size_t closure_size() const { return closure_.size(); }
  bool truncated() const { return truncated_; }

 private:
  std::shared_ptr<const IdealQuotient> q_;
  FMode mode_;
  std::vector<Mor> seeds_;
  std::vector<Obj> universe_;
  std::size_t cap_;
  std::set<std::tuple<Obj, Obj, Vec>> closure_;
  mutable std::map<std::tuple<Obj, Obj, Vec>, bool> iso_cache_;
  mutable std::map<std::pair<Obj, Obj>, std::vector<Mor>> members_, base_members_;
  mutable bool truncated_ = false;
};

/// Objects of the default search universe: total multiplicity at most
/// `total`, plus every generator and the empty object with each subset of N
/// added.
std::vector<Obj> search_universe(int generators, int total, const std::vector<int>& nf);

/// K ⊆ E and Ē = E/K on generator pairs, with ℘ and its section.
class ExtQuotient {
 public:
  /// Throws std::runtime_error when the two descriptions of K differ or K is
  /// not a subgroup.
  ExtQuotient(std::shared_ptr<const ExCategory> base, std::shared_ptr<const MorphismClass> f);

  const ExCategory& base() const { return *base_; }
  const IdealQuotient& quotient() const { return f_->quotient(); }
  const MorphismClass& fclass() const { return *f_; }
  std::shared_ptr<const Bifunctor> ebar() const { return ebar_; }

  /// Elements of E(c, a) killed by some s_* with s ∈ F.
  const std::vector<Vec>& k_elements(int c, int a) const { return k_[c * g_ + a]; }
  /// Elements killed by some t^* with t ∈ F.
  const std::vector<Vec>& k_elements_dual(int c, int a) const { return kd_[c * g_ + a]; }
  const Matrix& k_basis(int c, int a) const { return kb_[c * g_ + a]; }
  const alg::Quotient& table(int c, int a) const { return tables_[c * g_ + a]; }

  /// ℘ on arbitrary objects (blockwise) and a section of it.
  Vec project(const Obj& c, const Obj& a, const Vec& delta) const;
  Vec lift(const Obj& c, const Obj& a, const Vec& dbar) const;

  /// Failures of push/pull to descend to Ē (empty when Ē is a bifunctor on C̄).
  const std::vector<std::string>& descent_problems() const { return problems_; }

 private:
  std::shared_ptr<const ExCategory> base_;
  std::shared_ptr<const MorphismClass> f_;
  int g_;
  std::vector<std::vector<Vec>> k_, kd_;
  std::vector<Matrix> kb_;
  std::vector<alg::Quotient> tables_;
  std::shared_ptr<const Bifunctor> ebar_;
  std::vector<std::string> problems_;
};

/// s̄: lift δ̄ through the section, realize in C, project.
class QuotientRealizer : public ex::Realizer {
 public:
  explicit QuotientRealizer(std::shared_ptr<const ExtQuotient> e) : e_(std::move(e)) {}
  Exangle realize(const Obj& c, const Obj& a, const Vec& dbar) const override;

 private:
  std::shared_ptr<const ExtQuotient> e_;
};

/// (t \ δ̄ / s) with t : Z -> C and s : A -> X in F̄ and δ̄ ∈ Ē(Z, X).
struct Roof {
  Mor t;
  Vec delta;
  Mor s;
  const Obj& z() const { return t.src; }
  const Obj& c() const { return t.dst; }
  const Obj& a() const { return s.src; }
  const Obj& x() const { return s.dst; }
};

/// Two deterministic ways of choosing Ore completions and common denominators.
enum class Completion { Primary, Alternate };

class RoofCalculus {
 public:
  explicit RoofCalculus(std::shared_ptr<const ExtQuotient> e) : e_(std::move(e)) {}

  const ExtQuotient& ext() const { return *e_; }
  const AddCategory& cat() const { return e_->quotient().cat(); }

  struct Common {
    Mor t, s;
    std::vector<Vec> rho;
  };
  /// Throws std::runtime_error "Ore completion not found within bound".
  Common common_denominator(const std::vector<Roof>& roofs, Completion how = Completion::Primary) const;

  bool equal(const Roof& r1, const Roof& r2, Completion how = Completion::Primary) const;
  Roof add(const Roof& r1, const Roof& r2, Completion how = Completion::Primary) const;
  Roof neg(const Roof& r) const;
  Roof zero(const Obj& c, const Obj& a) const;
  /// μ̄(δ̄) = (id \ δ̄ / id).
  Roof mu(const Obj& c, const Obj& a, const Vec& dbar) const;
  /// (t∘v \ v^* u_* δ̄ / u∘s) for u : X -> X', v : Z' -> Z in F̄.
  Roof rewrite(const Roof& r, const Mor& u, const Mor& v) const;

  /// α_* r for α = Q̄(u)^{-1} Q̄(a), a : A -> A'', u : A' -> A'' in F̄.
  Roof push(const Roof& r, const Mor& a, const Mor& u, Completion how = Completion::Primary) const;
  /// γ^* r for γ = Q̄(c) Q̄(v)^{-1}, c : C'' -> C, v : C'' -> C' in F̄.
  Roof pull(const Roof& r, const Mor& c, const Mor& v, Completion how = Completion::Primary) const;

  /// Given s : A -> X in F̄ and a : A -> B, some (s' : B -> X' in F̄, a' : X -> X')
  /// with a'∘s = s'∘a.
  std::optional<std::pair<Mor, Mor>> ore_right(const Mor& s, const Mor& a, Completion how) const;
  /// Given t : Z -> C in F̄ and c : C'' -> C, some (t' : Z' -> C'' in F̄, c' : Z' -> Z)
  /// with t∘c' = c∘t'.
  std::optional<std::pair<Mor, Mor>> ore_left(const Mor& t, const Mor& c, Completion how) const;

  /// [A -> X_1 -> … -> X_n -> C] with end maps x_0∘s and t∘x_n, in C̄. The
  /// extension field is left empty.
  Exangle s_tilde(const Roof& r) const;

 private:
  std::shared_ptr<const ExtQuotient> e_;
};

/// Ẽ(C, A) materialized over the universe: roofs, their classes, and μ̄.
struct EtildeGroup {
  Obj c, a;
  std::vector<Roof> roofs;
  std::vector<std::size_t> class_of;  // per roof
  std::vector<std::size_t> reps;      // a roof index per class
  std::vector<std::size_t> mu;        // class of μ̄(δ̄) for each δ̄ in enumeration order
  bool truncated = false;
  std::size_t classes() const { return reps.size(); }
};
EtildeGroup etilde_group(const RoofCalculus& rc, const Obj& c, const Obj& a, std::size_t cap);

/// Hom in the localization at a fixed test object T, as a colimit over F̄:
/// right fractions f∘s^{-1} for Hom(T, -) and left fractions t^{-1}∘f for
/// Hom(-, T).
class LocalHom {
 public:
  LocalHom(std::shared_ptr<const MorphismClass> f, int t, bool covariant);

  std::size_t dim(const Obj& y) const { return space(y).q.dim(); }
  /// Induced map for g : Y -> Y'. Contravariant side: Hom(T, Y) -> Hom(T, Y');
  /// covariant side: Hom(Y', T) -> Hom(Y, T).
  Matrix induced(const Mor& g) const;

 private:
  struct Space {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    alg::Quotient q;
  };
  const Space& space(const Obj& y) const;

  std::shared_ptr<const MorphismClass> f_;
  int t_;
  bool co_;
  std::vector<Mor> index_;
  mutable std::map<Obj, Space> spaces_;
};

struct WeakKcRecord {
  std::string label;
  Exangle exangle;  // in C
  Verdict verdict;
};

struct EtildeRecord {
  int c, a;
  std::size_t e_dim, k_dim, ebar_dim, roofs, classes;
  bool mu_bijective;
  bool truncated;
};

struct LocalizationReport {
  std::vector<AxiomResult> mr;  // M0, MR1, MR2, MR3
  bool mr_ok = false;
  std::string error;            // set when construction aborted

  std::vector<EtildeRecord> groups;
  std::vector<std::string> descent_problems;

  AxiomResult weak_kc{"weak-kc"};
  std::vector<WeakKcRecord> weak_kc_failures;  // first few failures, in check order

  bool localized_checked = false;
  std::vector<AxiomResult> localized;  // C1 … WIC on the localization (iso mode)

  struct Check {
    bool checked = false;
    bool ok = false;
    std::vector<std::string> problems;
  };
  Check equivalence;    // (C̄, Ē, s̄) ≃ (C̃, Ẽ, s̃), iso mode
  Check exact_functor;  // (Q, μ)

  std::string verdict;  // "2-exangulated", "weakly 2-exangulated" (with the actual n), "fails weak-kc", "MR precondition failed"
  int exit_code = 1;
};

class Localization {
 public:
  /// Named distinguished exangles in C to test first (their failures lead the
  /// weak-kc witness list).
  Localization(std::shared_ptr<const ExCategory> base, std::vector<int> nf, FMode mode, std::vector<Mor> seeds,
               std::vector<std::pair<std::string, Exangle>> named = {});

  const ExCategory& base() const { return *base_; }
  std::shared_ptr<const IdealQuotient> quotient() const { return q_; }
  std::shared_ptr<const MorphismClass> fclass() const { return f_; }
  /// Built on first use; throws when K is ill-defined.
  std::shared_ptr<const ExtQuotient> ext() const;
  std::shared_ptr<const RoofCalculus> roofs() const;
  /// (C̄, Ē, s̄).
  std::shared_ptr<const ExCategory> quotient_category() const;

  std::vector<AxiomResult> check_mr() const;
  /// Inner exactness in the localization of the image of x (x in C).
  Verdict weak_kc(const Exangle& x) const;
  const LocalHom& local_hom(int t, bool covariant) const;

  LocalizationReport report() const;

 private:
  Verdict colimit_exactness(const Exangle& xbar) const;

  std::shared_ptr<const ExCategory> base_;
  std::shared_ptr<const IdealQuotient> q_;
  std::shared_ptr<const MorphismClass> f_;
  std::vector<std::pair<std::string, Exangle>> named_;
  mutable std::shared_ptr<const ExtQuotient> e_;
  mutable std::shared_ptr<const RoofCalculus> rc_;
  mutable std::shared_ptr<const ExCategory> cbar_;
  mutable std::map<std::pair<int, bool>, std::unique_ptr<LocalHom>> homs_;
};

}  // namespace exangulate::loc
