#include <random>

#include "a4.hpp"
#include "doctest.h"
#include "exangulate/localization.hpp"

using namespace exangulate;
using namespace exangulate::ex;
using namespace exangulate::loc;
using testdata::gen;

namespace {

std::shared_ptr<ExCategory> base(Fp p = 2) {
  static std::map<Fp, std::shared_ptr<ExCategory>> cache;
  auto& slot = cache[p];
  if (!slot) slot = testdata::a4_excategory(p, Bounds{2, p == 2 ? 2 : 1, 4096});
  return slot;
}

int g(const char* name) { return gen(base()->cat(), name); }

Exangle corrected() {
  Exangle x;
  x.terms = {{g("4")}, {g("2/3/4")}, {g("1/2/3")}, {g("1")}};
  for (int i = 0; i < 3; ++i) x.d.push_back(Mor{x.terms[i], x.terms[i + 1], {1}});
  x.delta = {1};
  return x;
}

const Localization& cluster(Fp p = 2) {
  static std::map<Fp, std::unique_ptr<Localization>> cache;
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<Localization>(base(p), std::vector<int>{g("2/3/4")}, FMode::Iso,
                                                   std::vector<Mor>{},
                                                   std::vector<std::pair<std::string, Exangle>>{{"corrected", corrected()}});
  return *slot;
}

const Localization& projinj() {
  static Localization l(base(), {g("1/2/3"), g("2/3/4")}, FMode::Iso, {});
  return l;
}

// All roofs over generator pairs with nonzero Ē.
std::vector<EtildeGroup> groups(const Localization& l) {
  std::vector<EtildeGroup> out;
  const auto& rc = *l.roofs();
  for (int c = 0; c < 6; ++c)
    for (int a = 0; a < 6; ++a)
      if (l.ext()->ebar()->dim(c, a) > 0) out.push_back(etilde_group(rc, {c}, {a}, 4096));
  return out;
}

bool both_ways(const AddCategory& cat, const Exangle& x, const Exangle& y) {
  return chain_maps(cat, x, y, cat.identity(x.front()), cat.identity(x.back())) &&
         chain_maps(cat, y, x, cat.identity(y.front()), cat.identity(y.back()));
}

std::vector<std::vector<int>> small_subsets() {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 64; ++mask)
    if (__builtin_popcount(mask) <= 3) {
      std::vector<int> s;
      for (int i = 0; i < 6; ++i)
        if (mask >> i & 1) s.push_back(i);
      out.push_back(s);
    }
  return out;
}

// The N for which MR holds in iso mode; elsewhere MR3 fails and K is not defined.
std::vector<std::vector<int>> admissible() {
  std::vector<std::vector<int>> out;
  for (const auto& extra : std::vector<std::vector<const char*>>{{}, {"4", "3/4", "1/2", "1"}})
    for (int mask = 0; mask < 4; ++mask) {
      std::vector<int> s;
      for (const char* n : extra) s.push_back(g(n));
      if (mask & 1) s.push_back(g("2/3/4"));
      if (mask & 2) s.push_back(g("1/2/3"));
      out.push_back(s);
    }
  return out;
}

}  // namespace

TEST_SUITE("ideal quotient") {
  TEST_CASE("Hom table modulo add(2/3/4)") {
    IdealQuotient q(base()->E().category_ptr(), {g("2/3/4")});
    const std::vector<std::vector<std::size_t>> want = {
        {1, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
        {0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 1}};
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) CHECK(q.cat().hom_dim(a, b) == want[a][b]);
    CHECK(q.cat().is_zero_object(g("2/3/4")));
  }

  TEST_CASE("empty N leaves Hom unchanged") {
    IdealQuotient q(base()->E().category_ptr(), {});
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) CHECK(q.cat().hom_dim(a, b) == base()->cat().hom_dim(a, b));
  }

  TEST_CASE("unknown generator is rejected") {
    CHECK_THROWS_AS(IdealQuotient(base()->E().category_ptr(), {7}), std::invalid_argument);
  }

  TEST_CASE("p is a functor (property, 300 cases)") {
    std::mt19937 rng(7);
    const auto& c = base()->cat();
    const auto objs = objects_up_to(6, 2);
    int cases = 0;
    for (const auto& nf : small_subsets()) {
      IdealQuotient q(base()->E().category_ptr(), nf);
      for (int k = 0; k < 8; ++k) {
        const Obj &x = objs[rng() % objs.size()], &y = objs[rng() % objs.size()], &z = objs[rng() % objs.size()];
        Mor f = c.zero(x, y), h = c.zero(y, z);
        for (auto& v : f.c) v = rng() % 2;
        for (auto& v : h.c) v = rng() % 2;
        CHECK(q.project(c.compose(h, f)).c == q.cat().compose(q.project(h), q.project(f)).c);
        CHECK(q.project(c.identity(x)).c == q.cat().identity(x).c);
        CHECK(q.project(q.lift(q.project(f))).c == q.project(f).c);
        ++cases;
      }
    }
    CHECK(cases >= 200);
  }
}

TEST_SUITE("morphism class") {
  TEST_CASE("iso mode membership") {
    const auto& f = *cluster().fclass();
    const auto& cb = cluster().quotient()->cat();
    CHECK(f.contains(cb.identity({g("1")})));
    // 2/3/4 is zero in the quotient, so 0 -> 2/3/4 is invertible there
    CHECK(f.contains(cb.zero({}, {g("2/3/4")})));
    CHECK(f.contains(cb.zero({g("2/3/4"), g("2/3/4")}, {})));
    CHECK_FALSE(f.contains(cb.zero({}, {g("1")})));
    CHECK(f.members({g("1/2")}, {g("1/2")}).size() == 1);
  }

  TEST_CASE("universe adds N summands") {
    auto u = search_universe(6, 2, {2});
    CHECK(std::find(u.begin(), u.end(), Obj{2}) != u.end());
    CHECK(std::find(u.begin(), u.end(), Obj{2, 5}) != u.end());
    CHECK(std::find(u.begin(), u.end(), Obj{}) != u.end());
    CHECK(u.size() == objects_up_to(6, 2).size());
  }

  TEST_CASE("saturate closure contains seeds, isomorphisms, composites and sums") {
    const auto& c = base()->cat();
    Mor s1{{g("3/4")}, {g("2/3/4")}, {1}}, s2{{g("4")}, {g("3/4")}, {1}};
    Localization l(base(), {}, FMode::Saturate, {s1, s2});
    const auto& f = *l.fclass();
    CHECK(f.contains(s1));
    CHECK(f.contains(s2));
    CHECK(f.contains(c.compose(s1, s2)));
    CHECK(f.contains(c.diag(s1, s2)));
    CHECK(f.contains(c.identity({g("1"), g("1")})));
    CHECK_FALSE(f.contains(Mor{{g("1/2")}, {g("1")}, {1}}));
  }
}

TEST_SUITE("localization at add(2/3/4)") {
  TEST_CASE("MR conditions hold for isomorphisms") {
    for (const auto& r : cluster().check_mr()) {
      INFO(r.name);
      CHECK(r.ok);
      CHECK(r.checked > 0);
    }
  }

  TEST_CASE("K is zero and Ē keeps the three extensions") {
    const auto& e = *cluster().ext();
    for (int c = 0; c < 6; ++c)
      for (int a = 0; a < 6; ++a) {
        CHECK(e.k_basis(c, a).cols() == 0);
        CHECK(e.ebar()->dim(c, a) == base()->E().dim(c, a));
      }
    CHECK(e.descent_problems().empty());
  }

  TEST_CASE("report: fails weak-kc on the corrected sequence") {
    auto r = cluster().report();
    CHECK(r.error.empty());
    CHECK(r.mr_ok);
    CHECK(r.exit_code == 20);
    CHECK(r.verdict == "fails weak-kc");
    REQUIRE(r.weak_kc.witness);
    CHECK(r.weak_kc.witness->side == "covariant");
    CHECK(r.weak_kc.witness->position == 2);
    CHECK(base()->cat().name(r.weak_kc.witness->test_object) == "1/2/3");
    REQUIRE_FALSE(r.weak_kc_failures.empty());
    CHECK(r.weak_kc_failures.front().label == "corrected");
    CHECK(r.equivalence.ok);
    CHECK(r.exact_functor.ok);
    for (const auto& grp : r.groups) CHECK(grp.mu_bijective);
  }

  TEST_CASE("witness reproduces on the quotient") {
    Exangle xbar = cluster().quotient()->project(corrected());
    Verdict v = inner_exactness(cluster().quotient()->cat(), xbar);
    REQUIRE_FALSE(v.ok);
    CHECK(v.witness->side == "covariant");
    CHECK(v.witness->position == 2);
  }

  TEST_CASE("localized Hom agrees with the quotient") {
    const auto& cb = cluster().quotient()->cat();
    for (int t = 0; t < 6; ++t)
      for (int y = 0; y < 6; ++y) {
        CHECK(cluster().local_hom(t, false).dim({y}) == cb.hom_dim(t, y));
        CHECK(cluster().local_hom(t, true).dim({y}) == cb.hom_dim(y, t));
      }
  }
}

TEST_SUITE("localization at isomorphisms") {
  TEST_CASE("n-exangulated and equivalent to the quotient") {
    Localization l(base(), {}, FMode::Iso, {}, {{"corrected", corrected()}});
    auto r = l.report();
    CHECK(r.exit_code == 0);
    CHECK(r.verdict == "2-exangulated");
    CHECK(r.weak_kc.ok);
    CHECK(r.localized_checked);
    for (const auto& a : r.localized) {
      INFO(a.name);
      CHECK(a.ok);
    }
    CHECK(r.equivalence.checked);
    CHECK(r.equivalence.ok);
    CHECK(r.exact_functor.ok);
    for (const auto& grp : r.groups) {
      CHECK(grp.mu_bijective);
      CHECK(grp.classes == std::size_t{1} << grp.ebar_dim);
    }
  }
}

TEST_SUITE("projective-injective localization") {
  TEST_CASE("verdict") {
    auto r = projinj().report();
    CHECK(r.exit_code == 20);
    REQUIRE(r.weak_kc.witness);
    CHECK(r.weak_kc.witness->side == "contravariant");
    CHECK(r.weak_kc.witness->position == 1);
    CHECK(base()->cat().name(r.weak_kc.witness->test_object) == "3/4");
  }
}

TEST_SUITE("saturate negative control") {
  TEST_CASE("MR1 fails and the report stops") {
    Mor s1{{g("3/4")}, {g("2/3/4")}, {1}}, s2{{g("4")}, {g("2/3/4")}, {1}};
    Localization l(base(), {}, FMode::Saturate, {s1, s2});
    auto r = l.report();
    CHECK(r.exit_code == 30);
    CHECK_FALSE(r.mr_ok);
    REQUIRE(r.mr.size() == 4);
    CHECK(r.mr[0].ok);
    CHECK_FALSE(r.mr[1].ok);
    REQUIRE(r.mr[1].witness);
    CHECK(r.mr[1].witness->detail.find("4 -> 3/4 [1] (not in F̄)") != std::string::npos);
    CHECK(r.groups.empty());
  }
}

TEST_SUITE("roof calculus properties") {
  TEST_CASE("roof_equal is an equivalence relation (300 cases)") {
    std::mt19937 rng(11);
    int cases = 0;
    for (const Localization* l : {&cluster(), &projinj()}) {
      const auto& rc = *l->roofs();
      for (const auto& grp : groups(*l)) {
        const auto& rs = grp.roofs;
        for (int k = 0; k < 50; ++k) {
          const Roof &a = rs[rng() % rs.size()], &b = rs[rng() % rs.size()], &c = rs[rng() % rs.size()];
          CHECK(rc.equal(a, a));
          CHECK(rc.equal(a, b) == rc.equal(b, a));
          if (rc.equal(a, b) && rc.equal(b, c)) CHECK(rc.equal(a, c));
          CHECK(rc.equal(a, b, Completion::Primary) == rc.equal(a, b, Completion::Alternate));
          ++cases;
        }
      }
    }
    CHECK(cases >= 200);
  }

  TEST_CASE("roof_add does not depend on the common denominator (300 cases)") {
    std::mt19937 rng(12);
    int cases = 0;
    for (const Localization* l : {&cluster(), &projinj()}) {
      const auto& rc = *l->roofs();
      const auto& f = *l->fclass();
      for (const auto& grp : groups(*l)) {
        const auto& rs = grp.roofs;
        for (int k = 0; k < 50; ++k) {
          const Roof &a = rs[rng() % rs.size()], &b = rs[rng() % rs.size()];
          Roof sum = rc.add(a, b, Completion::Primary);
          CHECK(rc.equal(sum, rc.add(a, b, Completion::Alternate)));
          CHECK(rc.equal(sum, rc.add(b, a)));
          // rewrite a through a random member of F̄ leaving its apex
          std::vector<Mor> us, vs;
          for (const Obj& o : f.universe()) {
            for (const Mor& u : f.members(a.x(), o)) us.push_back(u);
            for (const Mor& v : f.members(o, a.z())) vs.push_back(v);
          }
          Roof a2 = rc.rewrite(a, us[rng() % us.size()], vs[rng() % vs.size()]);
          CHECK(rc.equal(a, a2));
          CHECK(rc.equal(sum, rc.add(a2, b)));
          CHECK(rc.equal(rc.add(a, rc.neg(a)), rc.zero(a.c(), a.a())));
          ++cases;
        }
      }
    }
    CHECK(cases >= 200);
  }

  TEST_CASE("s̃ is well defined on classes (240 cases)") {
    std::mt19937 rng(13);
    int cases = 0;
    for (const Localization* l : {&cluster(), &projinj()}) {
      const auto& rc = *l->roofs();
      const auto& cb = l->quotient()->cat();
      for (const auto& grp : groups(*l)) {
        for (int k = 0; k < 40; ++k) {
          std::size_t i = rng() % grp.roofs.size(), j = rng() % grp.roofs.size();
          if (grp.class_of[i] != grp.class_of[j]) {
            // pick a partner in the same class
            for (std::size_t m = 0; m < grp.roofs.size(); ++m)
              if (grp.class_of[m] == grp.class_of[i] && (m != i || grp.roofs.size() == 1)) {
                j = m;
                if (rng() % 2) break;
              }
          }
          REQUIRE(grp.class_of[i] == grp.class_of[j]);
          Exangle x = rc.s_tilde(grp.roofs[i]), y = rc.s_tilde(grp.roofs[j]);
          CHECK(both_ways(cb, x, y));
          ++cases;
        }
      }
    }
    CHECK(cases >= 200);
  }
}

TEST_SUITE("extension quotient properties") {
  TEST_CASE("both descriptions of K agree on every generator pair") {
    int cases = 0;
    for (Fp p : {Fp{2}, Fp{3}})
      for (const auto& nf : admissible()) {
        Localization l(base(p), nf, FMode::Iso, {});
        const auto& e = *l.ext();
        for (int c = 0; c < 6; ++c)
          for (int a = 0; a < 6; ++a) {
            CHECK(e.k_elements(c, a) == e.k_elements_dual(c, a));
            ++cases;
          }
      }
    CHECK(cases >= 200);
  }

  TEST_CASE("Ē vanishes on N (property, 400 cases)") {
    std::mt19937 rng(14);
    const auto objs = objects_up_to(6, 2);
    int cases = 0;
    for (Fp p : {Fp{2}, Fp{3}})
      for (const auto& nf : admissible()) {
        if (nf.empty()) continue;
        Localization l(base(p), nf, FMode::Iso, {});
        const auto& e = *l.ext();
        const auto& eb = *e.ebar();
        for (int k = 0; k < 30; ++k) {
          Obj x = objs[rng() % objs.size()], y = objs[rng() % objs.size()];
          x.push_back(nf[rng() % nf.size()]);
          CHECK(eb.dim({x.back()}, y) == 0);
          CHECK(eb.dim(y, {x.back()}) == 0);
          const Obj x0(x.begin(), x.end() - 1);
          CHECK(eb.dim(x, y) == eb.dim(x0, y));
          CHECK(eb.dim(y, x) == eb.dim(y, x0));
          ++cases;
        }
        CHECK(e.descent_problems().empty());
      }
    CHECK(cases >= 200);
  }

  TEST_CASE("MR3 fails for add(4) and K is then ill-defined") {
    Localization l(base(), {g("4")}, FMode::Iso, {});
    auto r = l.report();
    CHECK(r.exit_code == 30);
    REQUIRE(r.mr.size() == 4);
    CHECK_FALSE(r.mr[3].ok);
    CHECK_THROWS_WITH_AS(l.ext(), "characterizations disagree for K(1/2, 4)", std::runtime_error);
  }

  TEST_CASE("μ̄ is injective (pairs of classes)") {
    int cases = 0;
    for (Fp p : {Fp{2}, Fp{3}})
      for (const auto& nf : admissible()) {
        Localization l(base(p), nf, FMode::Iso, {});
        const auto& rc = *l.roofs();
        const auto& eb = *l.ext()->ebar();
        for (int c = 0; c < 6; ++c)
          for (int a = 0; a < 6; ++a) {
            if (eb.dim(c, a) == 0) continue;
            const auto ds = enumerate_space(eb.dim(c, a), p, 4096);
            for (const Vec& d1 : ds)
              for (const Vec& d2 : ds) {
                CHECK(rc.equal(rc.mu({c}, {a}, d1), rc.mu({c}, {a}, d2)) == (d1 == d2));
                ++cases;
              }
          }
      }
    // larger ends: random pairs in Ē(C, A) for C, A of total multiplicity 2
    std::mt19937 rng(15);
    const auto objs = objects_up_to(6, 2);
    for (const auto& nf : admissible()) {
      Localization l(base(), nf, FMode::Iso, {});
      const auto& rc = *l.roofs();
      const auto& eb = *l.ext()->ebar();
      for (int k = 0; k < 400 && cases < 600; ++k) {
        const Obj &c = objs[rng() % objs.size()], &a = objs[rng() % objs.size()];
        if (eb.dim(c, a) == 0) continue;
        Vec d1(eb.dim(c, a)), d2(eb.dim(c, a));
        for (auto& v : d1) v = rng() % 2;
        d2 = rng() % 2 ? d1 : d2;
        for (auto& v : d2) v = rng() % 4 == 0 ? 1 - v : v;
        CHECK(rc.equal(rc.mu(c, a, d1), rc.mu(c, a, d2)) == (d1 == d2));
        ++cases;
      }
    }
    CHECK(cases >= 200);
  }
}
