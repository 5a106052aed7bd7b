#include <gtest/gtest.h>

#include "oracles.hpp"
#include "slopekit/families.hpp"

using namespace slopekit;

namespace {

Multidegree md(int x, int y, int z) { return {Rational(x), Rational(y), Rational(z)}; }

}  // namespace

TEST(TripleProduct, Examples) {
  EXPECT_EQ(triple_product(md(3, 3, 1), md(3, 3, 1), md(3, 3, 3)), Rational(90));
  EXPECT_EQ(triple_product(md(1, 0, 0), md(0, 1, 0), md(0, 0, 1)), Rational(1));
  EXPECT_EQ(triple_product(md(1, 0, 0), md(1, 0, 0), md(1, 1, 1)), Rational(0));
}

TEST(TripleProduct, MatchesTruncatedRing) {
  oracle::Gen gen(21);
  for (int i = 0; i < 1000; ++i) {
    Multidegree x, y, z;
    for (auto* v : {&x, &y, &z})
      for (auto& c : *v) c = gen.rational(6, 3);
    ASSERT_EQ(triple_product(x, y, z), oracle::triple(x, y, z));
    ASSERT_EQ(triple_product(x, y, z), triple_product(z, x, y));
    ASSERT_EQ(triple_product(x, y, z), triple_product(y, x, z));
  }
}

TEST(Triproduct, ThreeByThreeByThree) {
  const auto r = triproduct_family({3, 3, 3});
  EXPECT_EQ(r.cover.c1_sq(), Rational(72));
  EXPECT_EQ(r.cover.c2(), Rational(18));
  EXPECT_EQ(*r.cover.ksy_sq(), Rational(90));
  EXPECT_EQ(r.kf2, Rational(42));
  EXPECT_EQ(r.chif, Rational(12));
  EXPECT_EQ(r.slope, ratio(7, 2));
  EXPECT_EQ(r.slope, stankova_F(3, 4));
  EXPECT_EQ(r.lambda_sq, Rational(0));
  EXPECT_EQ(r.cover.fiber_genus_g(), 4);
  EXPECT_EQ(r.bundle.c1(), (DivClass{Rational(6), Rational(6)}));
  EXPECT_FALSE(r.derived_extension);
}

TEST(Triproduct, FourByFourByFour) {
  const auto r = triproduct_family({4, 4, 4});
  EXPECT_EQ(r.cover.fiber_genus_g(), 9);
  EXPECT_EQ(r.slope, ratio(40, 9));
}

TEST(Triproduct, SymmetricSlopeEqualsF) {
  for (int n = 3; n <= 12; ++n) {
    const auto r = triproduct_family({n, n, n});
    ASSERT_EQ(r.cover.fiber_genus_g(), (n - 1) * (n - 1));
    ASSERT_EQ(r.slope, stankova_F(n, (n - 1) * (n - 1))) << n;
    ASSERT_EQ(r.lambda_sq, Rational(0));
    ASSERT_TRUE(kf2_decomposition_check(r.cover));
    ASSERT_EQ(chi_f(r.cover), chi0_max(r.cover));
  }
}

TEST(Triproduct, MatchesSurfaceOracle) {
  for (int n1 = 1; n1 <= 6; ++n1)
    for (int n2 = 2; n2 <= 6; ++n2)
      for (int n3 = 3; n3 <= 7; ++n3) {
        if ((n2 - 1) * (n3 - 1) < 2) continue;
        const auto r = triproduct_family({n1, n2, n3});
        const auto o = oracle::surface_in_triple(n1, n2, n3, 0);
        ASSERT_EQ(r.cover.fiber_genus_g(), o.fiber_genus);
        ASSERT_EQ(chi_structure_sheaf(r.cover), o.chi_o_s);
        ASSERT_EQ(r.kf2, o.kf2);
        ASSERT_EQ(r.chif, o.chif);
        ASSERT_EQ(r.lambda_sq, o.lambda_sq);
        ASSERT_EQ(r.derived_extension, !(n1 == n2 && n2 == n3));
      }
}

TEST(Triproduct, Errors) {
  EXPECT_THROW(triproduct_family({3, 3, 2}), Error);
  EXPECT_THROW(triproduct_family({0, 3, 3}), Error);
  EXPECT_THROW(triproduct_family({3, 1, 3}), Error);  // g = 0
}

TEST(BaseCurve, Examples) {
  const auto r3 = base_curve_family(3, 1);
  EXPECT_EQ(r3.cover.fiber_genus_g(), 4);
  EXPECT_EQ(r3.printed_slope, ratio(9, 2));
  EXPECT_EQ(r3.lambda_sq, Rational(0));
  EXPECT_TRUE(r3.identity_holds);
  EXPECT_EQ(stankova_F(3, 4) + 1, ratio(9, 2));
  EXPECT_EQ(base_curve_family(4, 2).printed_slope, ratio(16, 3));
  EXPECT_THROW(base_curve_family(2, 1), Error);
  EXPECT_THROW(base_curve_family(3, 0), Error);
}

TEST(BaseCurve, IdentityForNUpToTwenty) {
  for (int n = 3; n <= 20; ++n) EXPECT_TRUE(base_curve_identity(n)) << n;
}

TEST(BaseCurve, PipelineMatchesSurfaceOracle) {
  for (int n = 3; n <= 9; ++n)
    for (int b = 1; b <= 4; ++b) {
      const auto r = base_curve_family(n, b);
      const auto o = oracle::surface_in_triple(1, n, n, b);
      ASSERT_EQ(r.cover.fiber_genus_g(), o.fiber_genus);
      ASSERT_EQ(chi_structure_sheaf(r.cover), o.chi_o_s);
      ASSERT_EQ(kf2(r.cover), o.kf2);
      ASSERT_EQ(chi_f(r.cover), o.chif);
      ASSERT_EQ(r.slope, o.kf2 / o.chif);
      ASSERT_EQ(r.lambda_sq, o.lambda_sq);
      // the computed slope is F(n,(n-1)^2); the printed value exceeds it by 4(n-2)/(n-1)^2
      ASSERT_EQ(r.slope, stankova_F(n, (n - 1) * (n - 1)));
      ASSERT_EQ(r.slope_matches_printed, false);
    }
}

TEST(Cyclic, Examples) {
  const SurfaceModel Y = SurfaceModel::p1xp1();
  const auto c2 = cyclic_cover_invariants({2, {Rational(5), Rational(1)}, Y});
  EXPECT_EQ(c2.bundle.c2(), Rational(0));
  EXPECT_EQ(c2.c2_printed, Rational(0));
  EXPECT_THROW(cyclic_cover_invariants({3, {Rational(1), Rational(1)}, Y}), Error);  // g = 1
  const auto r = cyclic_cover_invariants({3, {Rational(2), Rational(1)}, Y});
  EXPECT_EQ(r.cover.fiber_genus_g(), 4);
  EXPECT_EQ(r.bundle.c1(), (DivClass{Rational(6), Rational(3)}));
  EXPECT_EQ(r.cover.c1_sq(), Rational(36));
  EXPECT_EQ(r.bundle.c2(), Rational(8));
  EXPECT_EQ(r.c2_printed, Rational(16));
  EXPECT_FALSE(r.c2_printed_matches);
  EXPECT_EQ(*r.cover.ksy_sq(), Rational(48));
  EXPECT_EQ(slope(r.cover), ratio(24, 7));
  EXPECT_THROW(cyclic_cover_invariants({3, {ratio(1, 2), Rational(1)}, Y}), Error);
}

TEST(Cyclic, GridAttainsHodgeBoundsAndMatchesOracle) {
  int covers = 0;
  for (int n = 2; n <= 6; ++n)
    for (int e = 0; e <= 2; ++e)
      for (int x = -5; x <= 5; ++x)
        for (int y = -5; y <= 5; ++y) {
          const SurfaceModel s(0, e);
          const DivClass A{Rational(x), Rational(y)};
          const Rational genus = Rational(n * (n - 1) / 2) * A.c0_coeff - (n - 1);
          if (genus < 2) {
            EXPECT_THROW(cyclic_cover_invariants({n, A, s}), Error);
            continue;
          }
          const auto r = cyclic_cover_invariants({n, A, s});
          ++covers;
          const auto h = hodge_upper_bounds(r.cover);
          ASSERT_EQ(*r.cover.ksy_sq(), h.ksy_bound);
          ASSERT_EQ(r.lambda_sq, h.lambda_bound);
          ASSERT_TRUE(*h.ok);
          ASSERT_TRUE(check_hodge(r.cover).equality());
          const Rational N(n);
          const Rational c1sq = r.cover.c1_sq();
          ASSERT_EQ(r.lambda_sq, (N - 2) * (N - 2) / (N * (N - 1) * (N - 1)) * c1sq);
          const Rational a_sq = self_intersection(A, s);
          if (a_sq >= 0) {
            ASSERT_GE(r.lambda_sq, 0);
          }
          std::vector<oracle::Line> ls;
          for (int i = 1; i < n; ++i) ls.push_back({i * A.c0_coeff, i * A.fiber_coeff});
          ASSERT_EQ(r.bundle.c2(), oracle::split_c2(ls, e));
          ASSERT_EQ(r.bundle.c2(), N * (N - 1) * (N - 2) * (3 * N - 1) / 24 * a_sq);
          ASSERT_EQ(r.c2_printed_matches, n == 2 || a_sq == 0);
          if (chi_f(r.cover) > 0) {
            ASSERT_EQ(slope(r.cover), primcyc_bound(n, r.cover.fiber_genus_g()).form1);
          }
        }
  EXPECT_GT(covers, 100);
}

TEST(Primcyc, Examples) {
  const auto p = primcyc_bound(2, 3);
  EXPECT_EQ(p.form1, ratio(8, 3));
  EXPECT_EQ(p.form2, Rational(0));
  EXPECT_FALSE(p.agree);
  for (int g = 2; g <= 40; ++g) EXPECT_EQ(primcyc_bound(2, g).form1, Rational(4) - ratio(4, g));
  EXPECT_THROW(primcyc_bound(1, 3), Error);
  EXPECT_THROW(primcyc_bound(3, 1), Error);
}

TEST(Primcyc, GridFlagsDisagreement) {
  int disagree = 0;
  for (int n = 2; n <= 10; ++n)
    for (int g = 2; g <= 60; ++g) {
      const auto p = primcyc_bound(n, g);
      ASSERT_EQ(p.agree, p.form1 == p.form2);
      if (!p.agree) ++disagree;
    }
  EXPECT_GT(disagree, 0);
}

TEST(Falsification, Formulas) {
  const SurfaceModel Y = SurfaceModel::p1xp1();
  for (std::int64_t m = 0; m <= 5; ++m)
    for (std::int64_t b1 = -20; b1 <= 20; b1 += 3)
      for (std::int64_t b2 = -20; b2 <= 20; b2 += 5) {
        const BundleData E = falsification_family(m, b1, b2);
        ASSERT_EQ(E.c1_squared(Y), Rational(2 * (2 * m + 1) * (b1 + b2)));
        ASSERT_EQ(E.c2(), Rational(m * (b1 + b2) + b1));
        ASSERT_EQ(*E.splitting_type(), (SplittingType{m, m + 1}));
      }
  EXPECT_EQ(falsification_family(1, 5, 0).c2(), Rational(10));
  EXPECT_EQ(falsification_family(1, -5, 10).c2(), Rational(0));
}

TEST(Falsification, DiscriminantHasUnitSlopeInB1) {
  const SurfaceModel Y = SurfaceModel::p1xp1();
  for (std::int64_t m = 0; m <= 4; ++m)
    for (std::int64_t total = -10; total <= 10; ++total)
      for (std::int64_t b1 = -50; b1 < 50; ++b1) {
        const Rational d0 = moriwaki_discriminant(Y, falsification_family(m, b1, total - b1));
        const Rational d1 = moriwaki_discriminant(Y, falsification_family(m, b1 + 1, total - b1 - 1));
        ASSERT_EQ(d1 - d0, Rational(1));
      }
}

TEST(Falsify, FindsWitnessBelowTarget) {
  const auto w = falsify_search(Rational(30), Rational(-100), {});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->m, 1);
  EXPECT_EQ(w->b1, -98);
  EXPECT_EQ(w->b2, 103);
  EXPECT_EQ(w->discriminant, ratio(-201, 2));
  EXPECT_EQ(w->bundle.c1_squared(SurfaceModel::p1xp1()), Rational(30));
  EXPECT_LT(w->discriminant, Rational(-100));
  // b1 = -97 is not below the target
  EXPECT_GE(moriwaki_discriminant(SurfaceModel::p1xp1(), falsification_family(1, -97, 102)), Rational(-100));
}

TEST(Falsify, EveryTargetIsReachable) {
  for (std::int64_t target = -150; target <= 0; target += 7) {
    const auto w = falsify_search(Rational(30), Rational(target), {});
    ASSERT_TRUE(w.has_value());
    ASSERT_LT(w->discriminant, Rational(target));
    ASSERT_GE(w->discriminant + 1, Rational(target));
  }
}

TEST(Falsify, NoWitness) {
  EXPECT_FALSE(falsify_search(Rational(31), Rational(-100), {}).has_value());
  EXPECT_FALSE(falsify_search(Rational(30), Rational(-100), {1, 1, -50, 50}).has_value());
  EXPECT_THROW(falsify_search(Rational(30), Rational(-100), {2, 1, 0, 0}), Error);
  const auto w = falsify_search(Rational(30), Rational(-10), {0, 2, -200, 200});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->m, 0);
}

// ---------------------------------------------------------------------------
// Nodal curves

namespace {

struct BruteSegre {
  std::int64_t h, delta;
};

/// Independent scan: smallest h >= 1 passing every constraint, written from
/// the raw formulas.
std::optional<BruteSegre> brute_segre(int n, int e, std::int64_t g) {
  if ((n * e) % 2 != 0) return std::nullopt;
  const std::int64_t ne2 = n * e / 2;
  for (std::int64_t h = 1; h <= 10 * g + 100; ++h) {
    if (h <= ne2) continue;
    const std::int64_t gnh = (n - 1) * (h - 1) - ne2 * (n - 1);
    const std::int64_t dim = gnh + 2 * n + 2 * h - 1 - n * e;
    const std::int64_t delta = gnh - g;
    if (delta < 0 || delta > h + n - 1 - ne2) continue;
    if (delta > gnh || gnh > dim - 2 * delta - 1) continue;
    if (g < gnh - n - h + 1 + ne2 || g > gnh) continue;
    return BruteSegre{h, delta};
  }
  return std::nullopt;
}

}  // namespace

TEST(Segre, Examples) {
  const auto s5 = segre_solve({3, 5, 0});
  EXPECT_EQ(s5.h, 4);
  EXPECT_EQ(s5.delta_nodes, 1);
  EXPECT_EQ(s5.m, 2);
  EXPECT_EQ(s5.k, 1);
  EXPECT_EQ(s5.splitting, (SplittingType{1, 2}));
  EXPECT_FALSE(s5.k_boundary);
  const auto s6 = segre_solve({3, 6, 0});
  EXPECT_EQ(s6.h, 4);
  EXPECT_EQ(s6.delta_nodes, 0);
  EXPECT_TRUE(s6.k_boundary);
  EXPECT_EQ(segre_numbers(3, 0, 4).g_nh, 6);
}

TEST(Segre, Errors) {
  EXPECT_THROW(segre_solve({2, 6, 0}), Error);
  EXPECT_THROW(segre_solve({3, 2, 0}), Error);
  EXPECT_THROW(segre_solve({5, 7, 0}), Error);  // n > g/2 + 1
  try {
    segre_solve({3, 8, 1});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.label(), "odd-ne");
  }
  EXPECT_THROW(segre_numbers(3, 2, 3), Error);  // h <= ne/2
}

TEST(Segre, SolutionsMatchBruteForceAndRecheck) {
  int solved = 0;
  for (int n = 3; n <= 5; ++n)
    for (int e = 0; e <= 2; ++e)
      for (std::int64_t g = 3; g <= 40; ++g) {
        if (2 * (n - 1) > g || (n * e) % 2 != 0) continue;
        const auto s = segre_solve({n, g, e});
        ++solved;
        const auto b = brute_segre(n, e, g);
        ASSERT_TRUE(b.has_value());
        ASSERT_EQ(s.h, b->h);
        ASSERT_EQ(s.delta_nodes, b->delta);
        ASSERT_EQ(s.numbers.g_nh - s.delta_nodes, g);
        ASSERT_TRUE(segre_constraints_hold(n, e, g, s.h, s.delta_nodes));
        ASSERT_EQ(static_cast<std::int64_t>(s.splitting.size()), n - 1);
        std::int64_t sum = 0;
        for (auto v : s.splitting) sum += v;
        ASSERT_EQ(sum, g - (n - 1));
        ASSERT_TRUE(is_balanced(s.splitting));
        ASSERT_EQ(s.k_boundary, g % (n - 1) == 0);
        ASSERT_EQ(s.m * (n - 1) + s.k, g);
      }
  EXPECT_GT(solved, 200);
}

TEST(Segre, H0) {
  EXPECT_EQ(segre_h0(3, 5, 1), 3);
  for (int n = 3; n <= 6; ++n)
    for (std::int64_t g = 2; g <= 50; ++g) {
      ASSERT_EQ(segre_h0(n, g, 0), g);
      const auto mk = segre_mk(n, g);
      ASSERT_EQ(segre_h0(n, g, mk.m), mk.k);
      ASSERT_THROW(segre_h0(n, g, mk.m + 1), Error);
    }
}

TEST(Segre, IntervalsCoverHalfLine) {
  EXPECT_TRUE(segre_intervals_cover(3, 0, 2, 40));
  for (int n = 3; n <= 6; ++n)
    for (int e = 0; e <= 2; ++e) {
      if ((n * e) % 2 != 0) continue;
      const std::int64_t h0 = n * e / 2 + 1;
      EXPECT_TRUE(segre_intervals_cover(n, e, h0, h0 + 40)) << n << " " << e;
    }
}
