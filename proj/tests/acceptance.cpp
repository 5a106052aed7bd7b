// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slopekit.hpp"

using namespace slopekit;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_ms;  // 0: no limit
  std::function<std::string()> body;  // empty string on success, else the reason
};

#define EXPECT_OR_RETURN(cond, why) \
  do {                              \
    if (!(cond)) return why;        \
  } while (0)

std::string triproduct_n3() {
  const auto r = triproduct_family({3, 3, 3});
  const auto o = oracle::surface_in_triple(3, 3, 3, 0);
  EXPECT_OR_RETURN(r.cover.c1_sq() == 72 && r.cover.c2() == 18, "c1^2/c2");
  EXPECT_OR_RETURN(*r.cover.ksy_sq() == 90, "K_{S/Y}^2");
  EXPECT_OR_RETURN(r.kf2 == 42 && o.kf2 == 42, "K_f^2");
  EXPECT_OR_RETURN(r.chif == 12 && o.chif == 12, "chi_f");
  EXPECT_OR_RETURN(r.slope == ratio(7, 2) && r.slope == stankova_F(3, 4), "slope");
  EXPECT_OR_RETURN(r.lambda_sq == 0 && o.lambda_sq == 0, "Lambda_pi^2");
  return {};
}

std::string triproduct_grid() {
  for (int n = 3; n <= 8; ++n) {
    const auto r = triproduct_family({n, n, n});
    const auto o = oracle::surface_in_triple(n, n, n, 0);
    const int g = (n - 1) * (n - 1);
    EXPECT_OR_RETURN(r.slope == stankova_F(n, g), "slope != F at n=" + std::to_string(n));
    EXPECT_OR_RETURN(o.kf2 / o.chif == r.slope, "oracle slope differs at n=" + std::to_string(n));
  }
  return {};
}

std::string base_curve_identity_grid() {
  for (int n = 3; n <= 20; ++n) {
    const Rational s = Rational(n - 1) * Rational(n - 1);
    const Rational F = Rational(6) - Rational(2) / Rational(n - 1) - Rational(2 * n) / s;
    EXPECT_OR_RETURN(Rational(6) - 6 / s == F + 4 * Rational(n - 2) / s, "identity fails at n=" + std::to_string(n));
    EXPECT_OR_RETURN(base_curve_identity(n), "library identity fails at n=" + std::to_string(n));
  }
  return {};
}

std::string falsification() {
  const auto w = falsify_search(Rational(30), Rational(-100), {});
  EXPECT_OR_RETURN(w.has_value(), "no witness");
  EXPECT_OR_RETURN(w->m == 1 && w->b1 + w->b2 == 5, "witness outside the c1^2 = 30 slice");
  EXPECT_OR_RETURN(w->discriminant < -100, "discriminant not below target");
  const SurfaceModel Y = SurfaceModel::p1xp1();
  EXPECT_OR_RETURN(w->bundle.c1_squared(Y) == 30, "c1^2 != 30");
  for (std::int64_t b1 = -300; b1 < 300; ++b1) {
    const Rational d0 = moriwaki_discriminant(Y, falsification_family(1, b1, 5 - b1));
    const Rational d1 = moriwaki_discriminant(Y, falsification_family(1, b1 + 1, 4 - b1));
    EXPECT_OR_RETURN(d1 - d0 == 1, "slope in b1 is not 1");
  }
  return {};
}

std::string balanced_forms() {
  for (int r = 2; r <= 8; ++r)
    for (std::int64_t m = 0; m <= 6; ++m)
      for (std::int64_t k = 1; k <= r - 1; ++k) {
        const Rational R(r), M(m), K(k), a = M * R + K;
        const Rational reduced = (a - (M + 1)) / (2 * a);
        const Rational expanded = (R - 1) / (2 * R) - (R - K) / (2 * a * R);
        EXPECT_OR_RETURN(reduced == expanded, "forms differ at r,m,k");
        const auto f = balanced_coefficients(r, m, k);
        EXPECT_OR_RETURN(f.reduced == reduced && f.expanded == expanded, "library forms differ from direct evaluation");
      }
  std::ostringstream err;
  const int rc = guarded(err, []() -> int { fail(ErrorKind::inconsistency, "balanced-forms-differ", "probe"); });
  EXPECT_OR_RETURN(rc == 3, "inconsistency does not map to exit 3");
  return {};
}

std::string replay_suite() {
  oracle::Gen gen(20240611);
  int replayed = 0;
  for (int i = 0; i < 700; ++i) {
    const int e = static_cast<int>(gen.integer(-4, 0));
    const SurfaceModel s(e < 0 ? static_cast<int>(gen.integer(1, 4)) : static_cast<int>(gen.integer(0, 4)), e);
    const int r = static_cast<int>(gen.integer(2, 7));
    SplittingType t;
    do {
      t.clear();
      for (int j = 0; j < r; ++j) t.push_back(gen.integer(0, 8));
      std::sort(t.begin(), t.end());
    } while (t.back() == t.front());
    std::int64_t aM = 0;
    int q = 0;
    for (auto v : t)
      if (v < t.back()) aM += v, ++q;
    const Rational delta = gen.rational(40);
    const Rational alpha = delta + Rational(aM) * Rational(-e) / 2 - abs(gen.rational(10, 3));
    const ReplayInput in{s, t, delta, alpha, abs(gen.rational(6)), q > 1 ? abs(gen.rational(6)) : Rational(0)};
    const BoundReport rep = replay_main_theorem(in);
    const BundleData E(r, in.c1(), rep.lhs, t);
    const Rational a(in.fiber_degree());
    EXPECT_OR_RETURN(rep.rhs == (a - Rational(t.back())) / (2 * a) * in.c1_squared(), "closed form differs");
    EXPECT_OR_RETURN(rep.rhs == main_bound_rhs(s, E), "closed form differs from the bound");
    EXPECT_OR_RETURN(rep.checks_pass() && rep.hypotheses_hold(), "trace step inconsistent");
    namespace st = replay_steps;
    EXPECT_OR_RETURN(rep.trace.size() > 2, "non-uniform splitting was not replayed");
    EXPECT_OR_RETURN(rep.lhs - rep.step(st::after_quotient) == in.z_length + in.quotient_slack,
                     "quotient step slack");
    EXPECT_OR_RETURN(rep.step(st::regrouped) >= rep.step(st::after_alpha), "alpha step direction");
    EXPECT_OR_RETURN(rep.step(st::after_alpha) == rep.step(st::closed_form), "delta substitution");
    ++replayed;
  }
  EXPECT_OR_RETURN(replayed >= 500, "fewer than 500 replays");
  return {};
}

std::string split_oracle() {
  oracle::Gen gen(77);
  for (int i = 0; i < 1200; ++i) {
    const int e = static_cast<int>(gen.integer(-4, 4));
    const SurfaceModel s(e < 0 ? 1 : 0, e);
    const auto count = gen.integer(1, 6);
    std::vector<DivClass> ls;
    std::vector<oracle::Line> ol;
    for (std::int64_t j = 0; j < count; ++j) {
      const Rational x(gen.integer(-15, 15)), y(gen.integer(-15, 15));
      ls.push_back({x, y});
      ol.push_back({x, y});
    }
    const DivClass l{Rational(gen.integer(-9, 9)), Rational(gen.integer(-9, 9))};
    std::vector<oracle::Line> shifted;
    for (const auto& x : ol) shifted.push_back({x.a + l.c0_coeff, x.d + l.fiber_coeff});
    const BundleData v = direct_sum(summands_of(ls), s);
    EXPECT_OR_RETURN(tensor_line(v, l, s).c2() == oracle::split_c2(shifted, e), "tensor_line differs from oracle");
    const auto cut = static_cast<std::size_t>(gen.integer(1, count));
    if (cut < ls.size()) {
      const BundleData sub = direct_sum(summands_of({ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(cut)}), s);
      const BundleData quot = direct_sum(summands_of({ls.begin() + static_cast<std::ptrdiff_t>(cut), ls.end()}), s);
      EXPECT_OR_RETURN(whitney_c2({sub, quot, Rational(0)}, s) == oracle::split_c2(ol, e),
                       "whitney_c2 differs from oracle");
    }
  }
  return {};
}

std::string cyclic_covers() {
  int covers = 0;
  for (int n = 2; n <= 6; ++n)
    for (int e = 0; e <= 2; ++e)
      for (int x = -5; x <= 5; ++x)
        for (int y = -5; y <= 5; ++y) {
          const CyclicCoverSpec spec{n, {Rational(x), Rational(y)}, SurfaceModel(0, e)};
          if (Rational(n * (n - 1) / 2 * x - (n - 1)) < 2) continue;
          const auto c = cyclic_cover_invariants(spec);
          const auto h = hodge_upper_bounds(c.cover);
          EXPECT_OR_RETURN(*c.cover.ksy_sq() == h.ksy_bound && c.lambda_sq == h.lambda_bound, "bound not attained");
          const Rational N(n);
          EXPECT_OR_RETURN(c.lambda_sq == (N - 2) * (N - 2) / (N * (N - 1) * (N - 1)) * c.cover.c1_sq(),
                           "Lambda_pi^2 formula");
          ++covers;
        }
  EXPECT_OR_RETURN(covers > 0, "no covers generated");
  return {};
}

std::string primcyc_discrepancy() {
  const auto p = primcyc_bound(2, 3);
  EXPECT_OR_RETURN(p.form1 == ratio(8, 3) && p.form2 == 0 && !p.agree, "forms at (2,3)");
  Scenario sc;
  sc.primcyc = PrimcycSection{2, 3};
  std::ostringstream out, err;
  cmd_check(sc, "primcyc", {true, false}, out, err);
  EXPECT_OR_RETURN(out.str().find(",8/3\n") != std::string::npos && out.str().find(",0\n") != std::string::npos,
                   "check does not print both forms");
  EXPECT_OR_RETURN(err.str().find("warning") != std::string::npos, "no warning");
  std::ostringstream tout, terr;
  cmd_table({2, 8, 2, 40}, {true, true}, tout, terr);
  std::istringstream lines(tout.str());
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    EXPECT_OR_RETURN(f.size() == 11, "table row width");
    const auto q = primcyc_bound(std::stoi(f[0]), std::stoll(f[1]));
    const bool differ = parse_rational(f[8]) != parse_rational(f[9]);
    EXPECT_OR_RETURN(differ == (f[10] == "true") && differ == !q.agree, "mismatch column wrong");
    ++rows;
  }
  EXPECT_OR_RETURN(rows == 7 * 39 * 2, "table row count");
  return {};
}

std::string segre_grid() {
  for (int n = 3; n <= 5; ++n)
    for (int e = 0; e <= 2; ++e)
      for (std::int64_t g = 3; g <= 40; ++g) {
        if (2 * (n - 1) > g || (n * e) % 2 != 0) continue;
        const auto s = segre_solve({n, g, e});
        const std::int64_t half = n * e / 2, h = s.h, d = s.delta_nodes;
        const std::int64_t gnh = (n - 1) * (h - 1) - half * (n - 1);
        const std::int64_t dim = gnh + 2 * n + 2 * h - 1 - n * e;
        const std::string at = " at n=" + std::to_string(n) + " e=" + std::to_string(e) + " g=" + std::to_string(g);
        EXPECT_OR_RETURN(g == gnh - d, "genus equation" + at);
        EXPECT_OR_RETURN(0 <= d && d <= h + n - 1 - half, "node count range" + at);
        EXPECT_OR_RETURN(d <= gnh && gnh <= dim - 2 * d - 1, "dimension constraint" + at);
        EXPECT_OR_RETURN(gnh - n - h + 1 + half <= g && g <= gnh, "interval" + at);
        EXPECT_OR_RETURN(segre_h0(n, g, 0) == g, "h0(omega) != g" + at);
      }
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "triproduct n=3 pipeline", 1000, triproduct_n3},
      {2, "triproduct slope = F(n,(n-1)^2) for n=3..8", 1000, triproduct_grid},
      {3, "6-6/(n-1)^2 = F(n,(n-1)^2) + 4(n-2)/(n-1)^2 for n=3..20", 0, base_curve_identity_grid},
      {4, "falsification family reaches discriminant < -100, unit slope in b1", 0, falsification},
      {5, "balanced bound forms agree for r<=8, m<=6", 0, balanced_forms},
      {6, "main bound replay on random inputs", 5000, replay_suite},
      {7, "tensor_line and whitney_c2 against split oracle", 0, split_oracle},
      {8, "cyclic covers attain both Hodge bounds", 0, cyclic_covers},
      {9, "primcyc printed forms discrepancy surfaced", 0, primcyc_discrepancy},
      {10, "segre_solve feasible and re-checked on the admissible grid", 0, segre_grid},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string why;
    try {
      why = c.body();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (why.empty() && c.limit_ms > 0 && ms > c.limit_ms) why = "over time limit";
    std::cout << (why.empty() ? "PASS " : "FAIL ") << c.id << " " << c.title << " (" << static_cast<long>(ms)
              << " ms)" << (why.empty() ? "" : ": " + why) << '\n';
    if (!why.empty()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
