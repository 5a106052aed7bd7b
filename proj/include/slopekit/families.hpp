#pragma once

// Concrete families: primitive cyclic covers, covers of P1xP1 (or C1xP1) cut
// out of a triple product, the split rank-2 family whose c2 drops without
// bound, and the nodal-curve construction with balanced Tschirnhausen
// splitting.

#include <array>
#include <optional>
#include <vector>

#include "slopekit/fibration.hpp"

namespace slopekit {

using Multidegree = std::array<Rational, 3>;

/// Intersection of three divisor classes on P1xP1xP1 (or C x P1 x P1, with
/// the first entry a degree on C): the permanent of the 3x3 matrix of
/// multidegrees, since H_i H_j H_k = 1 iff {i,j,k} = {1,2,3}.
inline Rational triple_product(const Multidegree& x, const Multidegree& y, const Multidegree& z) {
  return x[0] * (y[1] * z[2] + y[2] * z[1]) + x[1] * (y[0] * z[2] + y[2] * z[0]) +
         x[2] * (y[0] * z[1] + y[1] * z[0]);
}

// ---------------------------------------------------------------------------
// Cyclic covers

struct CyclicCoverSpec {
  int degree_n;
  DivClass a_class;  // branch divisor is n A
  SurfaceModel surface;
};

struct CyclicCoverResult {
  BundleData bundle;
  CoverData cover;
  Rational c2_printed;  // n(n-1)(n-2)(3n-1)/12 A^2
  bool c2_printed_matches;
  Rational lambda_sq;
};

/// E = O(A) + O(2A) + ... + O((n-1)A). The fibration is p: Y -> B, so the
/// fiber genus comes from c1(E).L = g + n - 1.
inline CyclicCoverResult cyclic_cover_invariants(const CyclicCoverSpec& spec) {
  const int n = spec.degree_n;
  const SurfaceModel& s = spec.surface;
  require(n >= 2, ErrorKind::invalid_input, "degree", "cyclic cover degree must be >= 2");
  require(spec.a_class.is_integral(), ErrorKind::invalid_input, "non-integral-class",
          "A = " + to_string(spec.a_class) + " must have integer coefficients");
  std::vector<DivClass> parts;
  for (int i = 1; i < n; ++i) parts.push_back(Rational(i) * spec.a_class);
  const BundleData E = direct_sum(summands_of(parts), s);

  const Rational genus = E.fiber_degree() - Rational(n - 1);
  require(is_integral(genus), ErrorKind::invalid_input, "non-integral-genus",
          "fiber genus " + to_string(genus) + " is not an integer");
  require(genus >= 2, ErrorKind::invalid_input, "fiber-genus",
          "A.L too small: fiber genus would be " + to_string(genus) + " < 2");

  const Rational N(n);
  const Rational c1sq = E.c1_squared(s);
  const Rational a_sq = self_intersection(spec.a_class, s);
  const Rational printed = N * (N - 1) * (N - 2) * (3 * N - 1) / 12 * a_sq;
  CoverData d(n, genus.convert_to<int>(), s, c1sq, E.c2(), 4 / N * c1sq);
  return {E, d, printed, printed == E.c2(), lambda_pi_sq(d)};
}

struct PrimcycForms {
  Rational form1;  // 24(g-1)(n-1) / (n^2 + 4ng - 3n + 2 - 2g)
  Rational form2;  // 6 - 6/(2n-1) - 12n(n^2-1) / (2g(2n-1) + (n-1)(n-2))
  bool agree;
};

inline PrimcycForms primcyc_bound(int n, std::int64_t g) {
  require(n >= 2 && g >= 2, ErrorKind::precondition, "n-g-range", "primcyc bound needs n >= 2, g >= 2");
  const Rational N(n), G(g);
  const Rational den1 = N * N + 4 * N * G - 3 * N + 2 - 2 * G;
  const Rational den2 = 2 * G * (2 * N - 1) + (N - 1) * (N - 2);
  require(den1 != 0 && den2 != 0, ErrorKind::precondition, "zero-denominator", "primcyc bound denominator is 0");
  const Rational f1 = 24 * (G - 1) * (N - 1) / den1;
  const Rational f2 = Rational(6) - 6 / (2 * N - 1) - 12 * N * (N * N - 1) / den2;
  return {f1, f2, f1 == f2};
}

// ---------------------------------------------------------------------------
// Covers from a triple product

/// S in |n1 L1 + n2 L2 + n3 L3| on P1xP1xP1, pi: S -> Y = P1xP1 the
/// projection to the first two factors (degree n3), f: S -> P1 the first
/// projection. On Y, L = L1 and C0 = L2.
struct TriproductSpec {
  int n1;
  int n2;
  int n3;
  bool symmetric() const { return n1 == n2 && n2 == n3; }
};

struct TriproductResult {
  BundleData bundle;
  CoverData cover;
  Rational kf2;
  Rational chif;
  Rational slope;
  Rational lambda_sq;
  bool derived_extension;  // true unless n1 = n2 = n3
};

namespace detail {

/// K_{S/Y} = (K_T + S)|_S - pi^* K_Y has multidegree (n1, n2, n3-2) both
/// over P1 and over a curve of genus b (the L1 degree on C is 1 per point).
inline Rational ksy_from_multidegree(const Rational& d1, const Rational& d2, int n3) {
  const Multidegree rel{d1, d2, Rational(n3 - 2)};
  const Multidegree surf{d1, d2, Rational(n3)};
  return triple_product(rel, rel, surf);
}

}  // namespace detail

/// E = O(n1,n2)^{n3-1}, g = (n2-1)(n3-1).
inline TriproductResult triproduct_family(const TriproductSpec& spec) {
  require(spec.n1 >= 1 && spec.n2 >= 1, ErrorKind::invalid_input, "multidegree", "n1, n2 must be >= 1");
  require(spec.n3 >= 3, ErrorKind::invalid_input, "n3-range", "n3 must be >= 3, got " + std::to_string(spec.n3));
  const SurfaceModel Y = SurfaceModel::p1xp1();
  const DivClass summand{Rational(spec.n2), Rational(spec.n1)};
  const BundleData E = direct_sum(summands_of(std::vector<DivClass>(static_cast<std::size_t>(spec.n3 - 1), summand)), Y);
  const int g = (spec.n2 - 1) * (spec.n3 - 1);
  const Rational ksy = detail::ksy_from_multidegree(Rational(spec.n1), Rational(spec.n2), spec.n3);
  CoverData d(spec.n3, g, Y, E.c1_squared(Y), E.c2(), ksy);
  require_tschirn_class(d, E.c1());
  const auto inv = kf2_chif(d);
  return {E, d, inv.kf2, inv.chif, slope(d), lambda_pi_sq(d), !spec.symmetric()};
}

struct BaseCurveResult {
  BundleData bundle;
  CoverData cover;
  Rational slope;          // from the invariants
  Rational printed_slope;  // 6 - 6/(n-1)^2
  Rational lambda_sq;
  bool identity_holds;     // 6 - 6/(n-1)^2 = F(n,(n-1)^2) + 4(n-2)/(n-1)^2
  bool slope_matches_printed;
};

inline bool base_curve_identity(int n) {
  require(n >= 3, ErrorKind::precondition, "n-range", "needs n >= 3");
  const Rational s = Rational(n - 1) * Rational(n - 1);
  return Rational(6) - 6 / s == stankova_F(n, (n - 1) * (n - 1)) + 4 * Rational(n - 2) / s;
}

/// S in |L1 + n L2 + n L3| on C1 x P1 x P1 with L1 a point of C1; Y = C1 x P1
/// (b = g1, e = 0), E = O(L1 + n L2)^{n-1}.
inline BaseCurveResult base_curve_family(int n, int base_genus) {
  require(n >= 3, ErrorKind::invalid_input, "n-range", "n must be >= 3, got " + std::to_string(n));
  require(base_genus >= 1, ErrorKind::invalid_input, "base-genus", "base curve genus must be >= 1");
  const SurfaceModel Y(base_genus, 0);
  const DivClass summand{Rational(n), Rational(1)};
  const BundleData E = direct_sum(summands_of(std::vector<DivClass>(static_cast<std::size_t>(n - 1), summand)), Y);
  const int g = (n - 1) * (n - 1);
  CoverData d(n, g, Y, E.c1_squared(Y), E.c2(), detail::ksy_from_multidegree(Rational(1), Rational(n), n));
  require_tschirn_class(d, E.c1());
  const Rational s = slope(d);
  const Rational printed = Rational(6) - ratio(6, std::int64_t{g});
  return {E, d, s, printed, lambda_pi_sq(d), base_curve_identity(n), s == printed};
}

// ---------------------------------------------------------------------------
// Split rank-2 family on P1xP1

/// E = O(m C0 + b1 L) + O((m+1) C0 + b2 L):
/// c1^2 = 2(2m+1)(b1+b2), c2 = m(b1+b2) + b1.
inline BundleData falsification_family(std::int64_t m, std::int64_t b1, std::int64_t b2) {
  return direct_sum(summands_of({{Rational(m), Rational(b1)}, {Rational(m + 1), Rational(b2)}}),
                    SurfaceModel::p1xp1());
}

struct FalsifyBox {
  std::int64_t m_lo = 1;
  std::int64_t m_hi = 1;
  std::int64_t b1_lo = -200;
  std::int64_t b1_hi = 200;
};

struct FalsifyWitness {
  std::int64_t m;
  std::int64_t b1;
  std::int64_t b2;
  BundleData bundle;
  Rational discriminant;
};

/// First (m ascending, b1 descending) member of the box with the given c1^2
/// and discriminant below `target`. Scanning b1 downward makes the witness
/// the largest b1 that works for the first usable m.
inline std::optional<FalsifyWitness> falsify_search(const Rational& c1_sq, const Rational& target,
                                                    const FalsifyBox& box) {
  require(box.m_lo <= box.m_hi && box.b1_lo <= box.b1_hi, ErrorKind::precondition, "empty-box",
          "search box is empty");
  const SurfaceModel Y = SurfaceModel::p1xp1();
  for (std::int64_t m = box.m_lo; m <= box.m_hi; ++m) {
    if (2 * m + 1 == 0) continue;
    const Rational sum = c1_sq / Rational(2 * (2 * m + 1));
    if (!is_integral(sum)) continue;
    const auto total = sum.convert_to<std::int64_t>();
    for (std::int64_t b1 = box.b1_hi; b1 >= box.b1_lo; --b1) {
      BundleData E = falsification_family(m, b1, total - b1);
      Rational disc = moriwaki_discriminant(Y, E);
      if (disc < target) return FalsifyWitness{m, b1, total - b1, std::move(E), std::move(disc)};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Nodal curves on Hirzebruch surfaces with balanced Tschirnhausen splitting

struct SegreSpec {
  int gonality_n;
  std::int64_t target_genus_g;
  int invariant_e;
};

struct SegreNumbers {
  std::int64_t g_nh;       // arithmetic genus of curves in |n H0 + h L|
  std::int64_t dim_sigma;  // dimension of the linear system
  std::int64_t interval_lo;
  std::int64_t interval_hi;
};

namespace detail {

inline void require_even_ne(int n, int e) {
  require((std::int64_t{n} * e) % 2 == 0, ErrorKind::invalid_input, "odd-ne",
          "n e must be even, got n = " + std::to_string(n) + ", e = " + std::to_string(e));
}

}  // namespace detail

inline SegreNumbers segre_numbers(int n, int e, std::int64_t h) {
  detail::require_even_ne(n, e);
  const std::int64_t half = std::int64_t{n} * e / 2;
  require(h > half, ErrorKind::precondition, "h-range", "needs h > ne/2");
  const std::int64_t gnh = (n - 1) * (h - 1) - half * (n - 1);
  const std::int64_t dim = gnh + 2 * n + 2 * h - 1 - 2 * half;
  return {gnh, dim, gnh - n - h + 1 + half, gnh};
}

/// Every displayed constraint on (h, delta) for target genus g.
inline bool segre_constraints_hold(int n, int e, std::int64_t g, std::int64_t h, std::int64_t delta) {
  if ((std::int64_t{n} * e) % 2 != 0 || 2 * h <= std::int64_t{n} * e) return false;
  const auto s = segre_numbers(n, e, h);
  const std::int64_t half = std::int64_t{n} * e / 2;
  return g == s.g_nh - delta && delta >= 0 && delta <= h + n - 1 - half && delta <= s.g_nh &&
         s.g_nh <= s.dim_sigma - 2 * delta - 1 && g >= s.interval_lo && g <= s.interval_hi;
}

struct SegreSolution {
  std::int64_t h;
  std::int64_t delta_nodes;
  std::int64_t m;
  std::int64_t k;
  SplittingType splitting;
  bool k_boundary;  // (n-1) | g, outside 1 <= k <= n-2
  SegreNumbers numbers;
};

inline void require_segre_spec(const SegreSpec& spec) {
  require(spec.gonality_n >= 3, ErrorKind::invalid_input, "gonality", "n must be >= 3");
  require(spec.target_genus_g >= 3, ErrorKind::invalid_input, "genus", "g must be >= 3");
  require(spec.invariant_e >= 0, ErrorKind::invalid_input, "negative-e", "e must be >= 0");
  require(2 * (spec.gonality_n - 1) <= spec.target_genus_g, ErrorKind::invalid_input, "gonality-range",
          "needs 3 <= n <= g/2 + 1");
  detail::require_even_ne(spec.gonality_n, spec.invariant_e);
}

/// Smallest h for which g lies in the interval and every constraint holds.
inline SegreSolution segre_solve(const SegreSpec& spec) {
  require_segre_spec(spec);
  const int n = spec.gonality_n, e = spec.invariant_e;
  const std::int64_t g = spec.target_genus_g;
  const std::int64_t half = std::int64_t{n} * e / 2;
  // Interval lower ends grow by n-2 >= 1 per step, so the scan terminates.
  for (std::int64_t h = half + 1;; ++h) {
    const auto s = segre_numbers(n, e, h);
    if (s.interval_lo > g) break;
    const std::int64_t delta = s.g_nh - g;
    if (!segre_constraints_hold(n, e, g, h, delta)) continue;
    const auto mk = segre_mk(n, g);
    SplittingType t(static_cast<std::size_t>(n - 1 - mk.k), mk.m - 1);
    t.insert(t.end(), static_cast<std::size_t>(mk.k), mk.m);
    return {h, delta, mk.m, mk.k, std::move(t), mk.k == 0, s};
  }
  fail(ErrorKind::precondition, "no-feasible-h",
       "no h satisfies the constraints for n = " + std::to_string(n) + ", e = " + std::to_string(e) +
           ", g = " + std::to_string(g));
}

/// h0(omega_C(-v D)) = (m - v)(n-1) + k, g = m(n-1) + k.
inline std::int64_t segre_h0(int n, std::int64_t g, std::int64_t v) {
  require(n >= 2, ErrorKind::precondition, "gonality", "n must be >= 2");
  const auto mk = segre_mk(n, g);
  require(v >= 0 && v <= mk.m, ErrorKind::precondition, "v-range",
          "needs 0 <= v <= m = " + std::to_string(mk.m) + ", got v = " + std::to_string(v));
  return (mk.m - v) * (n - 1) + mk.k;
}

/// Whether the intervals for h_lo..h_hi, clipped at 0, leave no gap in
/// [0, g_{n,h_hi}].
inline bool segre_intervals_cover(int n, int e, std::int64_t h_lo, std::int64_t h_hi) {
  require(h_lo <= h_hi, ErrorKind::precondition, "empty-range", "empty h range");
  std::int64_t reach = -1;  // largest genus covered so far
  for (std::int64_t h = h_lo; h <= h_hi; ++h) {
    const auto s = segre_numbers(n, e, h);
    if (s.interval_lo > reach + 1) return false;
    reach = std::max(reach, s.interval_hi);
  }
  return reach >= segre_numbers(n, e, h_hi).g_nh;
}

}  // namespace slopekit
