#pragma once

// Invariants of a fibration f: S -> B that factors through a degree-n cover
// pi: S -> Y of a ruled surface, expressed through the Tschirnhausen bundle E
// (rank n-1, c1.L = g + n - 1 =: a), and the slope bound functions built on
// them.
//
// Two m,k conventions appear in this module:
//   cover:  g + n - 1 = (n-1) m + k     (chi_k_max, F(n,g,k), bound_slope_k)
//   curve:  g         = (n-1) m + k     (segre_mk, used by the Segre construction)
// section4_mk / segre_mk and the converter between them are explicit.

#include <optional>
#include <string>

#include "slopekit/bounds.hpp"

namespace slopekit {

class CoverData {
 public:
  CoverData(int degree_n, int fiber_genus_g, SurfaceModel surface, Rational c1_sq, Rational c2,
            std::optional<Rational> ksy_sq = std::nullopt)
      : n_(degree_n), g_(fiber_genus_g), surface_(surface), c1_sq_(std::move(c1_sq)), c2_(std::move(c2)),
        ksy_sq_(std::move(ksy_sq)) {
    require(n_ >= 2, ErrorKind::invalid_input, "degree", "cover degree n must be >= 2, got " + std::to_string(n_));
    require(g_ >= 2, ErrorKind::invalid_input, "fiber-genus",
            "fiber genus g must be >= 2, got " + std::to_string(g_));
  }

  int degree_n() const { return n_; }
  int fiber_genus_g() const { return g_; }
  int base_genus_b() const { return surface_.base_genus(); }
  const SurfaceModel& surface() const { return surface_; }
  const Rational& c1_sq() const { return c1_sq_; }
  const Rational& c2() const { return c2_; }
  const std::optional<Rational>& ksy_sq() const { return ksy_sq_; }
  /// a = c1(E).L = g + n - 1
  std::int64_t fiber_degree() const { return std::int64_t{g_} + n_ - 1; }

  const Rational& require_ksy() const {
    require(ksy_sq_.has_value(), ErrorKind::precondition, "missing-ksy", "K_{S/Y}^2 (ksy_sq) is required here");
    return *ksy_sq_;
  }

  CoverData with_ksy(Rational k) const {
    CoverData d = *this;
    d.ksy_sq_ = std::move(k);
    return d;
  }

 private:
  int n_;
  int g_;
  SurfaceModel surface_;
  Rational c1_sq_;
  Rational c2_;
  std::optional<Rational> ksy_sq_;
};

/// c1(E) = a C0 + (c1^2/2a - (a/2) C0^2) L, the unique class with fiber
/// degree a and self-intersection c1^2.
inline DivClass tschirn_c1(const CoverData& d) {
  const Rational a(d.fiber_degree());
  return {a, d.c1_sq() / (2 * a) - a / 2 * d.surface().c0_squared()};
}

/// The L-coefficient with +a C0^2 in place of -(a/2) C0^2. Kept for
/// comparison; it only round-trips when e = 0.
inline DivClass tschirn_c1_as_printed(const CoverData& d) {
  const Rational a(d.fiber_degree());
  return {a, d.c1_sq() / (2 * a) + a * d.surface().c0_squared()};
}

/// Rejects a hand-given c1(E) that does not match the cover data.
inline void require_tschirn_class(const CoverData& d, const DivClass& c1) {
  require(c1.fiber_degree() == Rational(d.fiber_degree()), ErrorKind::invalid_input, "c1-fiber-degree",
          "c1.L = " + to_string(c1.fiber_degree()) + " but g + n - 1 = " + std::to_string(d.fiber_degree()));
  const Rational sq = self_intersection(c1, d.surface());
  require(sq == d.c1_sq(), ErrorKind::invalid_input, "c1-square",
          "c1 = " + to_string(c1) + " has c1^2 = " + to_string(sq) + " but c1_sq = " + to_string(d.c1_sq()));
}

/// chi(O_S) = n chi(O_Y) + c1.K_Y / 2 + c1^2 / 2 - c2.
inline Rational chi_structure_sheaf(int n, const Rational& chi_OY, const Rational& c1_dot_KY, const Rational& c1_sq,
                                    const Rational& c2) {
  return Rational(n) * chi_OY + c1_dot_KY / 2 + c1_sq / 2 - c2;
}

inline Rational chi_structure_sheaf(const CoverData& d) {
  const Rational c1K = intersect(tschirn_c1(d), canonical_class(d.surface()), d.surface());
  return chi_structure_sheaf(d.degree_n(), d.surface().chi_structure_sheaf(), c1K, d.c1_sq(), d.c2());
}

/// chi_f = (a-1)/2a c1^2 - c2
inline Rational chi_f(const CoverData& d) {
  const Rational a(d.fiber_degree());
  return (a - 1) / (2 * a) * d.c1_sq() - d.c2();
}

/// chi_f = chi(O_S) - (g-1)(b-1), the same number by way of chi(O_S).
inline Rational chi_f_from_chi_structure(const CoverData& d) {
  return chi_structure_sheaf(d) - Rational(d.fiber_genus_g() - 1) * Rational(d.base_genus_b() - 1);
}

/// K_f^2 = K_{S/Y}^2 - 4 c1^2 / a
inline Rational kf2(const CoverData& d) {
  return d.require_ksy() - 4 * d.c1_sq() / Rational(d.fiber_degree());
}

struct FiberInvariants {
  Rational kf2;
  Rational chif;
};

inline FiberInvariants kf2_chif(const CoverData& d) { return {kf2(d), chi_f(d)}; }

inline Rational slope(const CoverData& d) {
  const auto v = kf2_chif(d);
  require(v.chif > 0, ErrorKind::precondition, "chi-f-nonpositive",
          "slope needs chi_f > 0, got chi_f = " + to_string(v.chif));
  return v.kf2 / v.chif;
}

/// F(n,g) = 6 - 2/(n-1) - 2n/g
inline Rational stankova_F(int n, std::int64_t g) {
  require(n >= 2 && g >= 1, ErrorKind::precondition, "n-g-range", "F(n,g) needs n >= 2, g >= 1");
  return Rational(6) - ratio(2, n - 1) - ratio(2 * std::int64_t{n}, g);
}

/// g / (2 (n-1) a), the multiplier of c1^2 in chi0_max.
inline Rational chi0_max_coefficient(int n, std::int64_t g) {
  return Rational(g) / (2 * Rational(n - 1) * Rational(g + n - 1));
}

inline Rational chi0_max(const CoverData& d) {
  return chi0_max_coefficient(d.degree_n(), d.fiber_genus_g()) * d.c1_sq();
}

/// Lambda_pi^2 = K_{S/Y}^2 - (3n-4)/(n-1)^2 c1^2
inline Rational lambda_pi_sq(const CoverData& d) {
  const Rational n(d.degree_n());
  return d.require_ksy() - (3 * n - 4) / ((n - 1) * (n - 1)) * d.c1_sq();
}

/// K_f^2 = F(n,g) chi0_max + Lambda_pi^2. With `observed_kf2` the left side
/// is an independently computed K_f^2 instead of the one derived from ksy_sq.
inline bool kf2_decomposition_check(const CoverData& d, const std::optional<Rational>& observed_kf2 = std::nullopt) {
  const Rational lhs = observed_kf2 ? *observed_kf2 : kf2(d);
  return lhs == stankova_F(d.degree_n(), d.fiber_genus_g()) * chi0_max(d) + lambda_pi_sq(d);
}

struct HodgeBounds {
  Rational ksy_bound;     // 4/n c1^2
  Rational lambda_bound;  // (n-2)^2 / n(n-1)^2 c1^2
  std::optional<bool> ok;  // present iff ksy_sq is known
};

inline HodgeBounds hodge_upper_bounds(const CoverData& d) {
  const Rational n(d.degree_n());
  HodgeBounds h{4 / n * d.c1_sq(), (n - 2) * (n - 2) / (n * (n - 1) * (n - 1)) * d.c1_sq(), std::nullopt};
  if (d.ksy_sq()) h.ok = *d.ksy_sq() <= h.ksy_bound && lambda_pi_sq(d) <= h.lambda_bound;
  return h;
}

// ---------------------------------------------------------------------------
// Non-divisible refinement

enum class C0Sign { nonnegative, negative };

inline C0Sign c0_sign(const SurfaceModel& s) { return s.c0_squared() >= 0 ? C0Sign::nonnegative : C0Sign::negative; }

inline const char* to_string(C0Sign s) { return s == C0Sign::nonnegative ? "C0^2>=0" : "C0^2<0"; }

/// Cover convention: g + n - 1 = (n-1) m + k, 0 <= k <= n-2.
inline BalancedParts section4_mk(int n, std::int64_t g) { return balanced_decompose(n - 1, g + n - 1); }

/// Curve convention: g = (n-1) m + k, 0 <= k <= n-2.
inline BalancedParts segre_mk(int n, std::int64_t g) { return balanced_decompose(n - 1, g); }

/// Same k, m shifted by one.
inline BalancedParts segre_to_section4(BalancedParts p) { return {p.m + 1, p.k}; }
inline BalancedParts section4_to_segre(BalancedParts p) { return {p.m - 1, p.k}; }

/// Cover convention with 1 <= k <= n-1: the divisible case is written with
/// k = n-1, where chi_k_max reduces to chi0_max.
inline BalancedParts chi_k_max_mk(int n, std::int64_t g) {
  auto p = section4_mk(n, g);
  if (p.k == 0) p = {p.m - 1, std::int64_t{n - 1}};
  return p;
}

/// Needs 1 <= k <= n-1; the estimate behind it is the balanced bound.
inline Rational chi_k_max_coefficient(int n, std::int64_t g, std::int64_t m, std::int64_t k, C0Sign sign) {
  const std::int64_t a = g + n - 1;
  require(k >= 1 && k <= n - 1, ErrorKind::precondition, "k-range",
          "chi_k_max needs 1 <= k <= n-1, got k = " + std::to_string(k));
  require(a == std::int64_t{n - 1} * m + k, ErrorKind::precondition, "mk-decomposition",
          "g + n - 1 = " + std::to_string(a) + " is not (n-1)m + k with m = " + std::to_string(m) +
              ", k = " + std::to_string(k));
  const Rational A(a), M(m);
  Rational coeff = M / (2 * A);
  if (sign == C0Sign::negative) coeff += Rational(n - 1 - k) * M / (2 * A * (A - 1));
  return coeff;
}

inline Rational chi_k_max(const CoverData& d, std::int64_t m, std::int64_t k) {
  return chi_k_max_coefficient(d.degree_n(), d.fiber_genus_g(), m, k, c0_sign(d.surface())) * d.c1_sq();
}

/// F(n,g,k), 1 <= k <= n-2, with the branch chosen by the sign of C0^2.
inline Rational stankova_Fk(int n, std::int64_t g, std::int64_t k, C0Sign sign) {
  require(k >= 1 && k <= n - 2, ErrorKind::precondition, "k-range",
          "F(n,g,k) needs 1 <= k <= n-2, got k = " + std::to_string(k));
  const Rational N(n), G(g), K(k);
  const Rational top = 6 * G - 2 * (N - 1);
  const Rational p = G + N - 1 - K;
  if (sign == C0Sign::nonnegative) return top / p - 2 / (N - 1) - 2 * K / ((N - 1) * p);
  const Rational q = G + 2 * N - 3 - K;
  return top * (G + N - 2) / (p * q) - 2 * (G + N - 1) * (G + N - 2) / ((N - 1) * p * q);
}

/// K_f^2 = F(n,g,k) chi_k_max + Lambda_pi^2
inline bool kf2_decomposition_k_check(const CoverData& d, std::int64_t m, std::int64_t k) {
  return kf2(d) == stankova_Fk(d.degree_n(), d.fiber_genus_g(), k, c0_sign(d.surface())) * chi_k_max(d, m, k) +
                       lambda_pi_sq(d);
}

/// s(f) >= F(n,g,k) + Lambda_pi^2 / chi_k_max
inline Rational bound_slope_k(const CoverData& d, std::int64_t m, std::int64_t k) {
  const Rational chi = chi_k_max(d, m, k);
  require(chi != 0, ErrorKind::precondition, "chi-k-max-zero", "chi_k_max is 0");
  return stankova_Fk(d.degree_n(), d.fiber_genus_g(), k, c0_sign(d.surface())) + lambda_pi_sq(d) / chi;
}

/// s(f) >= F(n,g) + Lambda_pi^2 / chi0_max
inline Rational bound_slope_divisible(const CoverData& d) {
  const Rational chi = chi0_max(d);
  require(chi != 0, ErrorKind::precondition, "chi0-max-zero", "chi0_max is 0");
  return stankova_F(d.degree_n(), d.fiber_genus_g()) + lambda_pi_sq(d) / chi;
}

// ---------------------------------------------------------------------------
// Section counts

struct LambdaCounts {
  std::int64_t h0_gonal_multiple;  // h0(O_F((m-2) Gamma_F))
  std::int64_t h0_lambda_fiber;    // h0(O_F(K_F - (m-2) Gamma_F))
};

/// Divisible case g = (n-1)(m-1) on a Maroni-general fiber (assumed, not
/// checked).
inline LambdaCounts lambda_restriction_counts(int n, std::int64_t g) {
  require(n >= 2, ErrorKind::precondition, "degree", "n must be >= 2");
  require(g % (n - 1) == 0, ErrorKind::precondition, "divisibility",
          "needs (n-1) | g, got n = " + std::to_string(n) + ", g = " + std::to_string(g));
  const std::int64_t m = g / (n - 1) + 1;
  return {m - 1, n - 1};
}

struct SectionCounts {
  std::int64_t m;
  Rational k;
  std::int64_t h0_lambda;
  std::int64_t h0_lambda_minus_fiber;
};

/// c1(E) = (n-1)(m C0 + k L) with k = delta / (n-1).
inline SectionCounts ssunif_section_count(int n, std::int64_t g, const Rational& delta) {
  require(n >= 2, ErrorKind::precondition, "degree", "n must be >= 2");
  require(g % (n - 1) == 0, ErrorKind::precondition, "divisibility",
          "needs (n-1) | g, got n = " + std::to_string(n) + ", g = " + std::to_string(g));
  const Rational k = delta / Rational(n - 1);
  require(is_integral(k), ErrorKind::precondition, "divisibility",
          "needs (n-1) | delta, got delta = " + to_string(delta));
  require(k >= 0, ErrorKind::precondition, "negative-k", "k = delta/(n-1) must be >= 0");
  return {g / (n - 1) + 1, k, n - 1, 0};
}

// ---------------------------------------------------------------------------
// Reports

inline BoundReport check_hodge(const CoverData& d) {
  const Rational& ksy = d.require_ksy();
  const auto h = hodge_upper_bounds(d);
  const Rational lam = lambda_pi_sq(d);
  BoundReport r = make_report("hodge", h.ksy_bound, ksy);
  r.lhs_label = "4/n c1^2";
  r.rhs_label = "K_{S/Y}^2";
  r.trace = {{"K_{S/Y}^2", ksy},
             {"4/n c1^2", h.ksy_bound},
             {"Lambda_pi^2", lam},
             {"(n-2)^2/n(n-1)^2 c1^2", h.lambda_bound}};
  r.checks = {{"Lambda_pi^2 bound agrees with the K_{S/Y}^2 bound", (lam <= h.lambda_bound) == r.satisfied},
              {"both bounds differ by the same amount", h.lambda_bound - lam == h.ksy_bound - ksy}};
  if (r.equality()) r.notes.push_back("equality: both bounds attained");
  return r;
}

inline BoundReport check_chi0max(const CoverData& d) {
  BoundReport r = make_report("chi0max", chi0_max(d), chi_f(d));
  r.lhs_label = "chi0_max";
  r.rhs_label = "chi_f";
  const BundleData E(d.degree_n() - 1, tschirn_c1(d), d.c2());
  r.trace = {{"chi_f", chi_f(d)},
             {"chi0_max", chi0_max(d)},
             {"discriminant of E", moriwaki_discriminant(d.surface(), E)}};
  r.checks = {{"chi_f <= chi0_max iff discriminant >= 0",
               (chi_f(d) <= chi0_max(d)) == (moriwaki_discriminant(d.surface(), E) >= 0)}};
  return r;
}

inline BoundReport check_chikmax(const CoverData& d) {
  const auto p = chi_k_max_mk(d.degree_n(), d.fiber_genus_g());
  const Rational chik = chi_k_max(d, p.m, p.k);
  BoundReport r = make_report("chikmax", chik, chi_f(d));
  r.lhs_label = "chi_k_max";
  r.rhs_label = "chi_f";
  r.trace = {{"m", Rational(p.m)}, {"k", Rational(p.k)}, {"chi_f", chi_f(d)}, {"chi_k_max", chik}};
  r.notes.push_back(std::string("branch: ") + to_string(c0_sign(d.surface())));
  return r;
}

inline BoundReport check_kf2_decomposition(const CoverData& d) {
  const Rational lhs = kf2(d);
  const Rational F = stankova_F(d.degree_n(), d.fiber_genus_g());
  const Rational rhs = F * chi0_max(d) + lambda_pi_sq(d);
  BoundReport r = make_report("kf2-decomposition", lhs, rhs);
  r.lhs_label = "K_f^2";
  r.rhs_label = "F(n,g) chi0_max + Lambda_pi^2";
  r.trace = {{"K_f^2", lhs}, {"F(n,g)", F}, {"chi0_max", chi0_max(d)}, {"Lambda_pi^2", lambda_pi_sq(d)}};
  r.checks = {{"identity exact", lhs == rhs}};
  const auto p = section4_mk(d.degree_n(), d.fiber_genus_g());
  if (p.k >= 1 && p.k <= d.degree_n() - 2)
    r.checks.push_back({"identity exact with F(n,g,k) and chi_k_max", kf2_decomposition_k_check(d, p.m, p.k)});
  return r;
}

}  // namespace slopekit
