#pragma once

// Bogomolov-type lower bounds for c2 of bundles on ruled surfaces, the
// predicates built on them, and step-by-step replays of the inequality
// chains that produce the bounds.
//
// Sheaf-theoretic hypotheses (generic nefness, semistability on the general
// fiber) cannot be decided from numerical data; they enter as caller-asserted
// flags and are recorded in the report. Everything numerically checkable is
// re-verified.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slopekit/bundle.hpp"

namespace slopekit {

struct Hypothesis {
  std::string label;
  bool holds;
  bool asserted;  // true: caller flag, false: verified numerically
};

struct TraceStep {
  std::string label;
  Rational value;
};

struct Check {
  std::string label;
  bool ok;
};

/// Verdict of one bound. `satisfied` is always exactly `lhs >= rhs`.
struct BoundReport {
  std::string name;
  std::vector<Hypothesis> hypotheses;
  Rational rhs;
  Rational lhs;
  bool satisfied = false;
  std::string lhs_label = "c2(E)";
  std::string rhs_label = "bound";
  std::vector<TraceStep> trace;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
  }
  bool checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  }
  bool equality() const { return lhs == rhs; }

  const Rational& step(std::string_view label) const {
    for (const auto& t : trace)
      if (t.label == label) return t.value;
    fail(ErrorKind::precondition, "no-trace-step", "report has no trace step '" + std::string(label) + "'");
  }
};

inline BoundReport make_report(std::string name, Rational lhs, Rational rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.satisfied = lhs >= rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

struct AssertedFlags {
  bool generically_nef = false;
  bool fiber_semistable = false;
  bool maroni_general = false;
};

namespace detail {

inline const SplittingType& splitting_of(const BundleData& b) {
  require(b.splitting_type().has_value(), ErrorKind::precondition, "no-splitting",
          "this bound needs the generic splitting type of the bundle");
  return *b.splitting_type();
}

inline std::int64_t sum_of(const SplittingType& t) { return std::accumulate(t.begin(), t.end(), std::int64_t{0}); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Bound values

/// (a - a_r) / 2a, the multiplier of c1^2 in the general bound.
/// Equivalently (a_1 + ... + a_{r-1}) / 2a.
inline Rational main_bound_coefficient(const SplittingType& t) {
  require(!t.empty(), ErrorKind::precondition, "no-splitting", "empty splitting type");
  const std::int64_t a = detail::sum_of(t);
  require(a != 0, ErrorKind::precondition, "fiber-degree-zero", "the bound divides by a = c1.L, which is 0");
  return Rational(a - t.back()) / (2 * Rational(a));
}

/// Lower bound for c2(E) when e <= 0:  (sum_{i<r} a_i / 2a) c1(E)^2.
inline Rational main_bound_rhs(const SurfaceModel& s, const BundleData& b) {
  require(s.invariant_e() <= 0, ErrorKind::precondition, "e-positive",
          "the general bound needs e <= 0, got e = " + std::to_string(s.invariant_e()));
  return main_bound_coefficient(detail::splitting_of(b)) * b.c1_squared(s);
}

struct BalancedForms {
  Rational reduced;   // (a - (m+1)) / 2a
  Rational expanded;  // (r-1)/2r - (r-k)/2ar
};

/// Both printed forms of the balanced coefficient, a = m r + k, 1 <= k <= r-1.
inline BalancedForms balanced_coefficients(int r, std::int64_t m, std::int64_t k) {
  require(r >= 2 && k >= 1 && k <= r - 1, ErrorKind::precondition, "k-range",
          "balanced bound needs 1 <= k <= r-1, got r = " + std::to_string(r) + ", k = " + std::to_string(k));
  const Rational R(r), M(m), K(k);
  const Rational a = M * R + K;
  require(a != 0, ErrorKind::precondition, "fiber-degree-zero", "a = m r + k is 0");
  return {(a - (M + 1)) / (2 * a), (R - 1) / (2 * R) - (R - K) / (2 * a * R)};
}

/// The balanced coefficient; the two printed forms must agree exactly.
inline Rational balanced_coefficient(int r, std::int64_t m, std::int64_t k) {
  auto f = balanced_coefficients(r, m, k);
  if (f.reduced != f.expanded)
    fail(ErrorKind::inconsistency, "balanced-forms-differ",
         "balanced bound forms disagree: " + to_string(f.reduced) + " vs " + to_string(f.expanded));
  return f.reduced;
}

inline void require_balanced(const BundleData& b, std::int64_t m, std::int64_t k) {
  const auto& t = detail::splitting_of(b);
  require(k >= 1 && k <= b.rank() - 1, ErrorKind::precondition, "k-range",
          "balanced bound needs 1 <= k <= r-1, got k = " + std::to_string(k));
  require(t == balanced_splitting(b.rank(), m, k), ErrorKind::precondition, "not-balanced",
          "splitting type " + to_string(t) + " is not (m,...,m,m+1,...,m+1) with m = " + std::to_string(m) +
              ", k = " + std::to_string(k));
}

inline Rational balanced_bound_rhs(const SurfaceModel& s, const BundleData& b, std::int64_t m, std::int64_t k) {
  require_balanced(b, m, k);
  return balanced_coefficient(b.rank(), m, k) * b.c1_squared(s);
}

/// Delta(E) = c2 - (r-1)/2r c1^2.
inline Rational moriwaki_discriminant(const SurfaceModel& s, const BundleData& b) {
  const Rational r(b.rank());
  return b.c2() - (r - 1) / (2 * r) * b.c1_squared(s);
}

inline int discriminant_sign(const SurfaceModel& s, const BundleData& b) {
  const Rational d = moriwaki_discriminant(s, b);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

/// (a-(m+1))/2a - (a-k(m+1))/2a(a-1), a = m r + k. Rejects a <= 1.
inline Rational e_positive_coefficient(int r, std::int64_t m, std::int64_t k) {
  require(r >= 2 && k >= 1 && k <= r - 1, ErrorKind::precondition, "k-range", "e>0 bound needs 1 <= k <= r-1");
  const Rational M(m), K(k);
  const Rational a = M * Rational(r) + K;
  require(a > 1, ErrorKind::precondition, "a-le-one", "the e>0 bound divides by a(a-1); needs a >= 2");
  return (a - (M + 1)) / (2 * a) - (a - K * (M + 1)) / (2 * a * (a - 1));
}

/// c1(E).C0 >= -e/2
inline bool c1_dot_c0_hypothesis(const SurfaceModel& s, const BundleData& b) {
  return intersect(b.c1(), DivClass::section(), s) >= Rational(-s.invariant_e()) / 2;
}

inline Rational e_positive_bound_rhs(const SurfaceModel& s, const BundleData& b, std::int64_t m, std::int64_t k) {
  require(s.invariant_e() > 0, ErrorKind::precondition, "e-nonpositive", "the e>0 bound needs e > 0");
  require_balanced(b, m, k);
  const Rational coeff = e_positive_coefficient(b.rank(), m, k);
  require(c1_dot_c0_hypothesis(s, b), ErrorKind::hypothesis, "c1-dot-c0",
          "c1(E).C0 = " + to_string(intersect(b.c1(), DivClass::section(), s)) + " < -e/2");
  return coeff * b.c1_squared(s);
}

/// Numerical half of the nefness criterion for the normalized tautological
/// divisor: semistable (asserted) and Delta = 0.
inline bool nakayama_zero_discriminant(const SurfaceModel& s, const BundleData& b, bool semistable_flag) {
  return semistable_flag && moriwaki_discriminant(s, b) == 0;
}

// ---------------------------------------------------------------------------
// Reports

inline BoundReport check_main(const SurfaceModel& s, const BundleData& b, const AssertedFlags& flags) {
  const Rational rhs = main_bound_rhs(s, b);
  const auto& t = *b.splitting_type();
  BoundReport r = make_report("main", b.c2(), rhs);
  r.hypotheses = {
      {"e <= 0", true, false},
      {"nef fiber restriction: 0 <= a_1", t.front() >= 0, false},
      {"sum a_i = c1.L", true, false},
      {"generically nef", flags.generically_nef, true},
  };
  r.trace = {{"a", b.fiber_degree()},
             {"a_r", Rational(t.back())},
             {"c1^2", b.c1_squared(s)},
             {"coefficient (a - a_r)/2a", main_bound_coefficient(t)}};
  if (r.equality()) r.notes.push_back("equality: c2 attains the bound");
  return r;
}

inline BoundReport check_balanced(const SurfaceModel& s, const BundleData& b, const AssertedFlags& flags) {
  const auto& t = detail::splitting_of(b);
  const auto parts = balanced_decompose(b.rank(), detail::sum_of(t));
  const auto forms = balanced_coefficients(b.rank(), parts.m, parts.k);
  const Rational rhs = balanced_bound_rhs(s, b, parts.m, parts.k);
  BoundReport r = make_report("balanced", b.c2(), rhs);
  r.hypotheses = {
      {"e <= 0", s.invariant_e() <= 0, false},
      {"nef fiber restriction: 0 <= m", parts.m >= 0, false},
      {"generically nef", flags.generically_nef, true},
  };
  r.trace = {{"m", Rational(parts.m)},
             {"k", Rational(parts.k)},
             {"coefficient (a-(m+1))/2a", forms.reduced},
             {"coefficient (r-1)/2r - (r-k)/2ar", forms.expanded}};
  r.checks.push_back({"both printed forms agree", forms.reduced == forms.expanded});
  if (r.equality())
    r.notes.push_back(
        "equality: consistent with a uniform extension 0 -> p*B((m+1)C0) -> E -> p*V(mC0) -> 0, "
        "rank B = k, deg B = delta, c1(V) = 0 (structure not verified)");
  return r;
}

inline BoundReport check_e_positive(const SurfaceModel& s, const BundleData& b, const AssertedFlags& flags) {
  const auto& t = detail::splitting_of(b);
  const auto parts = balanced_decompose(b.rank(), detail::sum_of(t));
  const Rational rhs = e_positive_bound_rhs(s, b, parts.m, parts.k);
  BoundReport r = make_report("e-positive", b.c2(), rhs);
  r.hypotheses = {
      {"e > 0", true, false},
      {"c1.C0 >= -e/2", true, false},
      {"nef fiber restriction: 0 <= m", parts.m >= 0, false},
      {"generically nef", flags.generically_nef, true},
  };
  r.trace = {{"m", Rational(parts.m)},
             {"k", Rational(parts.k)},
             {"c1.C0", intersect(b.c1(), DivClass::section(), s)},
             {"coefficient", e_positive_coefficient(b.rank(), parts.m, parts.k)}};
  return r;
}

inline BoundReport check_moriwaki(const SurfaceModel& s, const BundleData& b, const AssertedFlags& flags) {
  const Rational r_(b.rank());
  BoundReport r = make_report("moriwaki", b.c2(), (r_ - 1) / (2 * r_) * b.c1_squared(s));
  r.hypotheses = {{"semistable on the general fiber", flags.fiber_semistable, true}};
  r.trace = {{"discriminant", moriwaki_discriminant(s, b)}};
  if (nakayama_zero_discriminant(s, b, flags.fiber_semistable))
    r.notes.push_back("discriminant zero and semistable: normalized tautological divisor is nef");
  return r;
}

// ---------------------------------------------------------------------------
// Replays

/// Numerical data for replaying the chain of inequalities. c2(E) is
/// assembled from the extension
///     0 -> p*A(a_r C0) -> E -> M (x) I_Z -> 0,
/// deg A = alpha, rank A = r - q, c1(E) = a C0 + delta L, where c2(M) equals
/// its own inductive lower bound plus `quotient_slack`.
struct ReplayInput {
  SurfaceModel surface;
  SplittingType splitting;
  Rational delta;
  Rational alpha;
  Rational z_length{0};
  Rational quotient_slack{0};

  int rank() const { return static_cast<int>(splitting.size()); }
  std::int64_t fiber_degree() const { return detail::sum_of(splitting); }
  DivClass c1() const { return {Rational(fiber_degree()), delta}; }
  Rational c1_squared() const { return self_intersection(c1(), surface); }
};

namespace replay_steps {
inline constexpr std::string_view c2_extension = "c2(E) via extension";
inline constexpr std::string_view after_quotient = "after quotient bound";
inline constexpr std::string_view d_coefficient = "d";
inline constexpr std::string_view c_coefficient = "c";
inline constexpr std::string_view regrouped = "regrouped";
inline constexpr std::string_view simplified = "simplified";
inline constexpr std::string_view after_alpha = "after alpha bound";
inline constexpr std::string_view after_delta = "after delta substitution";
inline constexpr std::string_view closed_form = "closed form";
inline constexpr std::string_view final_bound = "final";
}  // namespace replay_steps

namespace detail {

inline void validate_replay(const ReplayInput& in) {
  require(!in.splitting.empty(), ErrorKind::invalid_input, "no-splitting", "replay needs a splitting type");
  require(std::is_sorted(in.splitting.begin(), in.splitting.end()), ErrorKind::invalid_input, "splitting-order",
          "splitting type must be nondecreasing");
  require(in.splitting.front() >= 0, ErrorKind::invalid_input, "fiber-not-nef",
          "nef fiber restriction needs 0 <= a_1");
  require(in.fiber_degree() > 0, ErrorKind::precondition, "fiber-degree-zero", "replay needs a > 0");
  require(in.z_length >= 0, ErrorKind::invalid_input, "negative-z", "length of Z must be >= 0");
  require(in.quotient_slack >= 0, ErrorKind::invalid_input, "negative-slack", "quotient slack must be >= 0");
}

inline void require_identity(const Rational& x, const Rational& y, const char* label) {
  if (x != y)
    fail(ErrorKind::inconsistency, label, "expected equal values, got " + to_string(x) + " and " + to_string(y));
}

/// Bound for c2 of E after bounding c2(M) from below, written term by term:
///   (r-q) a_r a_M C + alpha a_M + (r-q) a_r (delta - alpha) + (r-q-1) a_r alpha
///   + (r-q)(r-q-1)/2 a_r^2 C + (a_M - a_q)/2 a_M C + (a_M - a_q)(delta - alpha)
inline Rational quotient_step(const Rational& p, const Rational& ar, const Rational& aM, const Rational& aq,
                              const Rational& C, const Rational& alpha, const Rational& delta) {
  return p * ar * aM * C + alpha * aM + p * ar * (delta - alpha) + (p - 1) * ar * alpha +
         p * (p - 1) / 2 * ar * ar * C + (aM - aq) / 2 * aM * C + (aM - aq) * (delta - alpha);
}

}  // namespace detail

/// Replays the proof of the general bound for e <= 0. q is the number of
/// splitting entries strictly below a_r; it is derived, and a supplied q must
/// match.
inline BoundReport replay_main_theorem(const ReplayInput& in, std::optional<int> q_given = std::nullopt) {
  using namespace replay_steps;
  detail::validate_replay(in);
  const SurfaceModel& s = in.surface;
  require(s.invariant_e() <= 0, ErrorKind::precondition, "e-positive", "the general bound needs e <= 0");

  const int r = in.rank();
  const std::int64_t top = in.splitting.back();
  const int q = static_cast<int>(std::count_if(in.splitting.begin(), in.splitting.end(),
                                               [top](std::int64_t v) { return v < top; }));
  if (q_given && *q_given != q)
    fail(ErrorKind::precondition, "q-mismatch",
         "q = " + std::to_string(*q_given) + " does not match the splitting type (q = " + std::to_string(q) + ")");

  const Rational a(in.fiber_degree()), ar(top), C = s.c0_squared();
  const Rational c1sq = in.c1_squared();
  const Rational closed = (a - ar) / (2 * a) * c1sq;

  if (q == 0) {
    // Uniform splitting: E = p*A(a_r C0) and alpha = delta is forced.
    const Rational c2 = pullback_twist(in.delta, r, top, s).c2();
    BoundReport rep = make_report("main replay", c2, closed);
    rep.hypotheses = {{"e <= 0", true, false}, {"nef fiber restriction: 0 <= a_1", true, false}};
    rep.trace = {{std::string(c2_extension), c2}, {std::string(closed_form), closed}};
    rep.notes.push_back("uniform splitting type: replay skipped, bound is the Moriwaki value (r-1)/2r c1^2");
    if (in.alpha != in.delta || in.z_length != 0) rep.notes.push_back("alpha and z ignored: E = p*A(a_r C0)");
    return rep;
  }

  const Rational p(r - q);
  const Rational aq(in.splitting[static_cast<std::size_t>(q - 1)]);
  const Rational aM(std::accumulate(in.splitting.begin(), in.splitting.begin() + q, std::int64_t{0}));
  const Rational& alpha = in.alpha;
  const Rational& delta = in.delta;

  // c2(E) from the extension, through the bundle module.
  const BundleData sub = pullback_twist(alpha, r - q, top, s);
  const DivClass c1M{aM, delta - alpha};
  const Rational c2M_bound = (aM - aq) / 2 * (aM * C + 2 * (delta - alpha));
  const SplittingType quot_split(in.splitting.begin(), in.splitting.begin() + q);
  require(q > 1 || in.quotient_slack == 0, ErrorKind::invalid_input, "line-bundle-c2",
          "a rank-1 quotient has c2 = 0; slack must be 0");
  const BundleData quot(q, c1M, c2M_bound + in.quotient_slack, quot_split);
  const Rational c2E = whitney_c2({sub, quot, in.z_length}, s);

  const Rational quasi = detail::quotient_step(p, ar, aM, aq, C, alpha, delta);
  const Rational d = p * ar * aM + p * (p - 1) / 2 * ar * ar + (aM - aq) / 2 * aM;
  const Rational c = p * ar + aM - aq;
  const Rational regrouped_v = d * C + (aq - ar) * alpha + c * delta;

  const Rational alpha_bound = delta + aM * C / 2;
  const Rational forza = (d + (aq - ar) * aM / 2) * C + (c + aq - ar) * delta;

  const Rational c0_coeff = d + (aq - ar) * aM / 2 - a / 2 * (c + aq - ar);
  const Rational ecco = c0_coeff * C + (c + aq - ar) / (2 * a) * c1sq;

  detail::require_identity(quasi, regrouped_v, "regroup-mismatch");
  detail::require_identity(c0_coeff, Rational(0), "c0-coefficient-nonzero");
  detail::require_identity(forza, ecco, "delta-substitution-mismatch");
  detail::require_identity(ecco, closed, "closed-form-mismatch");

  BoundReport rep = make_report("main replay", c2E, closed);
  rep.hypotheses = {
      {"e <= 0", true, false},
      {"nef fiber restriction: 0 <= a_1", true, false},
      {"Z effective", in.z_length >= 0, false},
      {"alpha <= delta + a_M C0^2 / 2", alpha <= alpha_bound, false},
  };
  rep.trace = {
      {std::string(c2_extension), c2E}, {std::string(after_quotient), quasi},
      {std::string(d_coefficient), d},  {std::string(c_coefficient), c},
      {std::string(regrouped), regrouped_v}, {std::string(after_alpha), forza},
      {std::string(after_delta), ecco}, {std::string(closed_form), closed},
  };
  rep.checks = {
      {"c2(E) >= after quotient bound", c2E >= quasi},
      {"regrouping exact", true},
      {"after alpha bound <= regrouped", forza <= regrouped_v},
      {"C0^2 coefficient vanishes", true},
      {"closed form exact", true},
  };
  return rep;
}

/// Replays the proof of the e > 0 balanced bound. The quotient M has
/// semistable fiber restriction, so c2(M) is its Moriwaki bound plus slack.
inline BoundReport e_positive_replay(const ReplayInput& in, std::int64_t m, std::int64_t k) {
  using namespace replay_steps;
  detail::validate_replay(in);
  const SurfaceModel& s = in.surface;
  const int r = in.rank();
  require(s.invariant_e() > 0, ErrorKind::precondition, "e-nonpositive", "the e>0 bound needs e > 0");
  require(k >= 1 && k <= r - 1, ErrorKind::precondition, "k-range", "e>0 bound needs 1 <= k <= r-1");
  require(in.splitting == balanced_splitting(r, m, k), ErrorKind::precondition, "not-balanced",
          "splitting type " + to_string(in.splitting) + " is not balanced with m = " + std::to_string(m) +
              ", k = " + std::to_string(k));
  const BundleData E(r, in.c1(), Rational(0), in.splitting);
  const Rational coeff = e_positive_coefficient(r, m, k);
  require(c1_dot_c0_hypothesis(s, E), ErrorKind::hypothesis, "c1-dot-c0", "c1(E).C0 < -e/2");

  const Rational R(r), M(m), K(k), C = s.c0_squared();
  const Rational a = M * R + K;
  const Rational c1sq = in.c1_squared();
  const Rational& alpha = in.alpha;
  const Rational& delta = in.delta;

  const Rational p = K, ar = M + 1, aM = (R - K) * M, aq = M;
  const int qrank = r - static_cast<int>(k);

  const BundleData sub = pullback_twist(alpha, static_cast<int>(k), m + 1, s);
  const DivClass c1M{aM, delta - alpha};
  const Rational qR(qrank);
  const Rational c2M_bound = (qR - 1) / (2 * qR) * self_intersection(c1M, s);
  require(qrank > 1 || in.quotient_slack == 0, ErrorKind::invalid_input, "line-bundle-c2",
          "a rank-1 quotient has c2 = 0; slack must be 0");
  const BundleData quot(qrank, c1M, c2M_bound + in.quotient_slack,
                        SplittingType(static_cast<std::size_t>(qrank), m));
  const Rational c2E = whitney_c2({sub, quot, in.z_length}, s);

  const Rational quasi = detail::quotient_step(p, ar, aM, aq, C, alpha, delta);
  const Rational coefC = K * (R - K) * M * (M + 1) + K * (K - 1) / 2 * (M + 1) * (M + 1) +
                         (R - K) * (R - K - 1) / 2 * M * M;
  const Rational dcoef = K + (R - 1) * M;
  const Rational simplified_v = coefC * C - alpha + dcoef * delta;
  const Rational after_alpha_v = coefC * C + (dcoef - 1) * delta;
  const Rational after_delta_v = (coefC - a / 2 * (dcoef - 1)) * C + (dcoef - 1) / (2 * a) * c1sq;
  const Rational dai = (R - K) * M / 2 * C + (a - (M + 1)) / (2 * a) * c1sq;
  const Rational final_v = coeff * c1sq;

  detail::require_identity(quasi, simplified_v, "simplify-mismatch");
  detail::require_identity(after_alpha_v, after_delta_v, "delta-substitution-mismatch");
  detail::require_identity(after_delta_v, dai, "regrouped-form-mismatch");
  const Rational c0_floor = -c1sq / (a * (a - 1));

  BoundReport rep = make_report("e-positive replay", c2E, final_v);
  rep.hypotheses = {
      {"e > 0", true, false},
      {"c1.C0 >= -e/2", true, false},
      {"Z effective", in.z_length >= 0, false},
      {"alpha <= delta", alpha <= delta, false},
  };
  rep.trace = {
      {std::string(c2_extension), c2E},       {std::string(after_quotient), quasi},
      {std::string(simplified), simplified_v}, {std::string(after_alpha), after_alpha_v},
      {std::string(after_delta), after_delta_v}, {std::string(final_bound), final_v},
  };
  rep.checks = {
      {"c2(E) >= after quotient bound", c2E >= quasi},
      {"simplification exact", true},
      {"after alpha bound <= simplified", after_alpha_v <= simplified_v},
      {"C0^2 >= -c1^2/(a(a-1))", C >= c0_floor},
      {"final <= after delta substitution", final_v <= after_delta_v},
  };
  if (C == c0_floor) rep.notes.push_back("c1.C0 = -e/2: the C0^2 estimate is attained");
  return rep;
}

}  // namespace slopekit
