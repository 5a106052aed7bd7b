#pragma once

// Numerical vector-bundle data on a ruled surface and Chern-class calculus
// for the constructions used by the bounds: twists by line bundles, split
// sums, extensions with a punctual correction, and pullback twists p*A(tC0).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slopekit/chow.hpp"

namespace slopekit {

/// Generic splitting type (a_1 <= ... <= a_r) on a general fiber.
using SplittingType = std::vector<std::int64_t>;

inline std::string to_string(const SplittingType& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

class BundleData {
 public:
  BundleData(int rank, DivClass c1, Rational c2, std::optional<SplittingType> splitting = std::nullopt)
      : rank_(rank), c1_(std::move(c1)), c2_(std::move(c2)), splitting_(std::move(splitting)) {
    require(rank_ >= 1, ErrorKind::invalid_input, "rank", "rank must be >= 1, got " + std::to_string(rank_));
    require(rank_ != 1 || c2_ == 0, ErrorKind::invalid_input, "line-bundle-c2", "a line bundle has c2 = 0");
    if (splitting_) {
      const auto& t = *splitting_;
      require(static_cast<int>(t.size()) == rank_, ErrorKind::invalid_input, "splitting-length",
              "splitting type " + to_string(t) + " has length != rank " + std::to_string(rank_));
      require(std::is_sorted(t.begin(), t.end()), ErrorKind::invalid_input, "splitting-order",
              "splitting type " + to_string(t) + " must be nondecreasing");
      std::int64_t sum = 0;
      for (auto v : t) sum += v;
      require(Rational(sum) == c1_.fiber_degree(), ErrorKind::invalid_input, "splitting-sum",
              "splitting type " + to_string(t) + " sums to " + std::to_string(sum) + " but c1.L = " +
                  slopekit::to_string(c1_.fiber_degree()));
    }
  }

  static BundleData line(const DivClass& c) {
    std::optional<SplittingType> t;
    if (is_integral(c.c0_coeff)) t = SplittingType{c.c0_coeff.convert_to<std::int64_t>()};
    return BundleData(1, c, Rational(0), t);
  }

  int rank() const { return rank_; }
  const DivClass& c1() const { return c1_; }
  const Rational& c2() const { return c2_; }
  const std::optional<SplittingType>& splitting_type() const { return splitting_; }
  /// a = c1.L
  Rational fiber_degree() const { return c1_.fiber_degree(); }

  Rational c1_squared(const SurfaceModel& s) const { return self_intersection(c1_, s); }

 private:
  int rank_;
  DivClass c1_;
  Rational c2_;
  std::optional<SplittingType> splitting_;
};

struct SplitSummand {
  DivClass line_class;
};

/// 0 -> sub -> E -> quot (x) I_Z -> 0 with Z punctual of length z_length.
struct WhitneyTerm {
  BundleData sub;
  BundleData quot;
  Rational z_length{0};
};

/// V (x) O(l): c1' = c1 + r l, c2' = c2 + (r-1) c1.l + r(r-1)/2 l^2.
inline BundleData tensor_line(const BundleData& v, const DivClass& l, const SurfaceModel& s) {
  const Rational r(v.rank());
  DivClass c1 = v.c1() + r * l;
  Rational c2 = v.c2() + (r - 1) * intersect(v.c1(), l, s) + r * (r - 1) / 2 * self_intersection(l, s);
  std::optional<SplittingType> t;
  if (v.splitting_type() && is_integral(l.c0_coeff)) {
    t = *v.splitting_type();
    const auto shift = l.c0_coeff.convert_to<std::int64_t>();
    for (auto& a : *t) a += shift;
  }
  return BundleData(v.rank(), c1, c2, t);
}

/// Split bundle: c2 = sum over pairs i < j of D_i.D_j.
inline BundleData direct_sum(const std::vector<SplitSummand>& summands, const SurfaceModel& s) {
  require(!summands.empty(), ErrorKind::precondition, "empty-sum", "direct_sum needs at least one summand");
  DivClass c1{};
  Rational c2(0);
  bool integral = true;
  SplittingType t;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const DivClass& d = summands[i].line_class;
    for (std::size_t j = 0; j < i; ++j) c2 += intersect(summands[j].line_class, d, s);
    c1 += d;
    if (is_integral(d.c0_coeff))
      t.push_back(d.c0_coeff.convert_to<std::int64_t>());
    else
      integral = false;
  }
  std::optional<SplittingType> splitting;
  if (integral) {
    std::sort(t.begin(), t.end());
    splitting = std::move(t);
  }
  return BundleData(static_cast<int>(summands.size()), c1, c2, splitting);
}

inline std::vector<SplitSummand> summands_of(const std::vector<DivClass>& classes) {
  std::vector<SplitSummand> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back({c});
  return out;
}

/// c2(E) = c1(sub).c1(quot) + c2(sub) + c2(quot) + length(Z).
inline Rational whitney_c2(const WhitneyTerm& t, const SurfaceModel& s) {
  require(t.z_length >= 0, ErrorKind::invalid_input, "negative-z", "length of Z must be >= 0");
  return intersect(t.sub.c1(), t.quot.c1(), s) + t.sub.c2() + t.quot.c2() + t.z_length;
}

/// The middle term of the extension. The generic splitting type of an
/// extension is not determined by the outer terms, so it is not tracked.
inline BundleData whitney_assemble(const WhitneyTerm& t, const SurfaceModel& s) {
  return BundleData(t.sub.rank() + t.quot.rank(), t.sub.c1() + t.quot.c1(), whitney_c2(t, s));
}

/// p*A (x) O(t C0) for a rank-`rank` bundle A on the base curve of degree
/// `base_degree`. Pullbacks from a curve have c2 = 0.
inline BundleData pullback_twist(const Rational& base_degree, int rank, std::int64_t twist_c0, const SurfaceModel& s) {
  require(rank >= 1, ErrorKind::precondition, "rank", "pullback_twist needs rank >= 1");
  const Rational r(rank), t(twist_c0);
  DivClass c1{r * t, base_degree};
  Rational c2 = (r - 1) * base_degree * t + r * (r - 1) / 2 * t * t * s.c0_squared();
  return BundleData(rank, c1, c2, SplittingType(static_cast<std::size_t>(rank), twist_c0));
}

struct BalancedParts {
  std::int64_t m;
  std::int64_t k;
  friend bool operator==(const BalancedParts&, const BalancedParts&) = default;
};

/// a = m r + k with 0 <= k <= r - 1. Consumers that need 1 <= k check it
/// themselves.
inline BalancedParts balanced_decompose(int r, std::int64_t a) {
  require(r >= 1, ErrorKind::precondition, "rank", "balanced_decompose needs r >= 1");
  std::int64_t m = a / r;
  std::int64_t k = a % r;
  if (k < 0) {
    k += r;
    --m;
  }
  return {m, k};
}

/// (m, ..., m, m+1, ..., m+1) with k entries equal to m+1.
inline SplittingType balanced_splitting(int r, std::int64_t m, std::int64_t k) {
  require(r >= 1 && k >= 0 && k <= r, ErrorKind::precondition, "k-range", "balanced splitting needs 0 <= k <= r");
  SplittingType t(static_cast<std::size_t>(r), m);
  for (std::int64_t i = 0; i < k; ++i) t[static_cast<std::size_t>(r - 1 - i)] = m + 1;
  return t;
}

inline bool is_balanced(const SplittingType& t) { return !t.empty() && t.back() - t.front() <= 1; }

}  // namespace slopekit
