#pragma once

// Numerical intersection theory on a ruled surface p: Y -> B.
//
// Num(Y) is generated by C0, a section of minimal self-intersection, and L,
// a fiber of p. The pairing is
//
//     C0.C0 = -e,   C0.L = 1,   L.L = 0,
//
// where e is the invariant of Y. A class aC0 + dL has fiber degree
// (aC0 + dL).L = a.

#include <string>

#include "slopekit/error.hpp"
#include "slopekit/rational.hpp"

namespace slopekit {

class SurfaceModel {
 public:
  /// Throws invalid_input for a negative genus, or for e < 0 over a rational
  /// base (Hirzebruch surfaces have e >= 0).
  SurfaceModel(int base_genus, int invariant_e) : base_genus_(base_genus), invariant_e_(invariant_e) {
    require(base_genus >= 0, ErrorKind::invalid_input, "negative-base-genus",
            "base genus must be >= 0, got " + std::to_string(base_genus));
    require(base_genus > 0 || invariant_e >= 0, ErrorKind::invalid_input, "negative-e-rational-base",
            "a ruled surface over P1 has e >= 0, got e = " + std::to_string(invariant_e));
  }

  static SurfaceModel hirzebruch(int e) { return SurfaceModel(0, e); }
  static SurfaceModel p1xp1() { return SurfaceModel(0, 0); }

  int base_genus() const { return base_genus_; }
  int invariant_e() const { return invariant_e_; }
  Rational c0_squared() const { return Rational(-invariant_e_); }
  /// chi(O_Y) = 1 - b.
  Rational chi_structure_sheaf() const { return Rational(1 - base_genus_); }

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  int base_genus_;
  int invariant_e_;
};

/// Numerical class c0_coeff * C0 + fiber_coeff * L.
struct DivClass {
  Rational c0_coeff;
  Rational fiber_coeff;

  static DivClass section() { return {Rational(1), Rational(0)}; }
  static DivClass fiber() { return {Rational(0), Rational(1)}; }

  Rational fiber_degree() const { return c0_coeff; }
  bool is_integral() const { return slopekit::is_integral(c0_coeff) && slopekit::is_integral(fiber_coeff); }

  DivClass& operator+=(const DivClass& o) {
    c0_coeff += o.c0_coeff;
    fiber_coeff += o.fiber_coeff;
    return *this;
  }
  DivClass& operator-=(const DivClass& o) {
    c0_coeff -= o.c0_coeff;
    fiber_coeff -= o.fiber_coeff;
    return *this;
  }
  friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
  friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
  friend DivClass operator-(const DivClass& a) { return {-a.c0_coeff, -a.fiber_coeff}; }
  friend DivClass operator*(const Rational& t, const DivClass& x) { return {t * x.c0_coeff, t * x.fiber_coeff}; }
  friend bool operator==(const DivClass&, const DivClass&) = default;
};

inline std::string to_string(const DivClass& x) {
  return to_string(x.c0_coeff) + "*C0 + " + to_string(x.fiber_coeff) + "*L";
}

inline Rational intersect(const DivClass& x, const DivClass& y, const SurfaceModel& s) {
  return x.c0_coeff * y.c0_coeff * s.c0_squared() + x.c0_coeff * y.fiber_coeff + x.fiber_coeff * y.c0_coeff;
}

inline Rational self_intersection(const DivClass& x, const SurfaceModel& s) { return intersect(x, x, s); }

/// K_Y = -2 C0 + (2b - 2 - e) L.
inline DivClass canonical_class(const SurfaceModel& s) {
  return {Rational(-2), Rational(2 * s.base_genus() - 2 - s.invariant_e())};
}

/// Nef test for xC0 + yL.
///
/// e > 0: x >= 0 and y >= x e (closure of the ample cone x > 0, y > x e).
/// e <= 0: x >= 0 and y >= x e / 2, i.e. y >= -(1/2) x C0^2, the condition
/// used for surfaces without negative sections. For e < 0 this is the
/// standard description of the nef cone in characteristic zero (Hartshorne
/// V.2.21); it is used here exactly as stated, without further conditions on b.
inline bool is_nef(const DivClass& x, const SurfaceModel& s) {
  const Rational e(s.invariant_e());
  if (x.c0_coeff < 0) return false;
  if (s.invariant_e() > 0) return x.fiber_coeff >= x.c0_coeff * e;
  return x.fiber_coeff >= x.c0_coeff * e / 2;
}

}  // namespace slopekit
