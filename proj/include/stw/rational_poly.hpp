// SPDX-License-Identifier: Apache-2.0
// Dense univariate polynomials and closed intervals over exact rationals.
#pragma once

#include "stw/series_algebra.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stw {

class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> ascending);
  static RationalPoly from_integers(const std::vector<long long>& ascending);
  static RationalPoly monomial(const Rational& c, int degree);

  // −1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;

  RationalPoly operator+(const RationalPoly& o) const;
  RationalPoly operator-(const RationalPoly& o) const;
  RationalPoly operator*(const RationalPoly& o) const;
  RationalPoly operator-() const;
  bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

  RationalPoly derivative() const;
  RationalPoly monic() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;  // ascending degree, leading coefficient nonzero
};

// Euclidean division: a = q·b + r with deg r < deg b.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
// Monic greatest common divisor (zero if both inputs are zero).
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
// Number of distinct real roots in (lo, hi] by Sturm's theorem.
int sturm_count(const RationalPoly& p, const Rational& lo, const Rational& hi);

// Closed rational interval [lo, hi] with outward-safe arithmetic.
struct RInterval {
  Rational lo, hi;

  static RInterval point(const Rational& x) { return {x, x}; }
  RInterval operator+(const RInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RInterval operator-(const RInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RInterval operator-() const { return {-hi, -lo}; }
  RInterval operator*(const RInterval& o) const;
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  // Hidden friends, so that unrelated products in namespace stw never consider them.
  friend RInterval operator+(const RInterval& a, const Rational& b) { return {a.lo + b, a.hi + b}; }
  friend RInterval operator*(const Rational& a, const RInterval& b) { return point(a) * b; }
};

// Rigorous enclosure of √x on a nonnegative interval.
RInterval sqrt(const RInterval& x);
// Evaluate a polynomial on an interval (Horner form).
RInterval eval(const RationalPoly& p, const RInterval& x);

}  // namespace stw
