// SPDX-License-Identifier: Apache-2.0
// Exact rational polynomials, interval enclosures and the b₃,₀ certificate.
#include "stw/errors.hpp"
#include "stw/instability_analysis.hpp"
#include "stw/rational_poly.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace stw {

// ---------------------------------------------------------------- RationalPoly

RationalPoly::RationalPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

RationalPoly RationalPoly::from_integers(const std::vector<long long>& ascending) {
  std::vector<Rational> c;
  c.reserve(ascending.size());
  for (long long v : ascending) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1), Rational(0));
  v.back() = c;
  return RationalPoly(std::move(v));
}

void RationalPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<double>(*it);
  return acc;
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::operator-() const {
  std::vector<Rational> r = c_;
  for (auto& v : r) v = -v;
  return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const { return *this + (-o); }

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long long>(i));
  return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> r = c_;
  const Rational lead = leading();
  for (auto& v : r) v /= lead;
  return RationalPoly(std::move(r));
}

std::string RationalPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    const Rational a = abs(v);
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << (a != 1 ? "*" : "") << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by the zero polynomial");
  RationalPoly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const RationalPoly t = RationalPoly::monomial(r.leading() / b.leading(), r.degree() - b.degree());
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a, y = b;
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

namespace {

int sign_changes(const std::vector<RationalPoly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    const Rational v = p(x);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<RationalPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    RationalPoly r = -divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

// ---------------------------------------------------------------- intervals

RInterval RInterval::operator*(const RInterval& o) const {
  const Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min({a, b, c, d}), std::max({a, b, c, d})};
}

namespace {

// Rational s with s² ≤ x (lower) or s² ≥ x (upper), from a nudged double estimate.
Rational sqrt_bound(const Rational& x, bool upper) {
  if (x <= 0) return 0;
  double s = std::sqrt(static_cast<double>(x));
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double nudged = upper ? s * (1.0 + 1e-15) + 1e-300 : s * (1.0 - 1e-15);
    const Rational r(nudged);
    if (upper ? (r * r >= x) : (r * r <= x)) return r;
    s = nudged;
  }
  throw std::runtime_error("sqrt_bound: could not certify a square-root bound");
}

}  // namespace

RInterval sqrt(const RInterval& x) {
  if (x.lo < 0) throw std::domain_error("sqrt: interval extends below zero");
  return {sqrt_bound(x.lo, false), sqrt_bound(x.hi, true)};
}

RInterval eval(const RationalPoly& p, const RInterval& x) {
  RInterval acc = RInterval::point(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// ---------------------------------------------------------------- certificate data

namespace {

// b₃,₀ = −(1+γ²)(p(γ) + q(γ)√(γ⁴−1))/r(γ) at γ = γ₁, coefficients in ascending degree.
const std::vector<long long> kP = {66632,  -283193, 552058, -791360, 956648,
                                   -941661, 714646, -392544, 145056, -30331,
                                   622,    1440,    -336,   17,      2};
const std::vector<long long> kQ = {-6656,  -102903, 356580, -545119, 508794, -312190, 126944,
                                   -32062, 3812,    213,    -100,    -3,     2};
// Minimal polynomial of γ₁: (3−γ)⁴ = γ⁴ + 3  ⇔  2γ³ − 9γ² + 18γ − 13 = 0.
const std::vector<long long> kM = {-13, 18, -9, 2};

std::string fnv1a_checksum() {
  std::ostringstream text;
  text << "p:";
  for (long long v : kP) text << v << ",";
  text << "q:";
  for (long long v : kQ) text << v << ",";
  text << "m:";
  for (long long v : kM) text << v << ",";
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

const std::vector<long long>& b30_p_coefficients() { return kP; }
const std::vector<long long>& b30_q_coefficients() { return kQ; }
const std::vector<long long>& gamma1_minimal_polynomial() { return kM; }
std::string b30_coefficient_checksum() { return fnv1a_checksum(); }

double b30_closed_form(double g) {
  const RationalPoly p = RationalPoly::from_integers(kP), q = RationalPoly::from_integers(kQ);
  const double s = std::sqrt(g * g * g * g - 1.0);
  const double r = 64.0 * std::sqrt(-(g - 3.0) * g) * ((g - 3.0) * g + 5.0) * ((g - 3.0) * g + 6.0) *
                   (s + (g - 6.0) * g + 11.0) * std::pow(g * (s + (g - 1.0) * g + 1.0) - 1.0, 2);
  return -(1.0 + g * g) * (p.eval(g) + q.eval(g) * s) / r;
}

std::string CertificateReport::verdict() const {
  return gcd_is_one ? "gcd=1; b30 nonzero" : "gcd!=1; certificate failed";
}

CertificateReport certify_b30() {
  CertificateReport rep;
  const RationalPoly m = RationalPoly::from_integers(kM);
  const RationalPoly p = RationalPoly::from_integers(kP);
  const RationalPoly q = RationalPoly::from_integers(kQ);
  const RationalPoly xi4m1 = RationalPoly::from_integers({-1, 0, 0, 0, 1});

  // (i) γ₁ is the unique root of m in (1, 2)
  rep.root_bracketed = m(Rational(1)) < 0 && m(Rational(2)) > 0;
  rep.real_roots_in_1_2 = sturm_count(m, Rational(1), Rational(2));

  // (ii)-(iii) g = p² − q²(ξ⁴−1) shares no root with m
  const RationalPoly g = p * p - q * q * xi4m1;
  rep.gcd = gcd(g, m);
  rep.gcd_is_one = rep.gcd.degree() == 0;

  // (iv) bisection on m down to width 2⁻⁶⁰, then interval evaluation of r's factors
  Rational lo = 1, hi = 2;
  for (int it = 0; it < 60; ++it) {
    const Rational mid = (lo + hi) / 2;
    (m(mid) < 0 ? lo : hi) = mid;
  }
  rep.gamma_lo = lo;
  rep.gamma_hi = hi;
  const RInterval gam{lo, hi};
  const RInterval s = sqrt(eval(xi4m1, gam));
  const RInterval g3 = (gam + Rational(-3)) * gam;  // (γ−3)γ
  const RInterval f_sqrt_arg = -g3;
  const RInterval f1 = g3 + Rational(5);
  const RInterval f2 = g3 + Rational(6);
  const RInterval f3 = s + (gam + Rational(-6)) * gam + Rational(11);
  const RInterval f4 = gam * (s + (gam + Rational(-1)) * gam + Rational(1)) + Rational(-1);
  rep.r_factors_positive = f_sqrt_arg.positive() && f1.positive() && f2.positive() &&
                           f3.positive() && f4.positive();
  const RInterval numerator = eval(p, gam) + eval(q, gam) * s;
  rep.numerator_nonzero = !numerator.contains_zero();

  rep.b30_numeric = b30_closed_form(0.5 * (static_cast<double>(lo) + static_cast<double>(hi)));
  rep.checksum = fnv1a_checksum();
  if (!rep.gcd_is_one) throw CertificateError("certify_b30: gcd(g, m) = " + rep.gcd.to_string());
  return rep;
}

}  // namespace stw
