// SPDX-License-Identifier: Apache-2.0
// Graded (ε, δ) series whose coefficients are trigonometric polynomials.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace stw {

using Rational = boost::multiprecision::cpp_rational;

// Complex number over an arbitrary real field (exact rationals or doubles).
template <class S>
struct Coef {
  S re{};
  S im{};

  Coef() = default;
  Coef(S r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Coef(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == S(0) && im == S(0); }
  Coef conj() const { return {re, -im}; }

  Coef operator+(const Coef& o) const { return {re + o.re, im + o.im}; }
  Coef operator-(const Coef& o) const { return {re - o.re, im - o.im}; }
  Coef operator-() const { return {-re, -im}; }
  Coef operator*(const Coef& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Coef& operator+=(const Coef& o) { re += o.re; im += o.im; return *this; }
  bool operator==(const Coef& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Coef& o) const { return !(*this == o); }
};

inline std::complex<double> to_complex(const Coef<double>& c) { return {c.re, c.im}; }
inline std::complex<double> to_complex(const Coef<Rational>& c) {
  return {static_cast<double>(c.re), static_cast<double>(c.im)};
}

// Finite Fourier sum Σ c_k e^{ikx}; exact zeros are never stored.
template <class S>
class TrigPoly {
 public:
  using C = Coef<S>;
  using Map = std::map<int, C>;

  TrigPoly() = default;

  static TrigPoly constant(const S& a) { TrigPoly t; t.add_to(0, C(a)); return t; }
  // a·cos(m x) = a/2 (e^{imx} + e^{-imx})
  static TrigPoly cos_term(int m, const S& a) {
    TrigPoly t;
    if (m == 0) { t.add_to(0, C(a)); return t; }
    t.add_to(m, C(a / S(2)));
    t.add_to(-m, C(a / S(2)));
    return t;
  }
  // a·sin(m x) = a/(2i) (e^{imx} - e^{-imx})
  static TrigPoly sin_term(int m, const S& a) {
    TrigPoly t;
    if (m == 0) return t;
    t.add_to(m, C(S(0), -a / S(2)));
    t.add_to(-m, C(S(0), a / S(2)));
    return t;
  }
  static TrigPoly exp_term(int k, const C& a) { TrigPoly t; t.add_to(k, a); return t; }

  const Map& coeffs() const { return c_; }
  C coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? C() : it->second;
  }
  bool empty() const { return c_.empty(); }
  int max_abs_wavenumber() const {
    int m = 0;
    for (const auto& [k, v] : c_) m = std::max(m, std::abs(k));
    return m;
  }

  void add_to(int k, const C& v) {
    auto it = c_.find(k);
    if (it == c_.end()) {
      if (!v.is_zero()) c_.emplace(k, v);
      return;
    }
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }

  TrigPoly operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    for (const auto& [k, v] : o.c_) r.add_to(k, v);
    return r;
  }
  TrigPoly operator-() const {
    TrigPoly r;
    for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
    return r;
  }
  TrigPoly operator-(const TrigPoly& o) const { return *this + (-o); }
  TrigPoly scaled(const C& a) const {
    TrigPoly r;
    for (const auto& [k, v] : c_) r.add_to(k, v * a);
    return r;
  }
  bool operator==(const TrigPoly& o) const { return c_ == o.c_; }
  bool operator!=(const TrigPoly& o) const { return !(*this == o); }

  // coeff(-k) == conj(coeff(k)) for every k.
  bool is_real_valued() const {
    for (const auto& [k, v] : c_)
      if (coeff(-k) != v.conj()) return false;
    return true;
  }
  // Real-valued and even (pure cosine series) / odd (pure sine series).
  bool is_even() const {
    for (const auto& [k, v] : c_)
      if (coeff(-k) != v) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [k, v] : c_)
      if (coeff(-k) != -v) return false;
    return true;
  }

 private:
  Map c_;
};

// Cauchy product of Fourier coefficient sequences.
template <class S>
TrigPoly<S> trig_mul(const TrigPoly<S>& a, const TrigPoly<S>& b) {
  TrigPoly<S> r;
  for (const auto& [ka, va] : a.coeffs())
    for (const auto& [kb, vb] : b.coeffs()) r.add_to(ka + kb, va * vb);
  return r;
}

// Fourier multiplier: coeff_out(k) = sym(k)·coeff_f(k).
template <class S>
TrigPoly<S> apply_multiplier(const std::function<Coef<S>(int)>& sym, const TrigPoly<S>& f) {
  TrigPoly<S> r;
  for (const auto& [k, v] : f.coeffs()) r.add_to(k, sym(k) * v);
  return r;
}

template <class S>
TrigPoly<S> d_x(const TrigPoly<S>& f) {
  return apply_multiplier<S>([](int k) { return Coef<S>(S(0), S(k)); }, f);
}
template <class S>
TrigPoly<S> abs_d(const TrigPoly<S>& f) {
  return apply_multiplier<S>([](int k) { return Coef<S>(S(std::abs(k))); }, f);
}

template <class S>
TrigPoly<double> to_float(const TrigPoly<S>& f) {
  TrigPoly<double> r;
  for (const auto& [k, v] : f.coeffs()) {
    auto z = to_complex(v);
    r.add_to(k, Coef<double>(z.real(), z.imag()));
  }
  return r;
}

// Σ_{m+n ≤ max_order} ε^m δ^n T_{m,n}(x).
template <class S>
class GradedSeries {
 public:
  using Key = std::pair<int, int>;
  using Poly = TrigPoly<S>;

  explicit GradedSeries(int max_order = 3) : max_order_(max_order) {
    if (max_order < 0) throw std::invalid_argument("GradedSeries: negative cutoff");
  }

  int max_order() const { return max_order_; }
  const std::map<Key, Poly>& terms() const { return terms_; }

  Poly term(int m, int n = 0) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? Poly() : it->second;
  }
  void add_term(int m, int n, const Poly& p) {
    if (m < 0 || n < 0) throw std::invalid_argument("GradedSeries: negative order");
    if (m + n > max_order_) return;
    Poly sum = term(m, n) + p;
    if (sum.empty()) terms_.erase({m, n});
    else terms_[{m, n}] = sum;
  }
  void set_term(int m, int n, const Poly& p) {
    terms_.erase({m, n});
    add_term(m, n, p);
  }

  GradedSeries truncated(int cutoff) const {
    GradedSeries r(std::min(cutoff, max_order_));
    for (const auto& [key, p] : terms_) r.add_term(key.first, key.second, p);
    return r;
  }

  GradedSeries operator+(const GradedSeries& o) const {
    GradedSeries r(std::min(max_order_, o.max_order_));
    for (const auto& [key, p] : terms_) r.add_term(key.first, key.second, p);
    for (const auto& [key, p] : o.terms_) r.add_term(key.first, key.second, p);
    return r;
  }
  GradedSeries operator-() const {
    GradedSeries r(max_order_);
    for (const auto& [key, p] : terms_) r.terms_[key] = -p;
    return r;
  }
  GradedSeries operator-(const GradedSeries& o) const { return *this + (-o); }
  GradedSeries operator*(const GradedSeries& o) const {
    GradedSeries r(std::min(max_order_, o.max_order_));
    for (const auto& [ka, pa] : terms_)
      for (const auto& [kb, pb] : o.terms_) {
        const int m = ka.first + kb.first, n = ka.second + kb.second;
        if (m + n <= r.max_order_) r.add_term(m, n, trig_mul(pa, pb));
      }
    return r;
  }
  GradedSeries scaled(const Coef<S>& a) const {
    GradedSeries r(max_order_);
    for (const auto& [key, p] : terms_) r.add_term(key.first, key.second, p.scaled(a));
    return r;
  }
  // Apply a linear x-operator to every coefficient.
  GradedSeries map(const std::function<Poly(const Poly&)>& op) const {
    GradedSeries r(max_order_);
    for (const auto& [key, p] : terms_) r.add_term(key.first, key.second, op(p));
    return r;
  }
  bool operator==(const GradedSeries& o) const {
    return max_order_ == o.max_order_ && terms_ == o.terms_;
  }

  static GradedSeries constant(const S& a, int max_order) {
    GradedSeries r(max_order);
    r.add_term(0, 0, Poly::constant(a));
    return r;
  }

 private:
  int max_order_;
  std::map<Key, Poly> terms_;
};

// Bilinear lift of an x-operator to series: orders add, result truncated.
template <class S>
GradedSeries<S> series_bilinear(
    const GradedSeries<S>& a, const GradedSeries<S>& b,
    const std::function<TrigPoly<S>(const TrigPoly<S>&, const TrigPoly<S>&)>& op) {
  GradedSeries<S> r(std::min(a.max_order(), b.max_order()));
  for (const auto& [ka, pa] : a.terms())
    for (const auto& [kb, pb] : b.terms()) {
      const int m = ka.first + kb.first, n = ka.second + kb.second;
      if (m + n <= r.max_order()) r.add_term(m, n, op(pa, pb));
    }
  return r;
}

// 1/a for a series whose (0,0) term is a nonzero constant.
template <class S>
GradedSeries<S> reciprocal(const GradedSeries<S>& a) {
  const TrigPoly<S> a0 = a.term(0, 0);
  if (a0.coeffs().size() != 1 || a0.coeff(0).is_zero() || a0.coeff(0).im != S(0))
    throw std::invalid_argument("reciprocal: leading term must be a nonzero real constant");
  const S inv0 = S(1) / a0.coeff(0).re;
  GradedSeries<S> u = a.scaled(Coef<S>(inv0)) - GradedSeries<S>::constant(S(1), a.max_order());
  // 1/(1+u) = Σ (-u)^n, u = O(ε+δ)
  GradedSeries<S> result = GradedSeries<S>::constant(S(1), a.max_order());
  GradedSeries<S> power = result;
  const GradedSeries<S> neg_u = -u;
  for (int n = 1; n <= a.max_order(); ++n) {
    power = power * neg_u;
    result = result + power;
  }
  return result.scaled(Coef<S>(inv0));
}

// f∘ζ with ζ = x + w, w = O(ε): Σ_n w^n/n! · ∂x^n f, truncated at the common cutoff.
template <class S>
GradedSeries<S> compose_with_zeta(const GradedSeries<S>& f, const GradedSeries<S>& zeta_minus_x) {
  if (f.max_order() != zeta_minus_x.max_order())
    throw std::invalid_argument("compose_with_zeta: cutoff mismatch");
  for (const auto& [key, p] : zeta_minus_x.terms())
    if (key.first + key.second == 0)
      throw std::invalid_argument("compose_with_zeta: zeta must equal x at order zero");
  const int cutoff = f.max_order();
  GradedSeries<S> result = f;
  GradedSeries<S> w_pow = GradedSeries<S>::constant(S(1), cutoff);
  GradedSeries<S> deriv = f;
  S factorial = 1;
  for (int n = 1; n <= cutoff; ++n) {
    w_pow = w_pow * zeta_minus_x;
    deriv = deriv.map([](const TrigPoly<S>& p) { return d_x(p); });
    factorial *= n;
    result = result + (w_pow * deriv).scaled(Coef<S>(S(1) / factorial));
  }
  return result;
}

template <class S>
GradedSeries<double> to_float(const GradedSeries<S>& s) {
  GradedSeries<double> r(s.max_order());
  for (const auto& [key, p] : s.terms()) r.add_term(key.first, key.second, to_float(p));
  return r;
}

// Shape derivatives of the Dirichlet–Neumann operator at the flat surface.
// G′(0)η̄ψ = −|D|(η̄|D|ψ) − ∂x(η̄∂xψ)
template <class S>
TrigPoly<S> dn_first_variation(const TrigPoly<S>& eta_bar, const TrigPoly<S>& psi) {
  return -abs_d(trig_mul(eta_bar, abs_d(psi))) - d_x(trig_mul(eta_bar, d_x(psi)));
}
// G″(0)[η̄,η̃]ψ = |D|{η̃|D|(η̄|D|ψ)} + |D|{η̄|D|(η̃|D|ψ)} + |D|{η̄η̃∂x²ψ} + ∂x²{η̄η̃|D|ψ}
template <class S>
TrigPoly<S> dn_second_variation(const TrigPoly<S>& eta_bar, const TrigPoly<S>& eta_tilde,
                                const TrigPoly<S>& psi) {
  const TrigPoly<S> dpsi = abs_d(psi);
  const TrigPoly<S> prod = trig_mul(eta_bar, eta_tilde);
  return abs_d(trig_mul(eta_tilde, abs_d(trig_mul(eta_bar, dpsi)))) +
         abs_d(trig_mul(eta_bar, abs_d(trig_mul(eta_tilde, dpsi)))) +
         abs_d(trig_mul(prod, d_x(d_x(psi)))) + d_x(d_x(trig_mul(prod, dpsi)));
}

// G(η)ψ ≈ G(0)ψ + G′(0)ηψ + ½G″(0)[η,η]ψ for series η, ψ (exact through ε³ when η, ψ = O(ε)).
template <class S>
GradedSeries<S> dn_apply_series(const GradedSeries<S>& eta, const GradedSeries<S>& psi) {
  GradedSeries<S> r = psi.map([](const TrigPoly<S>& p) { return abs_d(p); });
  r = r + series_bilinear<S>(eta, psi, [](const TrigPoly<S>& e, const TrigPoly<S>& p) {
        return dn_first_variation(e, p);
      });
  const int cutoff = r.max_order();
  GradedSeries<S> second(cutoff);
  for (const auto& [ka, ea] : eta.terms())
    for (const auto& [kb, eb] : eta.terms())
      for (const auto& [kc, pc] : psi.terms()) {
        const int m = ka.first + kb.first + kc.first;
        const int n = ka.second + kb.second + kc.second;
        if (m + n <= cutoff)
          second.add_term(m, n, dn_second_variation(ea, eb, pc).scaled(Coef<S>(S(1) / S(2))));
      }
  return r + second;
}

// Result of the Riemann-stretch reconstruction of the linearized coefficients.
struct PQSeries {
  GradedSeries<Rational> p;
  GradedSeries<Rational> q;
  GradedSeries<Rational> qz;  // (1+q)/ζ′
};

// Rebuilds p, q and (1+q)/ζ′ through ε³ from the Stokes profiles in exact arithmetic.
PQSeries reconstruct_pq();

// Intermediate quantities of the reconstruction, exposed for testing.
struct PQIntermediates {
  GradedSeries<Rational> b_star;
  GradedSeries<Rational> v_star;
  GradedSeries<Rational> b_star_zeta;
  GradedSeries<Rational> v_star_zeta;
  GradedSeries<Rational> eta_zeta;
};
PQIntermediates reconstruct_intermediates();

// Human-readable rendering "k:re+im i; ..." used in diagnostics.
std::string to_string(const TrigPoly<Rational>& p);

}  // namespace stw
