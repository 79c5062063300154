// SPDX-License-Identifier: Apache-2.0
#include "stw/stokes_coeffs.hpp"

#include <stdexcept>

namespace stw {

namespace {

using Poly = TrigPoly<Rational>;

Rational q(long num, long den = 1) { return Rational(num, den); }

Rational max_abs_coeff(const Poly& p) {
  Rational m = 0;
  for (const auto& [k, v] : p.coeffs()) {
    m = std::max(m, Rational(abs(v.re)));
    m = std::max(m, Rational(abs(v.im)));
  }
  return m;
}

}  // namespace

StokesExpansion stokes_profiles() {
  StokesExpansion s;
  s.eta.add_term(1, 0, Poly::cos_term(1, q(1)));
  s.eta.add_term(2, 0, Poly::cos_term(2, q(1, 2)));
  s.eta.add_term(3, 0, Poly::cos_term(1, q(1, 8)) + Poly::cos_term(3, q(3, 8)));
  s.eta.add_term(4, 0, Poly::cos_term(2, q(5, 6)) + Poly::cos_term(4, q(1, 3)));

  // ψ³ = ¼(3 sin x cos 2x + sin x) = −⅛ sin x + ⅜ sin 3x
  s.psi.add_term(1, 0, Poly::sin_term(1, q(1)));
  s.psi.add_term(2, 0, Poly::sin_term(2, q(1, 2)));
  s.psi.add_term(3, 0,
                 (trig_mul(Poly::sin_term(1, q(3)), Poly::cos_term(2, q(1))) + Poly::sin_term(1, q(1)))
                     .scaled(Coef<Rational>(q(1, 4))));
  s.psi.add_term(4, 0, Poly::sin_term(2, q(5, 12)) + Poly::sin_term(4, q(1, 3)));

  s.c1.add_term(0, 0, Poly::constant(q(1)));
  s.c1.add_term(2, 0, Poly::constant(q(1, 2)));

  s.zeta_minus_x.add_term(1, 0, Poly::sin_term(1, q(1)));
  s.zeta_minus_x.add_term(2, 0, Poly::sin_term(2, q(1)));
  s.zeta_minus_x.add_term(3, 0, Poly::sin_term(1, q(-1)) + Poly::sin_term(3, q(3, 2)));
  return s;
}

ResidualReport check_appendixA_residuals(int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("check_appendixA_residuals: order must be 1, 2 or 3");
  const StokesExpansion s = stokes_profiles();
  const auto eta = s.eta.truncated(3);
  const auto psi = s.psi.truncated(3);
  const auto c = s.c1.truncated(3);
  auto dx = [](const Poly& p) { return d_x(p); };
  const auto eta_x = eta.map(dx);
  const auto psi_x = psi.map(dx);
  const auto g_psi = dn_apply_series(eta, psi);

  // F₁ = c∂xη + G(η)ψ
  const auto f1 = c * eta_x + g_psi;
  // F₂ = c∂xψ − ½ψx² + ½(Gψ + ψxηx)²/(1 + ηx²) − η
  const auto one = GradedSeries<Rational>::constant(q(1), 3);
  const auto num = g_psi + psi_x * eta_x;
  const auto f2 = c * psi_x - (psi_x * psi_x).scaled(Coef<Rational>(q(1, 2))) +
                  (num * num * reciprocal(one + eta_x * eta_x)).scaled(Coef<Rational>(q(1, 2))) - eta;

  ResidualReport r;
  r.order = order;
  r.kinematic = max_abs_coeff(f1.term(order));
  r.bernoulli = max_abs_coeff(f2.term(order));
  return r;
}

}  // namespace stw
