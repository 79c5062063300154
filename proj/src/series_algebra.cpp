// SPDX-License-Identifier: Apache-2.0
#include "stw/series_algebra.hpp"

#include "stw/stokes_coeffs.hpp"

#include <sstream>

namespace stw {

namespace {

using Poly = TrigPoly<Rational>;
using Series = GradedSeries<Rational>;

Poly dx(const Poly& p) { return d_x(p); }

}  // namespace

PQIntermediates reconstruct_intermediates() {
  const StokesExpansion s = stokes_profiles();
  const Series eta = s.eta.truncated(3);
  const Series psi = s.psi.truncated(3);
  const Series one = Series::constant(1, 3);
  const Series eta_x = eta.map(dx);
  const Series psi_x = psi.map(dx);

  PQIntermediates r;
  // B* = (G(η)ψ + ηxψx)/(1 + ηx²),  V* = ψx − ηx B*
  r.b_star = (dn_apply_series(eta, psi) + eta_x * psi_x) * reciprocal(one + eta_x * eta_x);
  r.v_star = psi_x - eta_x * r.b_star;
  r.b_star_zeta = compose_with_zeta(r.b_star, s.zeta_minus_x);
  r.v_star_zeta = compose_with_zeta(r.v_star, s.zeta_minus_x);
  r.eta_zeta = compose_with_zeta(eta, s.zeta_minus_x);
  return r;
}

PQSeries reconstruct_pq() {
  const StokesExpansion s = stokes_profiles();
  const PQIntermediates in = reconstruct_intermediates();
  const Series one = Series::constant(1, 3);
  const Series zeta_prime = one + s.zeta_minus_x.map(dx);
  const Series inv_zeta_prime = reciprocal(zeta_prime);

  PQSeries r;
  // p = (c − V*∘ζ)/ζ′,  q = −p ∂x(B*∘ζ)
  r.p = (s.c1.truncated(3) - in.v_star_zeta) * inv_zeta_prime;
  r.q = -(r.p * in.b_star_zeta.map(dx));
  r.qz = (one + r.q) * inv_zeta_prime;
  return r;
}

std::string to_string(const TrigPoly<Rational>& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p.coeffs()) {
    if (!first) os << "; ";
    first = false;
    os << k << ":" << v.re << (v.im < 0 ? "" : "+") << v.im << "i";
  }
  return os.str();
}

}  // namespace stw
