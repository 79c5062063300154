// SPDX-License-Identifier: Apache-2.0
// Stokes-wave profiles: reference coefficients and exact residuals of the
// travelling-wave equations.
#include <doctest.h>

#include "stw/stokes_coeffs.hpp"

using stw::Rational;
using P = stw::TrigPoly<Rational>;

TEST_CASE("eta and psi match the reference expansion through fourth order") {
  const stw::StokesExpansion s = stw::stokes_profiles();
  CHECK(s.eta.term(1) == P::cos_term(1, 1));
  CHECK(s.eta.term(2) == P::cos_term(2, Rational(1, 2)));
  CHECK(s.eta.term(3) == P::cos_term(1, Rational(1, 8)) + P::cos_term(3, Rational(3, 8)));
  CHECK(s.eta.term(4) == P::cos_term(2, Rational(5, 6)) + P::cos_term(4, Rational(1, 3)));

  CHECK(s.psi.term(1) == P::sin_term(1, 1));
  CHECK(s.psi.term(2) == P::sin_term(2, Rational(1, 2)));
  // ¼(3 sin x cos 2x + sin x) = 3/8 sin 3x − 1/8 sin x
  CHECK(s.psi.term(3) == P::sin_term(3, Rational(3, 8)) + P::sin_term(1, Rational(-1, 8)));
  CHECK(s.psi.term(4) == P::sin_term(2, Rational(5, 12)) + P::sin_term(4, Rational(1, 3)));

  CHECK(s.c1.term(0) == P::constant(1));
  CHECK(s.c1.term(1) == P{});
  CHECK(s.c1.term(2) == P::constant(Rational(1, 2)));
  CHECK(s.c1.term(3) == P{});
}

TEST_CASE("Riemann stretch matches its reference expansion through third order") {
  const stw::StokesExpansion s = stw::stokes_profiles();
  CHECK(s.zeta_minus_x.term(0) == P{});
  CHECK(s.zeta_minus_x.term(1) == P::sin_term(1, 1));
  CHECK(s.zeta_minus_x.term(2) == P::sin_term(2, 1));
  CHECK(s.zeta_minus_x.term(3) == P::sin_term(1, -1) + P::sin_term(3, Rational(3, 2)));
}

TEST_CASE("profiles have the symmetry of a symmetric Stokes wave") {
  const stw::StokesExpansion s = stw::stokes_profiles();
  for (int m = 1; m <= 4; ++m) {
    CHECK(s.eta.term(m).is_even());
    CHECK(s.psi.term(m).is_odd());
    CHECK(s.eta.term(m).is_real_valued());
    CHECK(s.psi.term(m).is_real_valued());
  }
}

TEST_CASE("kinematic and Bernoulli residuals vanish exactly through third order") {
  for (int order = 1; order <= 3; ++order) {
    const stw::ResidualReport r = stw::check_appendixA_residuals(order);
    CAPTURE(order);
    CHECK(r.order == order);
    CHECK(r.kinematic == 0);
    CHECK(r.bernoulli == 0);
    CHECK(r.vanishes());
  }
}
