// SPDX-License-Identifier: Apache-2.0
// Discriminant, unstable eigenvalues, isola geometry and the exact b₃,₀ certificate.
#include <doctest.h>

#include "stw/errors.hpp"
#include "stw/instability_analysis.hpp"

#include <cmath>
#include <stdexcept>

using doctest::Approx;
using stw::Rational;
using stw::RationalPoly;

namespace {

// The reference coefficient table, used as fixed input.
stw::CoeffTable reference_table() {
  stw::CoeffTable t;
  t.a01 = -0.0931912038;
  t.a20 = -0.4972909772;
  t.a02 = 0.0093753194;
  t.a21 = -0.0081152843;
  t.a03 = -0.0014671778;
  t.b30 = -0.4947603203;
  t.c01 = 0.0598478709;
  t.c20 = 1.0862586489;
  t.c02 = -0.0033359912;
  t.c21 = -0.0002576496;
  t.c03 = 0.0002892588;
  return t;
}

const double kSigma = -0.3894887313100712;

}  // namespace

TEST_CASE("eigenvalues at the resonance are a double i sigma") {
  const auto [lp, lm] = stw::eigenvalues(0.0, 0.0, reference_table(), kSigma);
  CHECK(std::abs(lp - std::complex<double>(0.0, kSigma)) < 1e-15);
  CHECK(std::abs(lm - std::complex<double>(0.0, kSigma)) < 1e-15);
}

TEST_CASE("the eigenvalue pair sums to a purely imaginary number") {
  for (double eps : {0.0, 0.01, 0.05})
    for (double delta : {-0.01, -0.001, 0.002}) {
      const auto [lp, lm] = stw::eigenvalues(eps, delta, reference_table(), kSigma);
      CHECK(std::abs((lp + lm).real()) < 1e-15);
    }
}

TEST_CASE("no instability without amplitude; instability at the isola centre") {
  const stw::CoeffTable t = reference_table();
  for (double delta : {-0.1, -0.01, 0.0, 0.01, 0.1}) CHECK(stw::discriminant(0.0, delta, t) <= 0.0);
  const double eps = 0.01;
  const double kappa0 = -(t.a20 - t.c20) / (t.a01 - t.c01);
  CHECK(stw::discriminant(eps, kappa0 * eps * eps, t) > 0.0);
  const auto [lp, lm] = stw::eigenvalues(eps, kappa0 * eps * eps, t, kSigma);
  CHECK(lp.real() > 0.0);
  CHECK(lm.real() == Approx(-lp.real()));
}

TEST_CASE("isola window matches the independent closed forms and frozen values") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  CHECK(ip.kappa0 == Approx(-(t.a20 - t.c20) / (t.a01 - t.c01)).epsilon(1e-14));
  CHECK(ip.kappa1 == Approx(2.0 * std::abs(t.b30) / std::abs(t.a01 - t.c01)).epsilon(1e-14));
  CHECK(ip.kappa0 == Approx(-10.3473549452).epsilon(1e-9));
  CHECK(ip.kappa1 == Approx(6.4658038653).epsilon(1e-9));
}

TEST_CASE("discriminant scales like eps^6 inside the window") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  const double theta = 0.4 * ip.kappa1;
  const double limit = 4.0 * t.b30 * t.b30 - std::pow((t.a01 - t.c01) * theta, 2);
  double prev_err = 1e300;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double d = stw::discriminant(eps, ip.kappa0 * eps * eps + theta * eps * eps * eps, t) /
                     std::pow(eps, 6);
    const double err = std::abs(d - limit);
    CHECK(err < prev_err);
    prev_err = err;
  }
  CHECK(prev_err < 1e-3 * limit);
}

TEST_CASE("maximal growth rate scales like eps^3") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  auto growth = [&](double eps) {
    return stw::eigenvalues(eps, ip.kappa0 * eps * eps, t, kSigma).first.real();
  };
  const double slope = std::log(growth(0.01) / growth(0.005)) / std::log(2.0);
  CHECK(slope > 2.9);
  CHECK(slope < 3.1);
  CHECK(growth(1e-3) / 1e-9 == Approx(std::abs(t.b30)).epsilon(1e-2));
}

TEST_CASE("ellipse constants") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  CHECK(ip.center_drift == Approx((t.a01 * t.c20 - t.a20 * t.c01) / (t.a01 - t.c01)).epsilon(1e-14));
  CHECK(ip.center_drift == Approx(0.466991).epsilon(1e-5));
  CHECK(1.0 / (ip.semi_minor * ip.semi_minor) == Approx(4.085171).epsilon(1e-6));
  CHECK(1.0 / (ip.semi_major * ip.semi_major) == Approx(86.059124).epsilon(1e-6));
}

TEST_CASE("isola points: widest at theta=0, closing at the window edges") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  const double eps = 0.01;
  const auto pts = stw::isola_points(eps, t, kSigma, 41);
  REQUIRE(pts.size() == 41);
  const auto& mid = pts[20];
  CHECK(mid.theta == Approx(0.0));
  for (const auto& p : pts) {
    CHECK(p.lambda_plus.real() >= 0.0);
    CHECK(p.lambda_plus.real() <= mid.lambda_plus.real() + 1e-18);
    CHECK(std::abs(p.theta) < ip.kappa1);
    CHECK(p.delta == Approx(ip.kappa0 * eps * eps + p.theta * eps * eps * eps));
  }
  CHECK(pts.front().lambda_plus.real() < 0.2 * mid.lambda_plus.real());
  // symmetric grid
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].theta == Approx(-pts[pts.size() - 1 - i].theta));
  CHECK_THROWS_AS(stw::isola_points(0.0, t, kSigma, 11), std::domain_error);
}

TEST_CASE("unstable eigenvalues approach the ellipse as eps decreases") {
  const stw::CoeffTable t = reference_table();
  const stw::IsolaParams ip = stw::isola_params(t);
  double prev = 1e300;
  for (double eps : {0.02, 0.01, 0.005}) {
    double worst = 0.0;
    for (const auto& p : stw::isola_points(eps, t, kSigma, 21))
      worst = std::max(worst, std::abs(stw::ellipse_form(eps, p.lambda_plus, ip, kSigma) - 1.0));
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev < 0.05);
  // without third-order terms the points lie on the ellipse exactly, up to rounding
  const stw::CoeffTable t2 = stw::second_order_truncation(t);
  CHECK(t2.b30 == 0.0);
  CHECK(t2.a03 == 0.0);
  CHECK(t2.a20 == t.a20);
}

TEST_CASE("degenerate first delta coefficients are rejected") {
  stw::CoeffTable t = reference_table();
  t.c01 = t.a01;
  CHECK_THROWS_AS(stw::isola_params(t), std::domain_error);
}

TEST_CASE("product identity for the first delta coefficients") {
  const stw::ResonanceData res = stw::solve_resonance();
  const double g1 = res.gamma1, g2 = res.gamma2;
  const double v = stw::first_delta_product_identity(res);
  CHECK(v == Approx(-0.005577295132408).epsilon(1e-12));
  CHECK(v == Approx(-1.0 / (16.0 * std::pow(g1 * g2, 3))).epsilon(1e-13));
  const stw::CoeffTable t = reference_table();
  CHECK(t.a01 * t.c01 == Approx(v).epsilon(1e-8));
}

TEST_CASE("rational polynomial arithmetic") {
  const RationalPoly x2m1 = RationalPoly::from_integers({-1, 0, 1});
  const RationalPoly xm1 = RationalPoly::from_integers({-1, 1});
  const auto [q, r] = stw::divmod(x2m1, xm1);
  CHECK(q == RationalPoly::from_integers({1, 1}));
  CHECK(r.is_zero());
  CHECK(stw::gcd(x2m1, RationalPoly::from_integers({1, 2, 1})) == RationalPoly::from_integers({1, 1}));
  CHECK(stw::gcd(x2m1, RationalPoly::from_integers({2, 0, 1})).degree() == 0);
  CHECK(x2m1.derivative() == RationalPoly::from_integers({0, 2}));
  CHECK(x2m1(Rational(3)) == 8);
  CHECK(x2m1.to_string() == "x^2 - 1");
  CHECK(RationalPoly{}.degree() == -1);
  CHECK_THROWS_AS(stw::divmod(x2m1, RationalPoly{}), std::domain_error);
  // (x−1)(x−2)(x−3) has two roots in (0, 5/2]
  const RationalPoly cubic = xm1 * RationalPoly::from_integers({-2, 1}) * RationalPoly::from_integers({-3, 1});
  CHECK(stw::sturm_count(cubic, Rational(0), Rational(5, 2)) == 2);
  CHECK(stw::sturm_count(cubic, Rational(0), Rational(4)) == 3);
}

TEST_CASE("interval enclosures are rigorous") {
  const stw::RInterval two = stw::RInterval::point(2);
  const stw::RInterval s = stw::sqrt(two);
  CHECK(s.lo * s.lo <= 2);
  CHECK(s.hi * s.hi >= 2);
  CHECK(s.hi - s.lo < Rational(1, 1000000000));
  const stw::RInterval a{Rational(-1), Rational(2)};
  const stw::RInterval prod = a * a;
  CHECK(prod.lo == -2);
  CHECK(prod.hi == 4);
  CHECK(a.contains_zero());
  CHECK((a + Rational(2)).positive());
  CHECK_THROWS_AS(stw::sqrt(a), std::domain_error);
  const stw::RInterval e = stw::eval(RationalPoly::from_integers({-1, 0, 1}), stw::RInterval{Rational(2), Rational(3)});
  CHECK(e.lo <= 3);
  CHECK(e.hi >= 8);
}

TEST_CASE("b30 certificate") {
  const RationalPoly m = RationalPoly::from_integers(stw::gamma1_minimal_polynomial());
  CHECK(m(Rational(1)) == -2);
  CHECK(m(Rational(2)) == 3);
  CHECK(stw::b30_coefficient_checksum() == "2eed1cd46bcf5d02");
  CHECK(stw::b30_p_coefficients().size() == 15);
  CHECK(stw::b30_q_coefficients().size() == 13);

  const stw::CertificateReport rep = stw::certify_b30();
  CHECK(rep.ok());
  CHECK(rep.root_bracketed);
  CHECK(rep.real_roots_in_1_2 == 1);
  CHECK(rep.gcd_is_one);
  CHECK(rep.r_factors_positive);
  CHECK(rep.numerator_nonzero);
  CHECK(rep.verdict() == "gcd=1; b30 nonzero");
  const stw::ResonanceData res = stw::solve_resonance();
  CHECK(rep.gamma_lo <= Rational(res.gamma1) + Rational(1, 1000000000000LL));
  CHECK(rep.gamma_hi >= Rational(res.gamma1) - Rational(1, 1000000000000LL));
  CHECK(rep.b30_numeric == Approx(-0.494760320270).epsilon(1e-10));
  CHECK(stw::b30_closed_form(res.gamma1) == Approx(reference_table().b30).epsilon(1e-9));
}
