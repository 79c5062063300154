// SPDX-License-Identifier: Apache-2.0
// Dispersion relation, resonance point and spectral gap.
#include <doctest.h>

#include "stw/dispersion.hpp"

#include <cmath>
#include <stdexcept>

using doctest::Approx;

TEST_CASE("resonance point matches the reference constants") {
  const stw::ResonanceData r = stw::solve_resonance();
  CHECK(r.beta_star == Approx(2.7275211478813812).epsilon(1e-14));
  CHECK(r.sigma == Approx(-0.3894887313100712).epsilon(1e-13));
  CHECK(r.gamma1 == Approx(1.3894887313100712).epsilon(1e-14));
  CHECK(r.gamma2 == Approx(1.610511268689929).epsilon(1e-14));
  CHECK(stw::resonance_residual(r.beta_star) < 1e-14);
}

TEST_CASE("resonance constants satisfy their defining relations") {
  const stw::ResonanceData r = stw::solve_resonance();
  // γ₁ = (β*+1)^{1/4}, γ₂ = (β*+4)^{1/4}
  CHECK(std::pow(r.beta_star + 1.0, 0.25) == Approx(r.gamma1).epsilon(1e-15));
  CHECK(std::pow(r.beta_star + 4.0, 0.25) == Approx(r.gamma2).epsilon(1e-15));
  CHECK(r.gamma1 + r.gamma2 == Approx(3.0).epsilon(1e-15));
  CHECK(r.sigma == Approx(1.0 - r.gamma1).epsilon(1e-14));
  // γ₁ is a root of 2γ³ − 9γ² + 18γ − 13
  const double g = r.gamma1;
  CHECK(std::abs(((2.0 * g - 9.0) * g + 18.0) * g - 13.0) < 1e-13);
}

TEST_CASE("the resonant pair collides at i sigma") {
  const stw::ResonanceData r = stw::solve_resonance();
  const auto a = stw::lambda0(-2, r.beta_star, stw::Branch::plus);
  const auto b = stw::lambda0(1, r.beta_star, stw::Branch::minus);
  CHECK(std::abs(a.real()) == 0.0);
  CHECK(a.imag() == Approx(r.sigma).epsilon(1e-13));
  CHECK(b.imag() == Approx(r.sigma).epsilon(1e-13));
  // away from the resonance the pair separates
  CHECK(std::abs(stw::lambda0(-2, 2.0, stw::Branch::plus) - stw::lambda0(1, 2.0, stw::Branch::minus)) >
        1e-3);
}

TEST_CASE("omega is the positive square root and rejects nonpositive beta") {
  CHECK(stw::omega(3.0, 7.0) == Approx(4.0));
  CHECK(stw::omega(0.0, 2.0) == Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(stw::omega(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(stw::omega(1.0, -1.0), std::domain_error);
  // the complex continuation agrees on the real axis
  const std::complex<double> z = stw::omega(3.0, std::complex<double>(7.0, 0.0));
  CHECK(z.real() == Approx(4.0));
  CHECK(z.imag() == Approx(0.0));
}

TEST_CASE("spectral gap around i sigma") {
  const stw::ResonanceData r = stw::solve_resonance();
  const double gap = stw::spectral_gap(r, 50);
  CHECK(gap == Approx(0.759958147884).epsilon(1e-10));
  // independent brute-force minimum over both branches
  double brute = 1e300;
  for (int k = -50; k <= 50; ++k)
    for (auto br : {stw::Branch::plus, stw::Branch::minus}) {
      if ((k == -2 && br == stw::Branch::plus) || (k == 1 && br == stw::Branch::minus)) continue;
      brute = std::min(brute, std::abs(stw::lambda0(k, r.beta_star, br).imag() - r.sigma));
    }
  CHECK(gap == Approx(brute).epsilon(1e-14));
}
