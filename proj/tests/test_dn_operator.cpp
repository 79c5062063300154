// SPDX-License-Identifier: Apache-2.0
// Dirichlet–Neumann hierarchy: ODE solver, multipliers, closed forms, β-derivatives.
#include <doctest.h>

#include "stw/dispersion.hpp"
#include "stw/dn_operator.hpp"

#include <cmath>
#include <stdexcept>

using doctest::Approx;
using stw::cplx;

TEST_CASE("exponential sums merge equal rates and reject growing terms") {
  stw::ExpSum s;
  s.add(2.0, 1.5);
  s.add(3.0, 1.5 + 1e-12);
  CHECK(s.terms().size() == 1);
  CHECK(std::abs(s.terms()[0].amplitude - cplx(5.0)) < 1e-15);
  s.add(1.0, 2.0);
  CHECK(s.terms().size() == 2);
  CHECK(std::abs(s.value(0.0) - cplx(6.0)) < 1e-15);
  CHECK(std::abs(s.derivative(0.0) - cplx(9.5)) < 1e-15);
  CHECK_THROWS_AS(s.add(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(s.add(1.0, 0.0), std::domain_error);
}

TEST_CASE("decaying ODE solutions satisfy the equation and boundary condition") {
  stw::ExpSum forcing;
  forcing.add(1.0, 3.0);
  forcing.add(cplx(0.5, -0.25), 0.5);
  const double kappa2 = 2.0;
  for (bool zero : {true, false}) {
    const stw::ExpSum sol = stw::solve_decaying_ode(kappa2, forcing, zero);
    CHECK(std::abs(sol.value(0.0) - cplx(zero ? 0.0 : 1.0)) < 1e-14);
    for (double z : {0.0, -0.3, -1.7}) {
      cplx second = 0.0;
      for (const auto& t : sol.terms()) second += t.amplitude * t.rate * t.rate * std::exp(t.rate * z);
      CHECK(std::abs(second - kappa2 * sol.value(z) - forcing.value(z)) < 1e-13);
    }
  }
  stw::ExpSum resonant;
  resonant.add(1.0, std::sqrt(2.0));
  CHECK_THROWS_AS(stw::solve_decaying_ode(2.0, resonant, true), std::domain_error);
  CHECK_THROWS_AS(stw::solve_decaying_ode(-1.0, forcing, true), std::domain_error);
}

TEST_CASE("zeroth multiplier is the flat-surface symbol Omega") {
  const double beta = 1.3;
  const stw::MultiplierSet set = stw::hierarchy_multipliers(beta, -6, 6);
  for (int k = -6; k <= 6; ++k) CHECK(std::abs(set[0].at(k, 0) - stw::omega(k, beta)) < 1e-13);
  CHECK(set[0].offsets.size() == 1);
  CHECK(set[0].at(7, 0) == cplx(0.0));  // outside the table
  CHECK_THROWS_AS(stw::hierarchy_multipliers(0.0, -1, 1), std::domain_error);
}

TEST_CASE("hierarchy reproduces the closed forms") {
  using stw::BWhich;
  using stw::Sign;
  for (double beta : {0.5, 2.7275211478813812, 5.0}) {
    CAPTURE(beta);
    const stw::MultiplierSet set = stw::hierarchy_multipliers(beta, -8, 8);
    for (int k = -8; k <= 8; ++k) {
      CHECK(std::abs(set[1].at(k, -1) - stw::closed_form_C(k, beta, Sign::minus)) < 1e-11);
      CHECK(std::abs(set[1].at(k, 1) - stw::closed_form_C(k, beta, Sign::plus)) < 1e-11);
      CHECK(std::abs(set[2].at(k, -2) - stw::closed_form_B(k, beta, BWhich::minus)) < 1e-11);
      CHECK(std::abs(set[2].at(k, 0) - stw::closed_form_B(k, beta, BWhich::zero)) < 1e-11);
      CHECK(std::abs(set[2].at(k, 2) - stw::closed_form_B(k, beta, BWhich::plus)) < 1e-11);
      CHECK(std::abs(set[3].at(k, -3) - stw::closed_form_D3(k, beta, Sign::minus)) < 1e-11);
      CHECK(std::abs(set[3].at(k, 3) - stw::closed_form_D3(k, beta, Sign::plus)) < 1e-11);
    }
  }
}

TEST_CASE("two closed forms of B0 agree") {
  for (double beta : {0.3, 1.0, 4.0})
    for (int k = -10; k <= 10; ++k)
      CHECK(stw::closed_form_B(k, beta, stw::BWhich::zero) ==
            Approx(stw::closed_form_B0_via_A(k, beta)).epsilon(1e-12));
}

TEST_CASE("multipliers are real and symmetric under k -> -k") {
  const double beta = 2.0;
  const stw::MultiplierSet set = stw::hierarchy_multipliers(beta, -7, 7);
  for (int j = 0; j <= 3; ++j)
    for (const auto& [d, column] : set[static_cast<std::size_t>(j)].offsets)
      for (int k = -7; k <= 7; ++k) {
        if (!set[static_cast<std::size_t>(j)].contains(-k)) continue;
        const cplx a = set[static_cast<std::size_t>(j)].at(k, d);
        CHECK(std::abs(a.imag()) < 1e-12);
        // coefficient of f̂(k+d) at k equals that of f̂(−k−d) at −k
        CHECK(std::abs(a - set[static_cast<std::size_t>(j)].at(-k, -d)) < 1e-12);
      }
}

TEST_CASE("first multiplier vanishes as beta -> 0") {
  const stw::MultiplierSet set = stw::hierarchy_multipliers(1e-8, -5, 5);
  for (int k = -5; k <= 5; ++k) CHECK(std::abs(set[1].at(k, -1)) < 1e-6);
}

TEST_CASE("beta derivatives match analytic and finite-difference values") {
  const double beta = 2.7275211478813812;
  const std::vector<stw::MultiplierSet> t = stw::beta_taylor(2, beta, -5, 5);
  REQUIRE(t.size() == 3);
  for (int k = -5; k <= 5; ++k) {
    const double om = stw::omega(k, beta);
    CHECK(std::abs(t[0][0].at(k, 0) - om) < 1e-11);
    CHECK(std::abs(t[1][0].at(k, 0) - 0.5 / om) < 1e-10);
    CHECK(std::abs(t[2][0].at(k, 0) + 0.125 / (om * om * om)) < 1e-10);
    const double h = 1e-4;
    const double fd = (stw::closed_form_C(k, beta + h, stw::Sign::minus) -
                       stw::closed_form_C(k, beta - h, stw::Sign::minus)) /
                      (2.0 * h);
    CHECK(std::abs(t[1][1].at(k, -1) - fd) < 1e-7);
  }
  const stw::MultiplierTable single = stw::beta_derivative(1, 1, beta, -5, 5);
  CHECK(std::abs(single.at(2, -1) - t[1][1].at(2, -1)) < 1e-12);
  CHECK_THROWS_AS(stw::beta_derivative(4, 1, beta, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(stw::beta_derivatives(0, beta, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(stw::beta_taylor(1, -1.0, -1, 1), std::domain_error);
}

TEST_CASE("serial and parallel hierarchies agree bitwise") {
  const double beta = 2.7275211478813812;
  const stw::MultiplierSet a = stw::hierarchy_multipliers(beta, -10, 10, stw::Exec::serial);
  const stw::MultiplierSet b = stw::hierarchy_multipliers(beta, -10, 10, stw::Exec::parallel);
  for (int j = 0; j <= 3; ++j) CHECK(a[static_cast<std::size_t>(j)].offsets == b[static_cast<std::size_t>(j)].offsets);
  const auto ta = stw::beta_taylor(2, beta, -4, 4, {}, stw::Exec::serial);
  const auto tb = stw::beta_taylor(2, beta, -4, 4, {}, stw::Exec::parallel);
  for (std::size_t l = 0; l < ta.size(); ++l)
    for (int j = 0; j <= 3; ++j)
      CHECK(ta[l][static_cast<std::size_t>(j)].offsets == tb[l][static_cast<std::size_t>(j)].offsets);
}
