// SPDX-License-Identifier: Apache-2.0
// Frozen small-amplitude Stokes-wave expansions and their residual self-check.
#pragma once

#include "stw/series_algebra.hpp"

#include <array>

namespace stw {

struct StokesExpansion {
  GradedSeries<Rational> eta{4};           // ε-orders 1..4
  GradedSeries<Rational> psi{4};           // ε-orders 1..4
  GradedSeries<Rational> c1{4};            // 1 + ε²/2
  GradedSeries<Rational> zeta_minus_x{3};  // ε-orders 1..3
};

// η, ψ, c₁ with g = 1, and the Riemann stretch ζ − x, in exact rationals.
StokesExpansion stokes_profiles();

struct ResidualReport {
  int order = 0;
  Rational kinematic;  // max |coefficient| of the kinematic residual at this order
  Rational bernoulli;  // max |coefficient| of the Bernoulli residual at this order
  bool vanishes() const { return kinematic == 0 && bernoulli == 0; }
};

// Kinematic and Bernoulli residuals of the travelling-wave system at ε^order (order ∈ {1,2,3}).
ResidualReport check_appendixA_residuals(int order);

}  // namespace stw
