// SPDX-License-Identifier: Apache-2.0
// Dispersion relation of the transverse problem and the resonance point.
#pragma once

#include <complex>

namespace stw {

struct ResonanceData {
  double beta_star = 0.0;
  double sigma = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

enum class Branch { plus, minus };

// Ω(k) = (k² + β)^{1/2}; throws std::domain_error for β ≤ 0.
double omega(double k, double beta);
// Principal-branch continuation of Ω used for complex β.
std::complex<double> omega(double k, std::complex<double> beta);

// λ⁰±(k) = i[k ± (k² + β)^{1/4}]
std::complex<double> lambda0(int k, double beta, Branch branch);

// Unique β* > 0 with (β*+4)^{1/4} + (β*+1)^{1/4} = 3: bisection then Newton.
ResonanceData solve_resonance();

// |(β+4)^{1/4} + (β+1)^{1/4} − 3|
double resonance_residual(double beta);

// Distance from iσ to the nearest unperturbed eigenvalue other than the resonant pair.
double spectral_gap(const ResonanceData& res, int k_max);

}  // namespace stw
