// SPDX-License-Identifier: Apache-2.0
#include "stw/dispersion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stw {

double omega(double k, double beta) {
  if (!(beta > 0.0)) throw std::domain_error("omega: beta must be positive");
  return std::sqrt(k * k + beta);
}

std::complex<double> omega(double k, std::complex<double> beta) {
  return std::sqrt(std::complex<double>(k * k) + beta);
}

std::complex<double> lambda0(int k, double beta, Branch branch) {
  const double root = std::sqrt(omega(k, beta));
  return {0.0, branch == Branch::plus ? k + root : k - root};
}

namespace {

double resonance_fn(double beta) {
  return std::pow(beta + 4.0, 0.25) + std::pow(beta + 1.0, 0.25) - 3.0;
}
double resonance_fn_prime(double beta) {
  return 0.25 * std::pow(beta + 4.0, -0.75) + 0.25 * std::pow(beta + 1.0, -0.75);
}

}  // namespace

double resonance_residual(double beta) { return std::abs(resonance_fn(beta)); }

ResonanceData solve_resonance() {
  // The function is increasing in β, negative at 10⁻³ and positive at 10².
  double lo = 1e-3, hi = 1e2;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (resonance_fn(mid) < 0.0 ? lo : hi) = mid;
  }
  double beta = 0.5 * (lo + hi);
  for (int it = 0; it < 20; ++it) {
    const double step = resonance_fn(beta) / resonance_fn_prime(beta);
    beta -= step;
    if (std::abs(step) < 1e-16 * beta) break;
  }
  if (resonance_residual(beta) > 1e-14)
    throw std::runtime_error("solve_resonance: Newton polish did not converge");

  ResonanceData r;
  r.beta_star = beta;
  r.gamma1 = std::pow(beta + 1.0, 0.25);
  r.gamma2 = std::pow(beta + 4.0, 0.25);
  r.sigma = 1.0 - r.gamma1;
  return r;
}

double spectral_gap(const ResonanceData& res, int k_max) {
  if (k_max < 8) throw std::invalid_argument("spectral_gap: k_max must be at least 8");
  double gap = std::numeric_limits<double>::infinity();
  for (int k = -k_max; k <= k_max; ++k)
    for (Branch b : {Branch::plus, Branch::minus}) {
      if ((k == -2 && b == Branch::plus) || (k == 1 && b == Branch::minus)) continue;
      gap = std::min(gap, std::abs(lambda0(k, res.beta_star, b).imag() - res.sigma));
    }
  return gap;
}

}  // namespace stw
