// SPDX-License-Identifier: Apache-2.0
// Expansion of the flattened Dirichlet–Neumann operator in powers of ε.
//
// Each Θ^j(k, z) is an exponential sum in the vertical variable z ≤ 0; the
// multiplier R_j is read off as ∂zΘ^j at z = 0. The hierarchy accepts complex β
// so that β-derivatives can be taken by Cauchy integrals.
#pragma once

#include "stw/parallel.hpp"

#include <array>
#include <complex>
#include <map>
#include <vector>

namespace stw {

using cplx = std::complex<double>;

struct ExpTerm {
  cplx amplitude;
  cplx rate;  // Re(rate) > 0 so that the term decays as z → −∞
};

// Σ aᵢ e^{μᵢ z}; rates closer than 10⁻⁹ are merged by adding amplitudes.
class ExpSum {
 public:
  static constexpr double rate_tolerance = 1e-9;

  void add(cplx amplitude, cplx rate);
  void add(const ExpSum& other, cplx scale = 1.0, cplx rate_shift = 0.0);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  cplx value(double z) const;
  cplx derivative(double z) const;

 private:
  std::vector<ExpTerm> terms_;
};

// Decaying solution of ∂z²P − κ²P = forcing on z ≤ 0. With boundary_zero the
// homogeneous correction enforces P(0) = 0; otherwise P(0) = 1.
// Throws std::domain_error when a forcing rate μ satisfies μ² = κ².
ExpSum solve_decaying_ode(cplx kappa2, const ExpSum& forcing, bool boundary_zero);
inline ExpSum solve_decaying_ode(double kappa2, const ExpSum& forcing, bool boundary_zero) {
  if (!(kappa2 > 0.0)) throw std::domain_error("solve_decaying_ode: kappa2 must be positive");
  return solve_decaying_ode(cplx(kappa2), forcing, boundary_zero);
}

// Band of wavenumber-offset coefficients: (R_j f)^(k) = Σ_d coeff(k, d) f̂(k + d).
struct MultiplierTable {
  int order = 0;
  int k_lo = 0;
  int k_hi = -1;
  std::map<int, std::vector<cplx>> offsets;  // d → values for k = k_lo..k_hi

  cplx at(int k, int d) const;
  bool contains(int k) const { return k >= k_lo && k <= k_hi; }
};

using MultiplierSet = std::array<MultiplierTable, 4>;

// R₀..R₃ at β for wavenumbers k_lo..k_hi via the exponential-sum hierarchy.
MultiplierSet hierarchy_multipliers(cplx beta, int k_lo, int k_hi, Exec exec = Exec::parallel);
inline MultiplierSet hierarchy_multipliers(double beta, int k_lo, int k_hi,
                                           Exec exec = Exec::parallel) {
  if (!(beta > 0.0)) throw std::domain_error("hierarchy_multipliers: beta must be positive");
  return hierarchy_multipliers(cplx(beta), k_lo, k_hi, exec);
}

enum class Sign { minus, plus };
enum class BWhich { minus, zero, plus };

// C^±_k = β[Ω(k±1) + Ω(k) + 1]⁻¹
double closed_form_C(int k, double beta, Sign sign);
// Ω-only forms of B^−_k, B^0_k, B^+_k.
double closed_form_B(int k, double beta, BWhich which);
// B^0_k written through the auxiliary A^±_k coefficients.
double closed_form_B0_via_A(int k, double beta);
// D^{−3}_k (sign = minus) and D^{+3}_k (sign = plus).
double closed_form_D3(int k, double beta, Sign sign);

struct CauchyOptions {
  double radius_fraction = 0.1;  // r = radius_fraction · β0
  int initial_nodes = 32;
  int max_nodes = 1024;
  double tolerance = 1e-10;
};

// Taylor coefficients R_{j,ℓ} = (1/ℓ!) dˡR_j/dβˡ at β0 for ℓ = 0..max_ell and
// j = 0..3, by trapezoid Cauchy integrals on a circle of radius r in the complex
// β-plane, doubling the node count until two passes agree to opts.tolerance.
std::vector<MultiplierSet> beta_taylor(int max_ell, double beta0, int k_lo, int k_hi,
                                       const CauchyOptions& opts = {}, Exec exec = Exec::parallel);

// R_{j,ℓ} for all j at a single ℓ ≥ 1, and for a single (j, ℓ).
MultiplierSet beta_derivatives(int ell, double beta0, int k_lo, int k_hi,
                               const CauchyOptions& opts = {}, Exec exec = Exec::parallel);
MultiplierTable beta_derivative(int j, int ell, double beta0, int k_lo, int k_hi,
                                const CauchyOptions& opts = {});

}  // namespace stw
