// SPDX-License-Identifier: Apache-2.0
// Truncated Fourier matrices of the linearized Hamiltonian and of L = J·H.
//
// Index layout: component c ∈ {0 (η-row), 1 (ψ-row)}, wavenumber k ∈ [−K, K],
// flat index c·(2K+1) + (k+K).
#pragma once

#include "stw/dispersion.hpp"
#include "stw/dn_operator.hpp"
#include "stw/series_algebra.hpp"

#include <Eigen/Dense>

#include <array>
#include <set>

namespace stw {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

int mode_count(int k_max);  // 2(2K+1)
int mode_index(int k_max, int component, int k);

struct TruncatedOperator {
  int k_max = 0;
  Mat m;
};

struct ModeVector {
  int k_max = 0;
  Vec v;

  // Wavenumbers carrying a coefficient of modulus above tol in either component.
  std::set<int> support(double tol = 1e-10) const;
};

enum class LMode { expanded3, direct_beta };

// Everything needed to assemble H^{j,ℓ}: the float coefficient profiles and the
// multiplier tables R_{j,ℓ} at β* on k ∈ [−K, K].
struct AssemblyContext {
  ResonanceData res;
  int k_max = 0;
  std::array<TrigPoly<double>, 4> qz;  // ε^j coefficient of (1+q)/ζ′
  std::array<TrigPoly<double>, 4> p;   // ε^j coefficient of p
  std::array<MultiplierSet, 4> r;      // r[ℓ][j] = R_{j,ℓ}
};

AssemblyContext make_context(const ResonanceData& res, int k_max, Exec exec = Exec::parallel);

// Matrix of H^{j,ℓ}; throws std::invalid_argument when K < j + 3.
TruncatedOperator assemble_H_order(int j, int ell, const AssemblyContext& ctx);

// H_{ε, β*+δ}: expanded3 sums ε^jδ^ℓ H^{j,ℓ} (j, ℓ ≤ 3); direct_beta evaluates R_j at β*+δ.
TruncatedOperator assemble_H(double eps, double delta, const AssemblyContext& ctx, LMode mode);
TruncatedOperator assemble_L(double eps, double delta, const AssemblyContext& ctx, LMode mode);

// Symplectic structure J = [[0, 1], [−1, 0]] on the truncation.
TruncatedOperator symplectic_J(int k_max);

// Antilinear reversal (v₁, v₂)(x) ↦ (−v̄₁(−x), v̄₂(−x)) acting on coefficients.
Vec reversal(const Vec& v, int k_max);

// Unperturbed basis U₁ = (iγ₁, 1)e^{ix}, U₂ = (−iγ₂, 1)e^{−2ix} and V_j = U_j/√γ_j.
Vec basis_U(int j, const ResonanceData& res, int k_max);
Vec basis_V(int j, const ResonanceData& res, int k_max);

// S_λ v = (L_{0,β*} − λ)⁻¹ v by per-wavenumber closed-form 2×2 inverses.
Vec resolvent_apply_L0(cplx lambda, const Vec& v, const ResonanceData& res, int k_max);
ModeVector resolvent_apply_L0(cplx lambda, const ModeVector& v, const ResonanceData& res);

// L² pairing (f, g) = ∫ f·ḡ dx = 2π Σ f_k ḡ_k.
cplx l2_inner(const Vec& f, const Vec& g);

}  // namespace stw
