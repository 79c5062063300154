// SPDX-License-Identifier: Apache-2.0
// Riesz projectors by contour quadrature, Kato's similarity transform, and the
// order-by-order extraction of the reduced 2×2 matrix coefficients.
#pragma once

#include "stw/operator_assembly.hpp"

#include <Eigen/Dense>

#include <map>
#include <utility>
#include <vector>

namespace stw {

struct ContourSpec {
  cplx center;
  double radius = 0.0;
  int nodes = 128;

  cplx node(int t) const;  // λ_t = center + r e^{2πit/N}
};

// Circle around iσ with radius gap/2 (gap enumerated over |k| ≤ 50).
ContourSpec default_contour(const ResonanceData& res, int nodes = 128);
void validate_contour(const ContourSpec& c, const ResonanceData& res);

// P = −(1/2πi)∮(L − λ)⁻¹dλ with the LU factorization of every node kept, so that P
// can be applied to vectors cheaply. Node results are summed in node order.
class ContourProjector {
 public:
  ContourProjector(const Mat& l, const ContourSpec& contour, Exec exec = Exec::parallel);

  Vec apply(const Vec& v) const;
  // Same sum restricted to the even nodes (an N/2-node rule), for quadrature error control.
  Vec apply_half(const Vec& v) const;
  Mat dense() const;

 private:
  Vec sum_nodes(const Vec& v, int stride) const;

  ContourSpec contour_;
  Exec exec_;
  std::vector<Eigen::PartialPivLU<Mat>> lu_;
};

// Dense projector. Throws NumericError when an eigenvalue lies within 10⁻³ of the
// contour (smallest-singular-value probe at 8 points) or when the N- and N/2-node
// rules differ by more than 10⁻⁹.
Mat projector(const Mat& l, const ContourSpec& contour, Exec exec = Exec::parallel);
TruncatedOperator projector(double eps, double delta, const ContourSpec& contour,
                            const AssemblyContext& ctx, LMode mode, Exec exec = Exec::parallel);
// Serial reference: explicit inverse at each node, accumulated in node order.
Mat projector_reference(const Mat& l, const ContourSpec& contour);

// Analytic rank-2 spectral projector of L_{0,β*} onto span{U₁, U₂}.
Mat unperturbed_projector(const ResonanceData& res, int k_max);

// K = [1 − (P−P0)²]^{−1/2}[P·P0 + (1−P)(1−P0)], inverse square root by binomial series.
Mat kato_transform(const Mat& p, const Mat& p0);
// K·v using only projector applications.
Vec kato_apply(const ContourProjector& p, const Mat& p0, const Vec& v);

// Perturbed symplectic basis V_j^{ε,δ} = K V_j and the reduced matrix of L in it.
struct DirectReduction {
  Vec v1, v2;
  Eigen::Matrix2cd matrix;
};
DirectReduction reduce_direct(double eps, double delta, const ContourSpec& contour,
                              const AssemblyContext& ctx, LMode mode, Exec exec = Exec::parallel);
Eigen::Matrix2cd reduced_matrix_direct(double eps, double delta, const ContourSpec& contour,
                                       const AssemblyContext& ctx, LMode mode,
                                       Exec exec = Exec::parallel);

using Order = std::pair<int, int>;  // (ε-order m, δ-order n)
using VecSeries = std::map<Order, Vec>;

// Taylor coefficients p_{m,n} = P^{m,n}/(m!n!) of the projector at (0, 0), applied to
// vectors: each is a contour integral of the resolvent coefficient
// T^{m,n}(λ) = −Σ S_λ L^{a,b} T^{m−a,n−b}(λ), T^{0,0} = S_λ, with S_λ blockwise.
class PerturbativeKato {
 public:
  PerturbativeKato(const AssemblyContext& ctx, const ContourSpec& contour,
                   Exec exec = Exec::parallel);

  // p_{m,n}v for every m+n ≤ max_order (excluding (0,0) unless include_zero).
  VecSeries apply_all(const Vec& v, int max_order, bool include_zero = false) const;
  Vec apply(int m, int n, const Vec& v) const;

  // P^{m,n}U_j = m!n!·p_{m,n}U_j for j = 1, 2.
  std::pair<Vec, Vec> pmn_corrections(int m, int n) const;

  // Taylor coefficients U^{(m,n)} of K_{ε,δ}U for m+n ≤ 3:
  // [XU + ½X²U + ½X³U]_{m,n} with X = Σ p_{a,b}ε^aδ^b.
  VecSeries eigvec_corrections(const Vec& u) const;

  const AssemblyContext& context() const { return ctx_; }
  const std::map<Order, Mat>& hamiltonian_orders() const { return h_; }

 private:
  const AssemblyContext& ctx_;
  ContourSpec contour_;
  Exec exec_;
  std::map<Order, Mat> h_;  // H^{a,b}, a+b ≤ 3
  std::map<Order, Mat> l_;  // J·H^{a,b}, (a,b) ≠ (0,0)
};

struct CoeffTable {
  double a01 = 0, a20 = 0, a02 = 0, a21 = 0, a03 = 0;
  double b30 = 0;
  double c01 = 0, c20 = 0, c02 = 0, c21 = 0, c03 = 0;
};

// Full expansions A_{m,n}, B_{m,n}, C_{m,n} (complex, before the reality check) and the
// second off-diagonal B′ = −L₂₁ coefficients, for m+n ≤ 3.
struct ReducedExpansion {
  std::map<Order, cplx> a, b, c, b_lower;
  double max_forbidden = 0.0;  // largest coefficient the reversibility structure requires to vanish
  double max_imaginary = 0.0;  // largest imaginary part among A, B, C coefficients
  double max_asymmetry = 0.0;  // max |B − B′|
  CoeffTable table;
};

// Inner-product expansions of the reduced matrix from the eigenvector corrections.
ReducedExpansion reduced_expansion(const PerturbativeKato& engine);
// Throws ConsistencyError when the vanishing pattern is violated above 10⁻⁸.
CoeffTable extract_coeff_table(const PerturbativeKato& engine);
CoeffTable extract_coeff_table(const ReducedExpansion& expansion);

}  // namespace stw
