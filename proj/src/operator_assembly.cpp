// SPDX-License-Identifier: Apache-2.0
#include "stw/operator_assembly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stw {

int mode_count(int k_max) { return 2 * (2 * k_max + 1); }

int mode_index(int k_max, int component, int k) {
  return component * (2 * k_max + 1) + (k + k_max);
}

std::set<int> ModeVector::support(double tol) const {
  std::set<int> s;
  for (int c = 0; c < 2; ++c)
    for (int k = -k_max; k <= k_max; ++k)
      if (std::abs(v[mode_index(k_max, c, k)]) > tol) s.insert(k);
  return s;
}

AssemblyContext make_context(const ResonanceData& res, int k_max, Exec exec) {
  if (k_max < 6) throw std::invalid_argument("make_context: k_max must be at least 6");
  AssemblyContext ctx;
  ctx.res = res;
  ctx.k_max = k_max;
  const PQSeries pq = reconstruct_pq();
  for (int j = 0; j <= 3; ++j) {
    ctx.qz[static_cast<std::size_t>(j)] = to_float(pq.qz.term(j));
    ctx.p[static_cast<std::size_t>(j)] = to_float(pq.p.term(j));
  }
  const auto taylor = beta_taylor(3, res.beta_star, -k_max, k_max, CauchyOptions{}, exec);
  ctx.r[0] = hierarchy_multipliers(res.beta_star, -k_max, k_max, exec);
  for (std::size_t ell = 1; ell <= 3; ++ell) ctx.r[ell] = taylor[ell];
  return ctx;
}

namespace {

// Matrix of multiplication by f on one component: M[k, k′] = f̂(k − k′).
Mat multiplication_block(const TrigPoly<double>& f, int k_max) {
  const int n = 2 * k_max + 1;
  Mat m = Mat::Zero(n, n);
  for (int k = -k_max; k <= k_max; ++k)
    for (const auto& [s, c] : f.coeffs()) {
      const int kp = k - s;
      if (kp >= -k_max && kp <= k_max) m(k + k_max, kp + k_max) = to_complex(c);
    }
  return m;
}

Mat dx_block(int k_max) {
  const int n = 2 * k_max + 1;
  Mat m = Mat::Zero(n, n);
  for (int k = -k_max; k <= k_max; ++k) m(k + k_max, k + k_max) = cplx(0.0, k);
  return m;
}

// (R f)^(k) = Σ_d R(k, d) f̂(k + d), couplings leaving the truncation dropped.
Mat multiplier_block(const MultiplierTable& tab, int k_max) {
  const int n = 2 * k_max + 1;
  Mat m = Mat::Zero(n, n);
  for (const auto& [d, column] : tab.offsets)
    for (int k = -k_max; k <= k_max; ++k) {
      const int kp = k + d;
      if (kp >= -k_max && kp <= k_max) m(k + k_max, kp + k_max) = tab.at(k, d);
    }
  return m;
}

// [[a(x), −p(x)∂x], [∂x(p(x)·), R]]
Mat hamiltonian_blocks(const TrigPoly<double>& a, const TrigPoly<double>& p, const Mat& r,
                       int k_max) {
  const int n = 2 * k_max + 1;
  const Mat mp = multiplication_block(p, k_max);
  const Mat dx = dx_block(k_max);
  Mat h = Mat::Zero(2 * n, 2 * n);
  h.block(0, 0, n, n) = multiplication_block(a, k_max);
  h.block(0, n, n, n) = -mp * dx;
  h.block(n, 0, n, n) = dx * mp;
  h.block(n, n, n, n) = r;
  return h;
}

}  // namespace

TruncatedOperator assemble_H_order(int j, int ell, const AssemblyContext& ctx) {
  if (j < 0 || j > 3 || ell < 0 || ell > 3)
    throw std::invalid_argument("assemble_H_order: orders must lie in 0..3");
  const int k_max = ctx.k_max;
  if (k_max < j + 3) throw std::invalid_argument("assemble_H_order: k_max too small for the band");
  const auto ju = static_cast<std::size_t>(j);
  const Mat r = multiplier_block(ctx.r[static_cast<std::size_t>(ell)][ju], k_max);
  TruncatedOperator op{k_max, Mat()};
  if (ell == 0) {
    op.m = hamiltonian_blocks(ctx.qz[ju], ctx.p[ju], r, k_max);
  } else {
    // R_{j,ℓ}·K: only the ψψ corner depends on β
    const int n = 2 * k_max + 1;
    op.m = Mat::Zero(2 * n, 2 * n);
    op.m.block(n, n, n, n) = r;
  }
  return op;
}

TruncatedOperator assemble_H(double eps, double delta, const AssemblyContext& ctx, LMode mode) {
  if (std::abs(eps) > 0.2) throw std::invalid_argument("assemble_H: |eps| exceeds 0.2");
  const double beta = ctx.res.beta_star + delta;
  if (!(beta > 0.0)) throw std::invalid_argument("assemble_H: beta* + delta must be positive");
  const int k_max = ctx.k_max;
  const int n = mode_count(k_max);
  TruncatedOperator h{k_max, Mat::Zero(n, n)};
  if (mode == LMode::expanded3) {
    for (int j = 0; j <= 3; ++j)
      for (int ell = 0; ell <= 3; ++ell)
        h.m += std::pow(eps, j) * std::pow(delta, ell) * assemble_H_order(j, ell, ctx).m;
    return h;
  }
  const MultiplierSet r = hierarchy_multipliers(beta, -k_max, k_max);
  for (int j = 0; j <= 3; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    h.m += std::pow(eps, j) *
           hamiltonian_blocks(ctx.qz[ju], ctx.p[ju], multiplier_block(r[ju], k_max), k_max);
  }
  return h;
}

TruncatedOperator symplectic_J(int k_max) {
  const int n = 2 * k_max + 1;
  TruncatedOperator j{k_max, Mat::Zero(2 * n, 2 * n)};
  j.m.block(0, n, n, n) = Mat::Identity(n, n);
  j.m.block(n, 0, n, n) = -Mat::Identity(n, n);
  return j;
}

TruncatedOperator assemble_L(double eps, double delta, const AssemblyContext& ctx, LMode mode) {
  TruncatedOperator h = assemble_H(eps, delta, ctx, mode);
  const int n = 2 * ctx.k_max + 1;
  // J·H swaps the row blocks: [H_ψ; −H_η]
  TruncatedOperator l{ctx.k_max, Mat(2 * n, 2 * n)};
  l.m.topRows(n) = h.m.bottomRows(n);
  l.m.bottomRows(n) = -h.m.topRows(n);
  return l;
}

Vec reversal(const Vec& v, int k_max) {
  Vec out(v.size());
  for (int k = -k_max; k <= k_max; ++k) {
    out[mode_index(k_max, 0, k)] = -std::conj(v[mode_index(k_max, 0, k)]);
    out[mode_index(k_max, 1, k)] = std::conj(v[mode_index(k_max, 1, k)]);
  }
  return out;
}

Vec basis_U(int j, const ResonanceData& res, int k_max) {
  if (j != 1 && j != 2) throw std::invalid_argument("basis_U: j must be 1 or 2");
  Vec u = Vec::Zero(mode_count(k_max));
  if (j == 1) {
    u[mode_index(k_max, 0, 1)] = cplx(0.0, res.gamma1);
    u[mode_index(k_max, 1, 1)] = 1.0;
  } else {
    u[mode_index(k_max, 0, -2)] = cplx(0.0, -res.gamma2);
    u[mode_index(k_max, 1, -2)] = 1.0;
  }
  return u;
}

Vec basis_V(int j, const ResonanceData& res, int k_max) {
  return basis_U(j, res, k_max) / std::sqrt(j == 1 ? res.gamma1 : res.gamma2);
}

Vec resolvent_apply_L0(cplx lambda, const Vec& v, const ResonanceData& res, int k_max) {
  Vec out(v.size());
  for (int k = -k_max; k <= k_max; ++k) {
    // [[ik − λ, Ω(k)], [−1, ik − λ]]⁻¹ = [[d, −Ω], [1, d]] / (d² + Ω), d = ik − λ
    const cplx d = cplx(0.0, k) - lambda;
    const double om = omega(k, res.beta_star);
    const cplx det = d * d + om;
    if (std::abs(det) < 1e-12) throw std::domain_error("resolvent_apply_L0: near-singular block");
    const cplx a = v[mode_index(k_max, 0, k)], b = v[mode_index(k_max, 1, k)];
    out[mode_index(k_max, 0, k)] = (d * a - om * b) / det;
    out[mode_index(k_max, 1, k)] = (a + d * b) / det;
  }
  return out;
}

ModeVector resolvent_apply_L0(cplx lambda, const ModeVector& v, const ResonanceData& res) {
  return {v.k_max, resolvent_apply_L0(lambda, v.v, res, v.k_max)};
}

cplx l2_inner(const Vec& f, const Vec& g) {
  // Eigen's dot conjugates its first argument: g.dot(f) = Σ ḡ f
  return 2.0 * std::numbers::pi * g.dot(f);
}

}  // namespace stw
