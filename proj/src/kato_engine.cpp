// SPDX-License-Identifier: Apache-2.0
#include "stw/kato_engine.hpp"

#include "stw/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace stw {

namespace {

constexpr cplx I{0.0, 1.0};

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// −(1/2πi)·dλ per node for the N-point trapezoid rule: −r e^{iθ_t}/N.
cplx node_weight(const ContourSpec& c, int t, int count) {
  return -(c.node(t) - c.center) / double(count);
}

}  // namespace

cplx ContourSpec::node(int t) const {
  return center + std::polar(radius, 2.0 * std::numbers::pi * t / nodes);
}

ContourSpec default_contour(const ResonanceData& res, int nodes) {
  ContourSpec c{cplx(0.0, res.sigma), 0.5 * spectral_gap(res, 50), nodes};
  validate_contour(c, res);
  return c;
}

void validate_contour(const ContourSpec& c, const ResonanceData& res) {
  if (!is_power_of_two(c.nodes) || c.nodes < 32)
    throw std::invalid_argument("contour: node count must be a power of two >= 32");
  if (!(c.radius > 0.0) || c.radius >= spectral_gap(res, 50))
    throw std::invalid_argument("contour: radius must lie in (0, spectral gap)");
}

// ---------------------------------------------------------------- projectors

ContourProjector::ContourProjector(const Mat& l, const ContourSpec& contour, Exec exec)
    : contour_(contour), exec_(exec), lu_(static_cast<std::size_t>(contour.nodes)) {
  if (!is_power_of_two(contour.nodes) || contour.nodes < 32)
    throw std::invalid_argument("ContourProjector: node count must be a power of two >= 32");
  const int n = static_cast<int>(l.rows());
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int t = 0; t < contour.nodes; ++t)
    lu_[static_cast<std::size_t>(t)].compute(l - contour.node(t) * Mat::Identity(n, n));
}

Vec ContourProjector::sum_nodes(const Vec& v, int stride) const {
  const int count = contour_.nodes / stride;
  std::vector<Vec> parts(static_cast<std::size_t>(count));
  const bool par = exec_ == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int s = 0; s < count; ++s)
    parts[static_cast<std::size_t>(s)] =
        node_weight(contour_, s * stride, count) * lu_[static_cast<std::size_t>(s * stride)].solve(v);
  Vec acc = Vec::Zero(v.size());
  for (const auto& p : parts) acc += p;
  return acc;
}

Vec ContourProjector::apply(const Vec& v) const { return sum_nodes(v, 1); }
Vec ContourProjector::apply_half(const Vec& v) const { return sum_nodes(v, 2); }

Mat ContourProjector::dense() const {
  const int n = static_cast<int>(lu_.front().rows());
  Mat p(n, n);
  for (int col = 0; col < n; ++col) p.col(col) = apply(Vec::Unit(n, col));
  return p;
}

namespace {

void probe_contour(const Mat& l, const ContourSpec& contour) {
  const int n = static_cast<int>(l.rows());
  for (int q = 0; q < 8; ++q) {
    const cplx lambda = contour.center + std::polar(contour.radius, 2.0 * std::numbers::pi * (q + 0.5) / 8);
    Eigen::BDCSVD<Mat> svd(l - lambda * Mat::Identity(n, n));
    if (svd.singularValues().minCoeff() < 1e-3)
      throw NumericError("projector: an eigenvalue lies within 1e-3 of the contour");
  }
}

}  // namespace

Mat projector(const Mat& l, const ContourSpec& contour, Exec exec) {
  probe_contour(l, contour);
  const ContourProjector cp(l, contour, exec);
  const int n = static_cast<int>(l.rows());
  Mat p(n, n), half(n, n);
  for (int col = 0; col < n; ++col) {
    const Vec e = Vec::Unit(n, col);
    p.col(col) = cp.apply(e);
    half.col(col) = cp.apply_half(e);
  }
  if ((p - half).cwiseAbs().maxCoeff() > 1e-9)
    throw NumericError("projector: quadrature not converged (N vs N/2 nodes differ)");
  return p;
}

TruncatedOperator projector(double eps, double delta, const ContourSpec& contour,
                            const AssemblyContext& ctx, LMode mode, Exec exec) {
  return {ctx.k_max, projector(assemble_L(eps, delta, ctx, mode).m, contour, exec)};
}

Mat projector_reference(const Mat& l, const ContourSpec& contour) {
  const int n = static_cast<int>(l.rows());
  Mat acc = Mat::Zero(n, n);
  for (int t = 0; t < contour.nodes; ++t) {
    const Mat resolvent = (l - contour.node(t) * Mat::Identity(n, n)).inverse();
    acc += node_weight(contour, t, contour.nodes) * resolvent;
  }
  return acc;
}

Mat unperturbed_projector(const ResonanceData& res, int k_max) {
  const int n = mode_count(k_max);
  Mat p = Mat::Zero(n, n);
  const cplx lambda(0.0, res.sigma);
  for (int j = 1; j <= 2; ++j) {
    const int k = j == 1 ? 1 : -2;
    const Vec u = basis_U(j, res, k_max);
    // Left eigenvector of [[ik, Ω], [−1, ik]] at λ: w = (1, ik − λ)
    const int i0 = mode_index(k_max, 0, k), i1 = mode_index(k_max, 1, k);
    const cplx w0 = 1.0, w1 = cplx(0.0, k) - lambda;
    const cplx norm = w0 * u[i0] + w1 * u[i1];
    p(i0, i0) = u[i0] * w0 / norm;
    p(i0, i1) = u[i0] * w1 / norm;
    p(i1, i0) = u[i1] * w0 / norm;
    p(i1, i1) = u[i1] * w1 / norm;
  }
  return p;
}

// ---------------------------------------------------------------- Kato transform

Mat kato_transform(const Mat& p, const Mat& p0) {
  const int n = static_cast<int>(p.rows());
  const Mat d = p - p0;
  const double norm = Eigen::BDCSVD<Mat>(d).singularValues()(0);
  if (norm >= 1.0) throw NumericError("kato_transform: ||P - P0|| >= 1");
  const Mat id = Mat::Identity(n, n);
  const Mat y = d * d;
  const double ny = norm * norm;
  // (1 − Y)^{−1/2} = Σ c_k Y^k, c_k = c_{k−1}(2k−1)/(2k)
  Mat sum = id, power = id;
  double c = 1.0, bound = 1.0;
  for (int k = 1; k < 200; ++k) {
    c *= (2.0 * k - 1.0) / (2.0 * k);
    power = power * y;
    sum += c * power;
    bound *= ny;
    if (c * bound * ny / (1.0 - ny) < 1e-14) break;
  }
  return sum * (p * p0 + (id - p) * (id - p0));
}

Vec kato_apply(const ContourProjector& p, const Mat& p0, const Vec& v) {
  const Vec p0v = p0 * v;
  const Vec rest = v - p0v;
  const Vec w = p.apply(p0v) + rest - p.apply(rest);
  auto apply_d = [&](const Vec& x) -> Vec { return p.apply(x) - p0 * x; };
  Vec sum = w, y = w;
  double c = 1.0;
  const double scale = std::max(w.norm(), 1e-300);
  for (int k = 1; k < 200; ++k) {
    c *= (2.0 * k - 1.0) / (2.0 * k);
    y = apply_d(apply_d(y));
    sum += c * y;
    if (c * y.norm() < 1e-15 * scale) return sum;
  }
  throw NumericError("kato_apply: inverse square root series did not converge");
}

// ---------------------------------------------------------------- direct reduction

DirectReduction reduce_direct(double eps, double delta, const ContourSpec& contour,
                              const AssemblyContext& ctx, LMode mode, Exec exec) {
  const Mat h = assemble_H(eps, delta, ctx, mode).m;
  const int n = static_cast<int>(h.rows()) / 2;
  Mat l(2 * n, 2 * n);
  l.topRows(n) = h.bottomRows(n);
  l.bottomRows(n) = -h.topRows(n);
  probe_contour(l, contour);
  const ContourProjector p(l, contour, exec);
  const Mat p0 = unperturbed_projector(ctx.res, ctx.k_max);

  DirectReduction r;
  r.v1 = kato_apply(p, p0, basis_V(1, ctx.res, ctx.k_max));
  r.v2 = kato_apply(p, p0, basis_V(2, ctx.res, ctx.k_max));
  const Vec hv1 = h * r.v1, hv2 = h * r.v2;
  const double f = 1.0 / (4.0 * std::numbers::pi);
  r.matrix(0, 0) = -I * f * l2_inner(hv1, r.v1);
  r.matrix(0, 1) = I * f * l2_inner(hv1, r.v2);
  r.matrix(1, 0) = -I * f * l2_inner(hv2, r.v1);
  r.matrix(1, 1) = I * f * l2_inner(hv2, r.v2);
  return r;
}

Eigen::Matrix2cd reduced_matrix_direct(double eps, double delta, const ContourSpec& contour,
                                       const AssemblyContext& ctx, LMode mode, Exec exec) {
  return reduce_direct(eps, delta, contour, ctx, mode, exec).matrix;
}

// ---------------------------------------------------------------- perturbative route

PerturbativeKato::PerturbativeKato(const AssemblyContext& ctx, const ContourSpec& contour,
                                   Exec exec)
    : ctx_(ctx), contour_(contour), exec_(exec) {
  validate_contour(contour, ctx.res);
  const int n = 2 * ctx.k_max + 1;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      const Mat h = assemble_H_order(a, b, ctx).m;
      h_[{a, b}] = h;
      if (a + b == 0) continue;
      Mat l(2 * n, 2 * n);
      l.topRows(n) = h.bottomRows(n);
      l.bottomRows(n) = -h.topRows(n);
      l_[{a, b}] = l;
    }
}

VecSeries PerturbativeKato::apply_all(const Vec& v, int max_order, bool include_zero) const {
  const int nodes = contour_.nodes;
  const int k_max = ctx_.k_max;
  std::vector<VecSeries> per_node(static_cast<std::size_t>(nodes));
  const bool par = exec_ == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int t = 0; t < nodes; ++t) {
    const cplx lambda = contour_.node(t);
    VecSeries tv;
    tv[{0, 0}] = resolvent_apply_L0(lambda, v, ctx_.res, k_max);
    for (int total = 1; total <= max_order; ++total)
      for (int m = total; m >= 0; --m) {
        const int n = total - m;
        Vec acc = Vec::Zero(v.size());
        for (const auto& [ab, l] : l_) {
          if (ab.first > m || ab.second > n) continue;
          acc += l * tv.at({m - ab.first, n - ab.second});
        }
        tv[{m, n}] = -resolvent_apply_L0(lambda, acc, ctx_.res, k_max);
      }
    const cplx w = node_weight(contour_, t, nodes);
    for (auto& [key, x] : tv) x *= w;
    per_node[static_cast<std::size_t>(t)] = std::move(tv);
  }
  VecSeries out;
  for (const auto& tv : per_node)
    for (const auto& [key, x] : tv) {
      if (!include_zero && key.first + key.second == 0) continue;
      auto it = out.find(key);
      if (it == out.end()) out.emplace(key, x);
      else it->second += x;
    }
  return out;
}

Vec PerturbativeKato::apply(int m, int n, const Vec& v) const {
  if (m < 0 || n < 0 || m + n > 3) throw std::invalid_argument("apply: need m, n >= 0, m+n <= 3");
  return apply_all(v, m + n, true).at({m, n});
}

std::pair<Vec, Vec> PerturbativeKato::pmn_corrections(int m, int n) const {
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  for (int i = 2; i <= n; ++i) fact *= i;
  return {fact * apply(m, n, basis_U(1, ctx_.res, ctx_.k_max)),
          fact * apply(m, n, basis_U(2, ctx_.res, ctx_.k_max))};
}

VecSeries PerturbativeKato::eigvec_corrections(const Vec& u) const {
  constexpr int cutoff = 3;
  // X applied to a vector series, truncated at total order 3.
  auto apply_x = [&](const VecSeries& w) {
    VecSeries out;
    for (const auto& [cd, x] : w) {
      const int room = cutoff - (cd.first + cd.second);
      if (room < 1) continue;
      for (const auto& [ab, y] : apply_all(x, room)) {
        const Order key{ab.first + cd.first, ab.second + cd.second};
        auto it = out.find(key);
        if (it == out.end()) out.emplace(key, y);
        else it->second += y;
      }
    }
    return out;
  };
  const VecSeries w0{{{0, 0}, u}};
  const VecSeries w1 = apply_x(w0);
  const VecSeries w2 = apply_x(w1);
  const VecSeries w3 = apply_x(w2);
  VecSeries out;
  for (int m = 0; m <= cutoff; ++m)
    for (int n = 0; m + n <= cutoff; ++n) {
      Vec x = Vec::Zero(u.size());
      if (m + n == 0) x = u;
      if (auto it = w1.find({m, n}); it != w1.end()) x += it->second;
      if (auto it = w2.find({m, n}); it != w2.end()) x += 0.5 * it->second;
      if (auto it = w3.find({m, n}); it != w3.end()) x += 0.5 * it->second;
      out.emplace(Order{m, n}, x);
    }
  return out;
}

// ---------------------------------------------------------------- coefficient extraction

namespace {

// (H V_j, V_k) expanded to order 3: Σ (H^{a,b} V_j^{(c,d)}, V_k^{(e,f)}).
std::map<Order, cplx> pairing_series(const std::map<Order, Mat>& h, const VecSeries& vj,
                                     const VecSeries& vk) {
  std::map<Order, cplx> out;
  for (const auto& [ab, hm] : h)
    for (const auto& [cd, x] : vj) {
      const Vec hx = hm * x;
      for (const auto& [ef, y] : vk) {
        const int m = ab.first + cd.first + ef.first;
        const int n = ab.second + cd.second + ef.second;
        if (m + n <= 3) out[{m, n}] += l2_inner(hx, y);
      }
    }
  return out;
}

bool allowed_diagonal(const Order& o) {
  static const std::set<Order> allowed{{0, 1}, {2, 0}, {0, 2}, {2, 1}, {0, 3}};
  return allowed.count(o) > 0;
}

}  // namespace

ReducedExpansion reduced_expansion(const PerturbativeKato& engine) {
  const AssemblyContext& ctx = engine.context();
  const VecSeries v1 = engine.eigvec_corrections(basis_V(1, ctx.res, ctx.k_max));
  const VecSeries v2 = engine.eigvec_corrections(basis_V(2, ctx.res, ctx.k_max));
  const auto& h = engine.hamiltonian_orders();
  const auto s11 = pairing_series(h, v1, v1);
  const auto s12 = pairing_series(h, v1, v2);
  const auto s21 = pairing_series(h, v2, v1);
  const auto s22 = pairing_series(h, v2, v2);

  // L = iσ·1 + i[[A, B], [−B, C]] with L₁₁ = −(i/4π)(HV₁,V₁), L₁₂ = (i/4π)(HV₁,V₂),
  // L₂₁ = −(i/4π)(HV₂,V₁), L₂₂ = (i/4π)(HV₂,V₂).
  const double f = 1.0 / (4.0 * std::numbers::pi);
  ReducedExpansion r;
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; m + n <= 3; ++n) {
      const Order o{m, n};
      auto get = [&](const std::map<Order, cplx>& s) {
        auto it = s.find(o);
        return it == s.end() ? cplx(0.0) : it->second;
      };
      cplx a = -f * get(s11), c = f * get(s22);
      if (m + n == 0) {
        a -= ctx.res.sigma;
        c -= ctx.res.sigma;
      }
      r.a[o] = a;
      r.c[o] = c;
      r.b[o] = f * get(s12);
      r.b_lower[o] = f * get(s21);
    }
  for (const auto& [o, v] : r.a) {
    r.max_imaginary = std::max({r.max_imaginary, std::abs(v.imag()), std::abs(r.c[o].imag()),
                                std::abs(r.b[o].imag())});
    r.max_asymmetry = std::max(r.max_asymmetry, std::abs(r.b[o] - r.b_lower[o]));
    if (!allowed_diagonal(o))
      r.max_forbidden = std::max({r.max_forbidden, std::abs(v), std::abs(r.c[o])});
    if (o != Order{3, 0}) r.max_forbidden = std::max(r.max_forbidden, std::abs(r.b[o]));
  }
  CoeffTable& t = r.table;
  t.a01 = r.a[{0, 1}].real();
  t.a20 = r.a[{2, 0}].real();
  t.a02 = r.a[{0, 2}].real();
  t.a21 = r.a[{2, 1}].real();
  t.a03 = r.a[{0, 3}].real();
  t.b30 = r.b[{3, 0}].real();
  t.c01 = r.c[{0, 1}].real();
  t.c20 = r.c[{2, 0}].real();
  t.c02 = r.c[{0, 2}].real();
  t.c21 = r.c[{2, 1}].real();
  t.c03 = r.c[{0, 3}].real();
  return r;
}

CoeffTable extract_coeff_table(const ReducedExpansion& e) {
  if (e.max_forbidden > 1e-8)
    throw ConsistencyError("extract_coeff_table: forbidden coefficient of size " +
                           std::to_string(e.max_forbidden));
  if (e.max_imaginary > 1e-8)
    throw ConsistencyError("extract_coeff_table: reduced matrix is not purely imaginary");
  if (e.max_asymmetry > 1e-8)
    throw ConsistencyError("extract_coeff_table: off-diagonal entries are not antisymmetric");
  return e.table;
}

CoeffTable extract_coeff_table(const PerturbativeKato& engine) {
  return extract_coeff_table(reduced_expansion(engine));
}

}  // namespace stw
