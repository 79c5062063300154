// SPDX-License-Identifier: Apache-2.0
// Discriminant, unstable eigenvalues and the isola of the reduced 2×2 matrix.
#include "stw/instability_analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace stw {

ABC abc_values(double eps, double delta, const CoeffTable& t) {
  const double e2 = eps * eps, d2 = delta * delta;
  ABC r;
  r.a = t.a01 * delta + t.a20 * e2 + t.a02 * d2 + t.a21 * e2 * delta + t.a03 * d2 * delta;
  r.c = t.c01 * delta + t.c20 * e2 + t.c02 * d2 + t.c21 * e2 * delta + t.c03 * d2 * delta;
  r.b = t.b30 * e2 * eps;
  return r;
}

CoeffTable second_order_truncation(const CoeffTable& t) {
  CoeffTable r = t;
  r.a21 = r.a03 = r.c21 = r.c03 = 0.0;
  r.b30 = 0.0;
  return r;
}

double discriminant(double eps, double delta, const CoeffTable& t) {
  const ABC v = abc_values(eps, delta, t);
  return -(v.a - v.c) * (v.a - v.c) + 4.0 * v.b * v.b;
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues(double eps, double delta,
                                                                 const CoeffTable& t,
                                                                 double sigma) {
  const ABC v = abc_values(eps, delta, t);
  const double disc = -(v.a - v.c) * (v.a - v.c) + 4.0 * v.b * v.b;
  const std::complex<double> root =
      disc >= 0.0 ? std::complex<double>(std::sqrt(disc), 0.0)
                  : std::complex<double>(0.0, std::sqrt(-disc));
  const std::complex<double> centre(0.0, sigma + 0.5 * (v.a + v.c));
  return {centre + 0.5 * root, centre - 0.5 * root};
}

IsolaParams isola_params(const CoeffTable& t) {
  const double diff = t.a01 - t.c01;
  if (std::abs(diff) < 1e-6) throw std::domain_error("isola_params: a01 and c01 are degenerate");
  IsolaParams ip;
  ip.kappa0 = -(t.a20 - t.c20) / diff;
  ip.kappa1 = 2.0 * std::abs(t.b30) / std::abs(diff);
  ip.center_drift = (t.a01 * t.c20 - t.a20 * t.c01) / diff;
  ip.semi_minor = std::abs(t.b30);
  ip.semi_major = std::abs(t.b30 * (t.a01 + t.c01) / diff);
  return ip;
}

std::vector<double> theta_grid(double kappa1, int n_theta) {
  if (n_theta < 1) throw std::invalid_argument("theta_grid: need at least one point");
  // Cell midpoints of a uniform partition of (−κ₁, κ₁): symmetric, includes 0 for odd n.
  std::vector<double> th(static_cast<std::size_t>(n_theta));
  const double h = 2.0 * kappa1 / n_theta;
  for (int i = 0; i < n_theta; ++i) th[static_cast<std::size_t>(i)] = -kappa1 + (i + 0.5) * h;
  return th;
}

std::vector<IsolaPoint> isola_points(double eps, const CoeffTable& t, double sigma, int n_theta) {
  if (!(eps > 0.0 && eps <= 0.1)) throw std::domain_error("isola_points: eps must lie in (0, 0.1]");
  const IsolaParams ip = isola_params(t);
  const std::vector<double> th = theta_grid(ip.kappa1, n_theta);
  std::vector<IsolaPoint> out(th.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(th.size()); ++i) {
    IsolaPoint& pt = out[static_cast<std::size_t>(i)];
    pt.theta = th[static_cast<std::size_t>(i)];
    pt.delta = ip.kappa0 * eps * eps + pt.theta * eps * eps * eps;
    std::tie(pt.lambda_plus, pt.lambda_minus) = eigenvalues(eps, pt.delta, t, sigma);
  }
  return out;
}

double ellipse_form(double eps, std::complex<double> lambda, const IsolaParams& ip, double sigma) {
  const double e3 = eps * eps * eps;
  const double x = lambda.real() / (ip.semi_minor * e3);
  const double y = (lambda.imag() - sigma - ip.center_drift * eps * eps) / (ip.semi_major * e3);
  return x * x + y * y;
}

double first_delta_product_identity(const ResonanceData& res) {
  const double dm2 = 0.5 / omega(-2.0, res.beta_star);  // ∂Ω/∂β at k = −2
  const double dp1 = 0.5 / omega(1.0, res.beta_star);
  return dm2 * dp1 / (4.0 * (2.0 + res.sigma) * (res.sigma - 1.0));
}

}  // namespace stw
