// SPDX-License-Identifier: Apache-2.0
#include "stw/dn_operator.hpp"

#include "stw/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stw {

// ---------------------------------------------------------------- ExpSum

void ExpSum::add(cplx amplitude, cplx rate) {
  if (!(rate.real() > 0.0)) throw std::domain_error("ExpSum: rates must have positive real part");
  for (auto& t : terms_)
    if (std::abs(t.rate - rate) < rate_tolerance) {
      t.amplitude += amplitude;
      return;
    }
  terms_.push_back({amplitude, rate});
}

void ExpSum::add(const ExpSum& other, cplx scale, cplx rate_shift) {
  for (const auto& t : other.terms_) add(scale * t.amplitude, t.rate + rate_shift);
}

cplx ExpSum::value(double z) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.amplitude * std::exp(t.rate * z);
  return s;
}

cplx ExpSum::derivative(double z) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.amplitude * t.rate * std::exp(t.rate * z);
  return s;
}

ExpSum solve_decaying_ode(cplx kappa2, const ExpSum& forcing, bool boundary_zero) {
  const cplx kappa = std::sqrt(kappa2);
  if (!(kappa.real() > 0.0)) throw std::domain_error("solve_decaying_ode: no decaying mode");
  ExpSum out;
  cplx at_zero = 0.0;
  for (const auto& t : forcing.terms()) {
    const cplx denom = t.rate * t.rate - kappa2;
    if (std::abs(denom) < 1e-12 * std::max(1.0, std::abs(kappa2)))
      throw std::domain_error("solve_decaying_ode: resonant forcing rate");
    const cplx amp = t.amplitude / denom;
    out.add(amp, t.rate);
    at_zero += amp;
  }
  out.add((boundary_zero ? 0.0 : 1.0) - at_zero, kappa);
  return out;
}

// ---------------------------------------------------------------- MultiplierTable

cplx MultiplierTable::at(int k, int d) const {
  if (!contains(k)) return 0.0;
  auto it = offsets.find(d);
  return it == offsets.end() ? cplx(0.0) : it->second[static_cast<std::size_t>(k - k_lo)];
}

// ---------------------------------------------------------------- hierarchy

namespace {

// Term c·e^{r z}·e^{imx} of the Jacobian of the flattening map.
struct JacobianTerm {
  double coef;
  int rate;
  int m;
};

// J = 1 + 2εe^z cos x + ε²e^{2z}(1 + 4cos 2x) + ε³(e^{3z}[9cos 3x + 4cos x] − 2e^z cos x)
const std::array<std::vector<JacobianTerm>, 4>& jacobian_terms() {
  static const std::array<std::vector<JacobianTerm>, 4> terms = {{
      {},
      {{1.0, 1, 1}, {1.0, 1, -1}},
      {{1.0, 2, 0}, {2.0, 2, 2}, {2.0, 2, -2}},
      {{4.5, 3, 3}, {4.5, 3, -3}, {2.0, 3, 1}, {2.0, 3, -1}, {-1.0, 1, 1}, {-1.0, 1, -1}},
  }};
  return terms;
}

// Θ^j(k, ·) = Σ_d f̂(k + d)·profile[d](z)
using Profile = std::map<int, ExpSum>;

struct Level {
  int k_lo;
  std::vector<Profile> at_k;
  const Profile& get(int k) const { return at_k[static_cast<std::size_t>(k - k_lo)]; }
};

Profile solve_level_at(int j, int k, cplx beta, const std::vector<Level>& levels) {
  const cplx kappa2 = cplx(double(k) * k) + beta;
  Profile out;
  if (j == 0) {
    out[0] = solve_decaying_ode(kappa2, ExpSum{}, false);
    return out;
  }
  // ∂z²Θ^j − Ω(k)²Θ^j = β Σ_{i=1..j} (J_i Θ^{j−i})^(k)
  std::map<int, ExpSum> forcing;
  for (int i = 1; i <= j; ++i)
    for (const auto& jt : jacobian_terms()[static_cast<std::size_t>(i)]) {
      const Profile& src = levels[static_cast<std::size_t>(j - i)].get(k - jt.m);
      for (const auto& [d, profile] : src)
        forcing[d - jt.m].add(profile, beta * jt.coef, cplx(jt.rate));
    }
  for (const auto& [d, f] : forcing) out[d] = solve_decaying_ode(kappa2, f, true);
  return out;
}

}  // namespace

MultiplierSet hierarchy_multipliers(cplx beta, int k_lo, int k_hi, Exec exec) {
  if (k_hi < k_lo) throw std::invalid_argument("hierarchy_multipliers: empty k range");
  // Level j must cover k_lo − (3 − j) … k_hi + (3 − j): J_i shifts wavenumbers by at most i.
  std::vector<Level> levels;
  for (int j = 0; j <= 3; ++j) {
    Level lvl;
    lvl.k_lo = k_lo - (3 - j);
    const int n = (k_hi + (3 - j)) - lvl.k_lo + 1;
    lvl.at_k.resize(static_cast<std::size_t>(n));
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int t = 0; t < n; ++t)
      lvl.at_k[static_cast<std::size_t>(t)] = solve_level_at(j, lvl.k_lo + t, beta, levels);
    levels.push_back(std::move(lvl));
  }

  MultiplierSet set;
  for (int j = 0; j <= 3; ++j) {
    MultiplierTable& tab = set[static_cast<std::size_t>(j)];
    tab.order = j;
    tab.k_lo = k_lo;
    tab.k_hi = k_hi;
    const auto width = static_cast<std::size_t>(k_hi - k_lo + 1);
    for (int k = k_lo; k <= k_hi; ++k)
      for (const auto& [d, profile] : levels[static_cast<std::size_t>(j)].get(k)) {
        auto& column = tab.offsets[d];
        if (column.empty()) column.assign(width, 0.0);
        column[static_cast<std::size_t>(k - k_lo)] = profile.derivative(0.0);
      }
  }
  return set;
}

// ---------------------------------------------------------------- closed forms

double closed_form_C(int k, double beta, Sign sign) {
  const int s = sign == Sign::plus ? 1 : -1;
  return beta / (omega(k + s, beta) + omega(k, beta) + 1.0);
}

double closed_form_B(int k, double beta, BWhich which) {
  auto O = [beta](int n) { return omega(n, beta); };
  switch (which) {
    case BWhich::minus:
      return beta * (2.0 - beta / ((O(k - 2) + O(k - 1) + 1.0) * (O(k - 1) + O(k) + 1.0))) /
             (O(k - 2) + O(k) + 2.0);
    case BWhich::plus:
      return beta * (2.0 - beta / ((O(k) + O(k + 1) + 1.0) * (O(k + 1) + O(k + 2) + 1.0))) /
             (O(k) + O(k + 2) + 2.0);
    case BWhich::zero:
    default: {
      const double a = O(k) + O(k + 1) + 1.0;
      const double b = O(k - 1) + O(k) + 1.0;
      return beta * (beta * (-1.0 / (a * a) - 1.0 / (b * b)) + 1.0) / (2.0 * (O(k) + 1.0));
    }
  }
}

double closed_form_B0_via_A(int k, double beta) {
  auto O = [beta](int n) { return omega(n, beta); };
  // A^±_k = {[Ω(k±1) + Ω(k) + 1][Ω(k±1) − Ω(k) + 1]}⁻¹
  auto A = [&](int n, int s) {
    return 1.0 / ((O(n + s) + O(n) + 1.0) * (O(n + s) - O(n) + 1.0));
  };
  return beta * ((beta * (A(k - 1, 1) + A(k + 1, -1)) + 1.0) / (2.0 * (O(k) + 1.0)) -
                 beta * (O(k - 1) + 1.0 - O(k)) * A(k - 1, 1) * A(k, -1) -
                 beta * (O(k + 1) + 1.0 - O(k)) * A(k + 1, -1) * A(k, 1));
}

double closed_form_D3(int k, double beta, Sign sign) {
  // Both displayed forms are one rational function F(Ω₀, Ω₁, Ω₂, Ω₃): D^{−3}_k uses
  // (Ω(k−3), Ω(k−2), Ω(k−1), Ω(k)) and D^{+3}_k uses (Ω(k), Ω(k+1), Ω(k+2), Ω(k+3)).
  const int base = sign == Sign::plus ? k : k - 3;
  const double o0 = omega(base, beta), o1 = omega(base + 1, beta);
  const double o2 = omega(base + 2, beta), o3 = omega(base + 3, beta);
  const double num =
      2.0 * beta * beta * (o0 + o1 + o2 + o3 + 4.0) -
      4.0 * beta * (o1 + o2 + 1.0) *
          (o1 * o1 + (o3 + 3.0) * o1 + 3.0 * o3 + o2 * (o2 + o3 + 3.0) +
           o0 * (o1 + o2 + 2.0 * o3 + 3.0) + 4.0) +
      9.0 * (o0 + o1 + 1.0) * (o0 + o2 + 2.0) * (o1 + o2 + 1.0) * (o1 + o3 + 2.0) * (o2 + o3 + 1.0);
  const double den = 2.0 * (o0 + o1 + 1.0) * (o0 + o2 + 2.0) * (o1 + o2 + 1.0) * (o0 + o3 + 3.0) *
                     (o1 + o3 + 2.0) * (o2 + o3 + 1.0);
  return beta * num / den;
}

// ---------------------------------------------------------------- β-derivatives

namespace {

// Taylor coefficients ℓ = 0..max_ell from one set of circle nodes:
// (1/ℓ!) f^{(ℓ)}(β0) ≈ (1/N) Σ_t f(β0 + w_t) w_t^{−ℓ}, summed in node order.
std::vector<MultiplierSet> cauchy_pass(int max_ell, double beta0, double radius, int nodes,
                                       int k_lo, int k_hi, Exec exec) {
  std::vector<MultiplierSet> per_node(static_cast<std::size_t>(nodes));
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (int t = 0; t < nodes; ++t) {
    const cplx w = std::polar(radius, 2.0 * std::numbers::pi * t / nodes);
    per_node[static_cast<std::size_t>(t)] = hierarchy_multipliers(beta0 + w, k_lo, k_hi, Exec::serial);
  }
  std::vector<MultiplierSet> out(static_cast<std::size_t>(max_ell + 1));
  for (int ell = 0; ell <= max_ell; ++ell)
    for (std::size_t j = 0; j < 4; ++j) {
      MultiplierTable& dst = out[static_cast<std::size_t>(ell)][j];
      dst.order = int(j);
      dst.k_lo = k_lo;
      dst.k_hi = k_hi;
    }
  for (int t = 0; t < nodes; ++t) {
    const cplx w = std::polar(radius, 2.0 * std::numbers::pi * t / nodes);
    for (int ell = 0; ell <= max_ell; ++ell) {
      const cplx weight = std::pow(w, -ell) / double(nodes);
      for (std::size_t j = 0; j < 4; ++j) {
        const MultiplierTable& src = per_node[static_cast<std::size_t>(t)][j];
        MultiplierTable& dst = out[static_cast<std::size_t>(ell)][j];
        for (const auto& [d, column] : src.offsets) {
          auto& acc = dst.offsets[d];
          if (acc.empty()) acc.assign(column.size(), 0.0);
          for (std::size_t i = 0; i < column.size(); ++i) acc[i] += weight * column[i];
        }
      }
    }
  }
  return out;
}

double max_difference(const MultiplierSet& a, const MultiplierSet& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < 4; ++j)
    for (const auto& [d, column] : a[j].offsets)
      for (int k = a[j].k_lo; k <= a[j].k_hi; ++k)
        m = std::max(m, std::abs(column[static_cast<std::size_t>(k - a[j].k_lo)] - b[j].at(k, d)));
  return m;
}

}  // namespace

std::vector<MultiplierSet> beta_taylor(int max_ell, double beta0, int k_lo, int k_hi,
                                       const CauchyOptions& opts, Exec exec) {
  if (!(beta0 > 0.0)) throw std::domain_error("beta_taylor: beta0 must be positive");
  if (max_ell < 0) throw std::invalid_argument("beta_taylor: negative derivative order");
  const double radius = opts.radius_fraction * beta0;
  int nodes = opts.initial_nodes;
  auto prev = cauchy_pass(max_ell, beta0, radius, nodes, k_lo, k_hi, exec);
  while (nodes < opts.max_nodes) {
    nodes *= 2;
    auto next = cauchy_pass(max_ell, beta0, radius, nodes, k_lo, k_hi, exec);
    double diff = 0.0;
    for (std::size_t ell = 0; ell < next.size(); ++ell)
      diff = std::max(diff, max_difference(next[ell], prev[ell]));
    if (diff <= opts.tolerance) return next;
    prev = std::move(next);
  }
  throw std::runtime_error("beta_taylor: Cauchy quadrature did not converge");
}

MultiplierSet beta_derivatives(int ell, double beta0, int k_lo, int k_hi,
                               const CauchyOptions& opts, Exec exec) {
  if (ell < 1) throw std::invalid_argument("beta_derivatives: ell must be at least 1");
  return beta_taylor(ell, beta0, k_lo, k_hi, opts, exec)[static_cast<std::size_t>(ell)];
}

MultiplierTable beta_derivative(int j, int ell, double beta0, int k_lo, int k_hi,
                                const CauchyOptions& opts) {
  if (j < 0 || j > 3) throw std::invalid_argument("beta_derivative: j must lie in 0..3");
  return beta_derivatives(ell, beta0, k_lo, k_hi, opts)[static_cast<std::size_t>(j)];
}

}  // namespace stw
