// SPDX-License-Identifier: Apache-2.0
// Truncated Hamiltonian and L = J·H: layout, symmetries, spectrum and resolvent.
#include <doctest.h>

#include "stw/operator_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using stw::cplx;
using stw::Mat;
using stw::Vec;

namespace {

const stw::AssemblyContext& context() {
  static const stw::AssemblyContext ctx = stw::make_context(stw::solve_resonance(), 12);
  return ctx;
}

Vec random_vec(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(d(gen), d(gen));
  return v;
}

}  // namespace

TEST_CASE("flat index layout") {
  CHECK(stw::mode_count(4) == 18);
  CHECK(stw::mode_index(4, 0, -4) == 0);
  CHECK(stw::mode_index(4, 0, 0) == 4);
  CHECK(stw::mode_index(4, 1, -4) == 9);
  CHECK(stw::mode_index(4, 1, 4) == 17);
}

TEST_CASE("H is Hermitian and L = J H") {
  const auto& ctx = context();
  for (auto mode : {stw::LMode::expanded3, stw::LMode::direct_beta}) {
    const Mat h = stw::assemble_H(0.03, -0.01, ctx, mode).m;
    CHECK((h - h.adjoint()).norm() < 1e-12 * h.norm());
    const Mat l = stw::assemble_L(0.03, -0.01, ctx, mode).m;
    const Mat j = stw::symplectic_J(ctx.k_max).m;
    CHECK((l - j * h).norm() < 1e-13 * h.norm());
  }
}

TEST_CASE("unperturbed spectrum is lambda0 for every wavenumber") {
  const auto& ctx = context();
  const Mat l0 = stw::assemble_L(0.0, 0.0, ctx, stw::LMode::direct_beta).m;
  Eigen::ComplexEigenSolver<Mat> es(l0);
  std::vector<double> got, want;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    CHECK(std::abs(es.eigenvalues()(i).real()) < 1e-10);
    got.push_back(es.eigenvalues()(i).imag());
  }
  for (int k = -ctx.k_max; k <= ctx.k_max; ++k)
    for (auto br : {stw::Branch::plus, stw::Branch::minus})
      want.push_back(stw::lambda0(k, ctx.res.beta_star, br).imag());
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
}

TEST_CASE("resonant basis vectors are eigenvectors at i sigma") {
  const auto& ctx = context();
  const Mat l0 = stw::assemble_L(0.0, 0.0, ctx, stw::LMode::expanded3).m;
  const cplx is(0.0, ctx.res.sigma);
  for (int j : {1, 2}) {
    const Vec u = stw::basis_U(j, ctx.res, ctx.k_max);
    CHECK((l0 * u - is * u).norm() < 1e-12);
    const Vec v = stw::basis_V(j, ctx.res, ctx.k_max);
    const double g = j == 1 ? ctx.res.gamma1 : ctx.res.gamma2;
    CHECK((v * std::sqrt(g) - u).norm() < 1e-14);
  }
}

TEST_CASE("symplectic pairings of the resonant basis") {
  const auto& ctx = context();
  const Mat j = stw::symplectic_J(ctx.k_max).m;
  const Vec u1 = stw::basis_U(1, ctx.res, ctx.k_max), u2 = stw::basis_U(2, ctx.res, ctx.k_max);
  const double four_pi = 4.0 * M_PI;
  CHECK(std::abs(stw::l2_inner(j * u1, u1) - cplx(0.0, -four_pi * ctx.res.gamma1)) < 1e-12);
  CHECK(std::abs(stw::l2_inner(j * u2, u2) - cplx(0.0, four_pi * ctx.res.gamma2)) < 1e-12);
  CHECK(std::abs(stw::l2_inner(j * u1, u2)) < 1e-14);
}

TEST_CASE("blockwise resolvent agrees with a dense solve") {
  const auto& ctx = context();
  const Mat l0 = stw::assemble_L(0.0, 0.0, ctx, stw::LMode::expanded3).m;
  const cplx lambda(0.1, -0.2);
  const Vec v = random_vec(static_cast<int>(l0.rows()), 7);
  const Vec dense = (l0 - lambda * Mat::Identity(l0.rows(), l0.cols())).partialPivLu().solve(v);
  const Vec fast = stw::resolvent_apply_L0(lambda, v, ctx.res, ctx.k_max);
  CHECK((dense - fast).norm() < 1e-12 * dense.norm());
}

TEST_CASE("reversal is an involution commuting with H") {
  const auto& ctx = context();
  const Mat h = stw::assemble_H(0.02, 0.005, ctx, stw::LMode::direct_beta).m;
  const Vec v = random_vec(static_cast<int>(h.rows()), 11);
  CHECK((stw::reversal(stw::reversal(v, ctx.k_max), ctx.k_max) - v).norm() < 1e-15);
  const Vec hr = h * stw::reversal(v, ctx.k_max);
  const Vec rh = stw::reversal(h * v, ctx.k_max);
  CHECK((hr - rh).norm() < 1e-12 * hr.norm());
}

TEST_CASE("expanded and direct beta dependence differ at fourth order in delta") {
  const auto& ctx = context();
  auto diff = [&](double delta) {
    return (stw::assemble_H(0.02, delta, ctx, stw::LMode::expanded3).m -
            stw::assemble_H(0.02, delta, ctx, stw::LMode::direct_beta).m)
        .norm();
  };
  const double d1 = diff(0.02), d2 = diff(0.01);
  CHECK(d1 > 0.0);
  CHECK(std::log2(d1 / d2) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("assembly rejects truncations too small for the band") {
  CHECK_THROWS_AS(stw::make_context(stw::solve_resonance(), 5), std::invalid_argument);
  stw::AssemblyContext small = stw::make_context(stw::solve_resonance(), 6);
  CHECK_NOTHROW(stw::assemble_H_order(3, 0, small));
  small.k_max = 5;
  CHECK_THROWS_AS(stw::assemble_H_order(3, 0, small), std::invalid_argument);
  CHECK_NOTHROW(stw::assemble_H_order(2, 0, small));
}
