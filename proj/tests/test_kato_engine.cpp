// SPDX-License-Identifier: Apache-2.0
// Contour projectors, Kato's transform and the reduced-matrix coefficient table.
#include <doctest.h>

#include "stw/errors.hpp"
#include "stw/kato_engine.hpp"

#include <cmath>
#include <stdexcept>

using stw::cplx;
using stw::Mat;

namespace {

const stw::AssemblyContext& context() {
  static const stw::AssemblyContext ctx = stw::make_context(stw::solve_resonance(), 16);
  return ctx;
}

const stw::CoeffTable& table() {
  static const stw::CoeffTable t = [] {
    const stw::PerturbativeKato engine(context(), stw::default_contour(context().res));
    return stw::extract_coeff_table(engine);
  }();
  return t;
}

}  // namespace

TEST_CASE("default contour encircles i sigma with half the spectral gap") {
  const auto& res = context().res;
  const stw::ContourSpec c = stw::default_contour(res);
  CHECK(std::abs(c.center - cplx(0.0, res.sigma)) < 1e-15);
  CHECK(c.radius == doctest::Approx(0.759958147884 / 2).epsilon(1e-10));
  CHECK(c.nodes == 128);
  CHECK(std::abs(c.node(0) - (c.center + c.radius)) < 1e-15);
}

TEST_CASE("contour validation rejects bad node counts and radii") {
  const auto& res = context().res;
  stw::ContourSpec c = stw::default_contour(res);
  c.nodes = 100;
  CHECK_THROWS_AS(stw::validate_contour(c, res), std::invalid_argument);
  c.nodes = 16;
  CHECK_THROWS_AS(stw::validate_contour(c, res), std::invalid_argument);
  c.nodes = 64;
  c.radius = 0.0;
  CHECK_THROWS_AS(stw::validate_contour(c, res), std::invalid_argument);
  c.radius = 0.8;
  CHECK_THROWS_AS(stw::validate_contour(c, res), std::invalid_argument);
  c.radius = 0.3;
  CHECK_NOTHROW(stw::validate_contour(c, res));
}

TEST_CASE("unperturbed projector is recovered by quadrature") {
  const auto& ctx = context();
  const Mat l0 = stw::assemble_L(0.0, 0.0, ctx, stw::LMode::expanded3).m;
  const Mat p0 = stw::unperturbed_projector(ctx.res, ctx.k_max);
  const Mat p = stw::projector(l0, stw::default_contour(ctx.res, 64));
  CHECK((p - p0).norm() < 1e-12);
  CHECK((p0 * p0 - p0).norm() < 1e-13);
  CHECK(std::abs(p0.trace() - cplx(2.0)) < 1e-13);
}

TEST_CASE("perturbed projector: idempotent, rank two, commutes with L") {
  const auto& ctx = context();
  const Mat l = stw::assemble_L(0.02, 0.01, ctx, stw::LMode::direct_beta).m;
  const Mat p = stw::projector(l, stw::default_contour(ctx.res));
  CHECK((p * p - p).norm() < 1e-11);
  CHECK(std::abs(p.trace() - cplx(2.0)) < 1e-11);
  CHECK((l * p - p * l).norm() < 1e-11);
}

TEST_CASE("projector variants agree; serial and parallel bitwise") {
  const auto& ctx = context();
  const Mat l = stw::assemble_L(0.02, -0.01, ctx, stw::LMode::expanded3).m;
  const stw::ContourSpec c = stw::default_contour(ctx.res, 64);
  const Mat ser = stw::projector(l, c, stw::Exec::serial);
  const Mat par = stw::projector(l, c, stw::Exec::parallel);
  CHECK(ser == par);
  CHECK((stw::projector_reference(l, c) - par).norm() < 1e-12);
  const Mat p128 = stw::projector(l, stw::default_contour(ctx.res, 128));
  CHECK((p128 - par).norm() < 1e-12);
}

TEST_CASE("contour through an eigenvalue is a numeric error") {
  const auto& ctx = context();
  const Mat l0 = stw::assemble_L(0.0, 0.0, ctx, stw::LMode::expanded3).m;
  const cplx e = stw::lambda0(0, ctx.res.beta_star, stw::Branch::plus);
  stw::ContourSpec c;
  c.center = e + 0.1;
  c.radius = 0.1;
  c.nodes = 64;
  CHECK_THROWS_AS(stw::projector(l0, c), stw::NumericError);
}

TEST_CASE("Kato transform is symplectic and maps P0 onto P") {
  const auto& ctx = context();
  const Mat l = stw::assemble_L(0.02, 0.01, ctx, stw::LMode::direct_beta).m;
  const Mat p = stw::projector(l, stw::default_contour(ctx.res));
  const Mat p0 = stw::unperturbed_projector(ctx.res, ctx.k_max);
  const Mat k = stw::kato_transform(p, p0);
  const Mat j = stw::symplectic_J(ctx.k_max).m;
  CHECK((k.adjoint() * j * k - j).norm() < 1e-11);
  CHECK((k * p0 - p * k).norm() < 1e-11);
  const stw::ContourProjector cp(l, stw::default_contour(ctx.res));
  const stw::Vec u = stw::basis_U(1, ctx.res, ctx.k_max);
  CHECK((stw::kato_apply(cp, p0, u) - k * u).norm() < 1e-11);
}

TEST_CASE("reduced matrix at the resonance is i sigma times the identity") {
  const auto& ctx = context();
  const Eigen::Matrix2cd m = stw::reduced_matrix_direct(0.0, 0.0, stw::default_contour(ctx.res), ctx,
                                                        stw::LMode::direct_beta);
  const cplx is(0.0, ctx.res.sigma);
  CHECK(std::abs(m(0, 0) - is) < 1e-12);
  CHECK(std::abs(m(1, 1) - is) < 1e-12);
  CHECK(std::abs(m(0, 1)) < 1e-12);
  CHECK(std::abs(m(1, 0)) < 1e-12);
}

TEST_CASE("coefficient table matches the reference values") {
  const stw::CoeffTable& t = table();
  const double tol = 5e-9;
  CHECK(std::abs(t.a01 - -0.0931912038) < tol);
  CHECK(std::abs(t.a20 - -0.4972909772) < tol);
  CHECK(std::abs(t.a02 - 0.0093753194) < tol);
  CHECK(std::abs(t.a21 - -0.0081152843) < tol);
  CHECK(std::abs(t.a03 - -0.0014671778) < tol);
  CHECK(std::abs(t.b30 - -0.4947603203) < tol);
  CHECK(std::abs(t.c01 - 0.0598478709) < tol);
  CHECK(std::abs(t.c20 - 1.0862586489) < tol);
  CHECK(std::abs(t.c02 - -0.0033359912) < tol);
  CHECK(std::abs(t.c21 - -0.0002576496) < tol);
  CHECK(std::abs(t.c03 - 0.0002892588) < tol);
}

TEST_CASE("first delta coefficients equal their closed forms") {
  const auto& res = context().res;
  const stw::CoeffTable& t = table();
  const double g1 = res.gamma1, g2 = res.gamma2;
  CHECK(t.a01 == doctest::Approx(-1.0 / (4.0 * g1 * g1 * g1)).epsilon(1e-10));
  CHECK(t.c01 == doctest::Approx(1.0 / (4.0 * g2 * g2 * g2)).epsilon(1e-10));
}

TEST_CASE("direct reduction agrees with the expansion to fourth order") {
  const auto& ctx = context();
  const stw::CoeffTable& t = table();
  const double delta = 0.01;
  const Eigen::Matrix2cd m = stw::reduced_matrix_direct(0.0, delta, stw::default_contour(ctx.res), ctx,
                                                        stw::LMode::direct_beta);
  const double a = t.a01 * delta + t.a02 * delta * delta + t.a03 * delta * delta * delta;
  const double c = t.c01 * delta + t.c02 * delta * delta + t.c03 * delta * delta * delta;
  CHECK(std::abs(m(0, 0) - cplx(0.0, ctx.res.sigma + a)) < 1e-7);
  CHECK(std::abs(m(1, 1) - cplx(0.0, ctx.res.sigma + c)) < 1e-7);
}

TEST_CASE("violated vanishing pattern raises a consistency error") {
  stw::ReducedExpansion fake;
  fake.max_forbidden = 1e-6;
  CHECK_THROWS_AS(stw::extract_coeff_table(fake), stw::ConsistencyError);
  fake.max_forbidden = 0.0;
  fake.max_imaginary = 1e-6;
  CHECK_THROWS_AS(stw::extract_coeff_table(fake), stw::ConsistencyError);
  fake.max_imaginary = 0.0;
  CHECK_NOTHROW(stw::extract_coeff_table(fake));
}

TEST_CASE("perturbative engine: serial and parallel bitwise") {
  const auto& ctx = context();
  const stw::ContourSpec c = stw::default_contour(ctx.res, 64);
  const stw::PerturbativeKato ser(ctx, c, stw::Exec::serial);
  const stw::PerturbativeKato par(ctx, c, stw::Exec::parallel);
  const stw::Vec u = stw::basis_U(2, ctx.res, ctx.k_max);
  const stw::VecSeries a = ser.apply_all(u, 2), b = par.apply_all(u, 2);
  REQUIRE(a.size() == b.size());
  for (const auto& [order, v] : a) CHECK(v == b.at(order));
  CHECK_THROWS_AS(par.apply(3, 1, u), std::invalid_argument);
}
