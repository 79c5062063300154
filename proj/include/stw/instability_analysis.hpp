// SPDX-License-Identifier: Apache-2.0
// Discriminant of the reduced matrix, unstable eigenvalues, the isola window and
// ellipse, and the exact certificate that b₃,₀ ≠ 0.
#pragma once

#include "stw/dispersion.hpp"
#include "stw/kato_engine.hpp"
#include "stw/rational_poly.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace stw {

// A = a01δ + a20ε² + a02δ² + a21ε²δ + a03δ³, C alike, B = b30ε³.
struct ABC {
  double a = 0.0, b = 0.0, c = 0.0;
};
ABC abc_values(double eps, double delta, const CoeffTable& t);

// The same coefficient table with every third-order entry (a21, a03, b30, c21, c03) removed.
CoeffTable second_order_truncation(const CoeffTable& t);

// Δ = −(A−C)² + 4B²
double discriminant(double eps, double delta, const CoeffTable& t);

// λ± = i(σ + ½(A+C)) ± ½√Δ with √Δ real for Δ ≥ 0 and i√(−Δ) for Δ < 0.
std::pair<std::complex<double>, std::complex<double>> eigenvalues(double eps, double delta,
                                                                 const CoeffTable& t,
                                                                 double sigma);

struct IsolaParams {
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double center_drift = 0.0;  // ε² coefficient of the isola centre
  double semi_major = 0.0;    // ε³ coefficient, imaginary direction
  double semi_minor = 0.0;    // ε³ coefficient, real direction
};

// Throws std::domain_error when |a01 − c01| < 10⁻⁶.
IsolaParams isola_params(const CoeffTable& t);

struct IsolaPoint {
  double theta = 0.0;
  double delta = 0.0;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
};

// θ on a uniform grid strictly inside (−κ₁, κ₁), δ = κ₀ε² + θε³.
std::vector<double> theta_grid(double kappa1, int n_theta);
std::vector<IsolaPoint> isola_points(double eps, const CoeffTable& t, double sigma, int n_theta);

// Left side of λr²/(semi_minor·ε³)² + (λi − σ − drift·ε²)²/(semi_major·ε³)² = 1.
double ellipse_form(double eps, std::complex<double> lambda, const IsolaParams& ip, double sigma);

// Ω′(−2)Ω′(1)/(4(2+σ)(σ−1)), with Ω′ = ∂Ω/∂β.
double first_delta_product_identity(const ResonanceData& res);

struct CertificateReport {
  bool root_bracketed = false;      // m(1) < 0 < m(2)
  int real_roots_in_1_2 = 0;        // Sturm count of roots of m in (1, 2)
  RationalPoly gcd;                 // monic gcd(g, m) over ℚ
  bool gcd_is_one = false;
  Rational gamma_lo, gamma_hi;      // rational bracket of γ₁
  bool r_factors_positive = false;  // every factor of r(γ₁) > 0 on the bracket
  bool numerator_nonzero = false;   // p + q√(γ⁴−1) bounded away from 0 on the bracket
  double b30_numeric = 0.0;         // b30 expression evaluated in floating point
  std::string checksum;             // FNV-1a of the transcribed coefficient lists
  bool ok() const {
    return root_bracketed && real_roots_in_1_2 == 1 && gcd_is_one && r_factors_positive;
  }
  std::string verdict() const;
};

// Exact-arithmetic certificate; throws CertificateError if gcd(g, m) ≠ 1.
CertificateReport certify_b30();

// The compact closed form of b₃,₀ in terms of γ₁.
double b30_closed_form(double gamma1);

// Transcribed integer coefficient lists (ascending degree) and their FNV-1a checksum.
const std::vector<long long>& b30_p_coefficients();
const std::vector<long long>& b30_q_coefficients();
const std::vector<long long>& gamma1_minimal_polynomial();
std::string b30_coefficient_checksum();

}  // namespace stw
