// SPDX-License-Identifier: Apache-2.0
// Error categories; the CLI maps them onto process exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace stw {

// Solver breakdown, contour collision, quadrature instability (exit code 2).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// A structural identity expected to hold exactly was violated (exit code 3).
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// The exact b₃,₀ certificate did not go through (exit code 4).
struct CertificateError : std::runtime_error {
  explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stw
