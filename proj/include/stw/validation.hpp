// SPDX-License-Identifier: Apache-2.0
// The end-to-end acceptance suite: each criterion measures, compares against the
// reference value, and reports PASS/FAIL with the measured values.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace stw {

struct ValidationOptions {
  int k_max = 32;
  int contour_nodes = 128;
  int theta_points = 41;  // θ samples per ε in the order-of-accuracy sweep
};

struct CriterionResult {
  CriterionResult() = default;
  CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, human readable
  double seconds = 0.0;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

// Runs criteria 1–11 in order; on_result is invoked as each one finishes.
std::vector<CriterionResult> run_acceptance(const ValidationOptions& opts,
                                            const CriterionCallback& on_result = {});

// "PASS [3] name (0.12 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace stw
