// SPDX-License-Identifier: Apache-2.0
// Command-line front end: run configuration, document builders and file emission.
#pragma once

#include "stw/instability_analysis.hpp"
#include "stw/kato_engine.hpp"

#include <json.hpp>

#include <complex>
#include <exception>
#include <string>
#include <vector>

namespace stw {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  int k_max = 32;
  int contour_nodes = 128;
  std::vector<double> eps_list = {0.01};
  int theta_grid = 201;
  std::string output_dir;        // empty: documents go to standard output
  std::string format = "json";   // json | csv
  std::string profile = "exact"; // exact | float

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// key=value lines; '#' starts a comment; eps_list is comma separated.
// Unknown keys and malformed values throw std::invalid_argument.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

// Round to twelve significant digits so emitted documents are stable and readable.
double sig12(double x);

nlohmann::ordered_json resonance_document(const RunConfig& cfg);
nlohmann::ordered_json coeffs_document(const RunConfig& cfg);
nlohmann::ordered_json dn_coeffs_document(double beta, int k);

struct IsolaRow {
  double theta = 0.0;
  double delta = 0.0;
  std::complex<double> asymptotic;  // λ₊ from the reduced-matrix expansion
  std::complex<double> direct;      // λ₊ from the contour-projector reduction
};

struct IsolaRun {
  double eps = 0.0;
  double sigma = 0.0;
  IsolaParams params;
  std::vector<IsolaRow> rows;
  double max_discrepancy = 0.0;  // max |direct − asymptotic| over the grid
};

IsolaRun compute_isola(double eps, const RunConfig& cfg);
std::string isola_csv(const IsolaRun& run);
// Isola plot: Re λ against Im λ minus the isola centre, ellipse overlaid.
std::string isola_svg(const IsolaRun& run);

// Flat "name,value" rendering of a one-level JSON document (for --format csv).
std::string document_csv(const nlohmann::ordered_json& doc);

// Exit code for an escaped exception: NumericError and solver domain errors → 2,
// ConsistencyError → 3, CertificateError → 4, invalid arguments → 1. Optionally
// fills a one-line message.
int exit_code_for(std::exception_ptr error, std::string* message = nullptr);

// Entry point of the stw_cli tool; returns the process exit code
// (0 ok, 1 usage, 2 numeric, 3 consistency, 4 certificate).
int run_cli(int argc, char** argv);

}  // namespace stw
