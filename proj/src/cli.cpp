// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Every command builds its document in memory first and
// writes it in one ordered, single-threaded step.
#include "stw/cli.hpp"

#include "stw/dispersion.hpp"
#include "stw/dn_operator.hpp"
#include "stw/errors.hpp"
#include "stw/parallel.hpp"
#include "stw/validation.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace stw {

// ---------------------------------------------------------------- configuration

void RunConfig::validate() const {
  if (k_max < 8) throw std::invalid_argument("config: k_max must be at least 8");
  if (contour_nodes < 32 || (contour_nodes & (contour_nodes - 1)) != 0)
    throw std::invalid_argument("config: contour_nodes must be a power of two >= 32");
  if (eps_list.empty()) throw std::invalid_argument("config: eps_list is empty");
  for (double e : eps_list)
    if (!(e > 0.0 && e <= 0.1)) throw std::invalid_argument("config: eps values must lie in (0, 0.1]");
  if (theta_grid < 1) throw std::invalid_argument("config: theta_grid must be positive");
  if (format != "json" && format != "csv") throw std::invalid_argument("config: format must be json or csv");
  if (profile != "exact" && profile != "float")
    throw std::invalid_argument("config: profile must be exact or float");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument("config: " + key + " expects an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument("config: " + key + " expects a number, got '" + v + "'");
  return out;
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "k_max") cfg.k_max = parse_int(key, value);
    else if (key == "contour_nodes") cfg.contour_nodes = parse_int(key, value);
    else if (key == "theta_grid") cfg.theta_grid = parse_int(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "format") cfg.format = value;
    else if (key == "profile") cfg.profile = value;
    else if (key == "eps_list") {
      cfg.eps_list.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) cfg.eps_list.push_back(parse_double(key, trim(item)));
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(cfg, text.str());
}

double sig12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

// ---------------------------------------------------------------- documents

nlohmann::ordered_json resonance_document(const RunConfig& cfg) {
  const ResonanceData res = solve_resonance();
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "resonance";
  doc["beta_star"] = sig12(res.beta_star);
  doc["sigma"] = sig12(res.sigma);
  doc["gamma1"] = sig12(res.gamma1);
  doc["gamma2"] = sig12(res.gamma2);
  doc["spectral_gap"] = sig12(spectral_gap(res, std::max(cfg.k_max, 50)));
  return doc;
}

nlohmann::ordered_json coeffs_document(const RunConfig& cfg) {
  const ResonanceData res = solve_resonance();
  const AssemblyContext ctx = make_context(res, cfg.k_max);
  const ContourSpec contour = default_contour(res, cfg.contour_nodes);
  validate_contour(contour, res);
  const ReducedExpansion ex = reduced_expansion(PerturbativeKato(ctx, contour));
  const CoeffTable t = extract_coeff_table(ex);
  const IsolaParams ip = isola_params(t);
  const CertificateReport cert = certify_b30();

  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "coeffs";
  doc["config"] = {{"k_max", cfg.k_max}, {"contour_nodes", cfg.contour_nodes}, {"profile", cfg.profile}};
  doc["coefficients"] = {
      {"a01", sig12(t.a01)}, {"a20", sig12(t.a20)}, {"a02", sig12(t.a02)}, {"a21", sig12(t.a21)},
      {"a03", sig12(t.a03)}, {"b30", sig12(t.b30)}, {"c01", sig12(t.c01)}, {"c20", sig12(t.c20)},
      {"c02", sig12(t.c02)}, {"c21", sig12(t.c21)}, {"c03", sig12(t.c03)},
  };
  doc["kappa0"] = sig12(ip.kappa0);
  doc["kappa1"] = sig12(ip.kappa1);
  doc["ellipse"] = {
      {"x_coeff", sig12(1.0 / (ip.semi_minor * ip.semi_minor))},
      {"y_coeff", sig12(1.0 / (ip.semi_major * ip.semi_major))},
      {"center", sig12(res.sigma)},
      {"center_drift", sig12(ip.center_drift)},
      {"semi_minor", sig12(ip.semi_minor)},
      {"semi_major", sig12(ip.semi_major)},
  };
  doc["identity"] = {{"a01_c01", sig12(t.a01 * t.c01)},
                     {"closed_form", sig12(first_delta_product_identity(res))}};
  doc["structure"] = {{"max_forbidden", ex.max_forbidden},
                      {"max_imaginary", ex.max_imaginary},
                      {"max_asymmetry", ex.max_asymmetry}};
  doc["certificate"] = {
      {"verdict", cert.verdict()},
      {"gcd", cert.gcd.to_string()},
      {"real_roots_in_1_2", cert.real_roots_in_1_2},
      {"r_factors_positive", cert.r_factors_positive},
      {"numerator_nonzero", cert.numerator_nonzero},
      {"b30_closed_form", sig12(cert.b30_numeric)},
      {"checksum", cert.checksum},
  };
  return doc;
}

nlohmann::ordered_json dn_coeffs_document(double beta, int k) {
  const MultiplierSet set = hierarchy_multipliers(beta, k, k, Exec::serial);
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = "dn-coeffs";
  doc["beta"] = beta;
  doc["k"] = k;
  double max_imag = 0.0;
  nlohmann::ordered_json mult = nlohmann::ordered_json::object();
  for (int j = 0; j <= 3; ++j) {
    nlohmann::ordered_json offsets = nlohmann::ordered_json::object();
    for (const auto& [d, column] : set[static_cast<std::size_t>(j)].offsets) {
      const cplx v = column.front();
      max_imag = std::max(max_imag, std::abs(v.imag()));
      offsets[std::to_string(d)] = sig12(v.real());
    }
    mult["R" + std::to_string(j)] = offsets;
  }
  doc["multipliers"] = mult;
  doc["closed_forms"] = {
      {"C_minus", sig12(closed_form_C(k, beta, Sign::minus))},
      {"C_plus", sig12(closed_form_C(k, beta, Sign::plus))},
      {"B_minus", sig12(closed_form_B(k, beta, BWhich::minus))},
      {"B_zero", sig12(closed_form_B(k, beta, BWhich::zero))},
      {"B_plus", sig12(closed_form_B(k, beta, BWhich::plus))},
      {"D_minus3", sig12(closed_form_D3(k, beta, Sign::minus))},
      {"D_plus3", sig12(closed_form_D3(k, beta, Sign::plus))},
  };
  doc["max_imaginary_part"] = max_imag;
  return doc;
}

namespace {

void flatten(const nlohmann::ordered_json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

std::string document_csv(const nlohmann::ordered_json& doc) {
  std::ostringstream out;
  out << "name,value\n";
  flatten(doc, "", out);
  return out.str();
}

// ---------------------------------------------------------------- isola

IsolaRun compute_isola(double eps, const RunConfig& cfg) {
  if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("isola: eps must lie in (0, 0.1]");
  const ResonanceData res = solve_resonance();
  const AssemblyContext ctx = make_context(res, cfg.k_max);
  const ContourSpec contour = default_contour(res, cfg.contour_nodes);
  validate_contour(contour, res);
  const CoeffTable t = extract_coeff_table(PerturbativeKato(ctx, contour));

  IsolaRun run;
  run.eps = eps;
  run.sigma = res.sigma;
  run.params = isola_params(t);
  const std::vector<IsolaPoint> pts = isola_points(eps, t, res.sigma, cfg.theta_grid);
  run.rows.resize(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  // Rows are independent; each direct reduction runs serially inside its own task.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i) {
    const auto u = static_cast<std::size_t>(i);
    try {
      IsolaRow& row = run.rows[u];
      row.theta = pts[u].theta;
      row.delta = pts[u].delta;
      row.asymptotic = pts[u].lambda_plus;
      const Eigen::Matrix2cd m =
          reduced_matrix_direct(eps, row.delta, contour, ctx, LMode::direct_beta, Exec::serial);
      const Eigen::Vector2cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(m).eigenvalues();
      row.direct = ev(0).real() >= ev(1).real() ? ev(0) : ev(1);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const IsolaRow& row : run.rows)
    run.max_discrepancy = std::max(run.max_discrepancy, std::abs(row.direct - row.asymptotic));
  return run;
}

std::string isola_csv(const IsolaRun& run) {
  std::ostringstream out;
  out << "theta,delta,re_lambda_plus,im_lambda_plus,re_direct,im_direct\n";
  char buf[256];
  for (const IsolaRow& r : run.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.theta, r.delta,
                  r.asymptotic.real(), r.asymptotic.imag(), r.direct.real(), r.direct.imag());
    out << buf;
  }
  return out.str();
}

std::string isola_svg(const IsolaRun& run) {
  const double e3 = run.eps * run.eps * run.eps;
  const double centre = run.sigma + run.params.center_drift * run.eps * run.eps;
  const double ax = run.params.semi_minor * e3, ay = run.params.semi_major * e3;

  // Data window: the full ellipse plus every plotted point, padded by 10 %.
  double xmax = ax, ymax = ay;
  for (const IsolaRow& r : run.rows)
    for (const cplx& z : {r.asymptotic, r.direct}) {
      xmax = std::max(xmax, std::abs(z.real()));
      ymax = std::max(ymax, std::abs(z.imag() - centre));
    }
  xmax *= 1.1;
  ymax *= 1.1;

  constexpr double W = 640, H = 560, L = 90, R = 30, T = 50, B = 70;
  const double pw = W - L - R, ph = H - T - B;
  auto sx = [&](double x) { return L + (x + xmax) / (2 * xmax) * pw; };
  auto sy = [&](double y) { return T + (ymax - y) / (2 * ymax) * ph; };

  std::ostringstream o;
  char buf[320];
  auto put = [&](const char* pattern, auto... args) {
    std::snprintf(buf, sizeof buf, pattern, args...);
    o << buf;
  };
  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" font-size=\"12\">\n", W, H, W, H);
  put("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", W, H);
  put("<text x=\"%.1f\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">Transverse isola, "
      "eps = %g</text>\n", W / 2, run.eps);
  put("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
      L, T, pw, ph);
  // Axes through the isola centre, with end-point tick labels.
  put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#bbbbbb\"/>\n", sx(0), T, sx(0), T + ph);
  put("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#bbbbbb\"/>\n", L, sy(0), L + pw, sy(0));
  for (double f : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    put("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.2e</text>\n", sx(f * xmax), T + ph + 18, f * xmax);
    put("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.2e</text>\n", L - 6, sy(f * ymax) + 4, f * ymax);
  }
  put("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">Re lambda</text>\n", L + pw / 2, H - 22);
  put("<text x=\"18\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 18 %.1f)\">"
      "Im lambda - (%.6f)</text>\n", T + ph / 2, T + ph / 2, centre);

  put("<ellipse cx=\"%.3f\" cy=\"%.3f\" rx=\"%.3f\" ry=\"%.3f\" fill=\"none\" stroke=\"#e07b00\" "
      "stroke-width=\"2\"/>\n", sx(0), sy(0), ax / (2 * xmax) * pw, ay / (2 * ymax) * ph);
  for (const IsolaRow& r : run.rows)
    put("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2.2\" fill=\"#e07b00\"/>\n", sx(r.asymptotic.real()),
        sy(r.asymptotic.imag() - centre));
  for (const IsolaRow& r : run.rows)
    put("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"none\" stroke=\"#1f5fbf\"/>\n",
        sx(r.direct.real()), sy(r.direct.imag() - centre));

  // Legend.
  put("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#e07b00\" stroke-width=\"2\"/>\n",
      L + 12, T + 16, L + 36, T + 16);
  put("<text x=\"%.1f\" y=\"%.1f\">asymptotic ellipse and expansion</text>\n", L + 42, T + 20);
  put("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"none\" stroke=\"#1f5fbf\"/>\n", L + 24, T + 34);
  put("<text x=\"%.1f\" y=\"%.1f\">direct projector reduction</text>\n", L + 42, T + 38);
  o << "</svg>\n";
  return o.str();
}

// ---------------------------------------------------------------- command dispatch

namespace {

void emit(const RunConfig& cfg, const std::string& filename, const std::string& content) {
  if (cfg.output_dir.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = std::filesystem::path(cfg.output_dir) / filename;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  std::cerr << "wrote " << path.string() << "\n";
}

void emit_document(const RunConfig& cfg, const std::string& stem, const nlohmann::ordered_json& doc) {
  if (cfg.format == "csv") emit(cfg, stem + ".csv", document_csv(doc));
  else emit(cfg, stem + ".json", doc.dump(2) + "\n");
}

std::string eps_tag(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

}  // namespace

int exit_code_for(std::exception_ptr error, std::string* message) {
  const char* label = "numeric failure";
  int code = 2;
  std::string what;
  try {
    std::rethrow_exception(error);
  } catch (const NumericError& e) {
    what = e.what();
  } catch (const ConsistencyError& e) {
    label = "consistency violation";
    code = 3;
    what = e.what();
  } catch (const CertificateError& e) {
    label = "certificate failure";
    code = 4;
    what = e.what();
  } catch (const std::invalid_argument& e) {
    label = "error";
    code = 1;
    what = e.what();
  } catch (const std::exception& e) {
    // Domain errors from the solvers (e.g. beta <= 0) count as numeric failures.
    what = e.what();
  } catch (...) {
    what = "unknown exception";
  }
  if (message) *message = std::string(label) + ": " + what;
  return code;
}

namespace {

int report_failure(std::exception_ptr error) {
  std::string message;
  const int code = exit_code_for(error, &message);
  std::cerr << message << "\n";
  return code;
}

}  // namespace

int run_cli(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"Transverse instability of small-amplitude Stokes waves"};
  app.require_subcommand(1);
  app.fallthrough();

  int k_max = 0, nodes = 0;
  std::string out_dir, format, config_path;
  auto* o_k = app.add_option("--k-max", k_max, "Fourier truncation K (modes -K..K)");
  auto* o_n = app.add_option("--nodes", nodes, "contour quadrature nodes (power of two >= 32)");
  auto* o_out = app.add_option("--out", out_dir, "output directory (default: standard output)");
  auto* o_fmt = app.add_option("--format", format, "document format: json or csv");
  app.add_option("--config", config_path, "key=value configuration file");

  auto* c_res = app.add_subcommand("resonance", "resonance point and spectral gap");
  auto* c_coeffs = app.add_subcommand("coeffs", "reduced-matrix coefficients, isola window, certificate");
  auto* c_isola = app.add_subcommand("isola", "unstable eigenvalues along the isola (CSV, optional SVG)");
  double eps = 0.0;
  bool svg = false;
  auto* o_eps = c_isola->add_option("--eps", eps, "wave amplitude in (0, 0.1]");
  c_isola->add_flag("--svg", svg, "also write an SVG plot");
  auto* c_dn = app.add_subcommand("dn-coeffs", "expanded Dirichlet-Neumann multipliers at one wavenumber");
  double beta = 0.0;
  int kk = 0;
  c_dn->add_option("--beta", beta, "transverse parameter beta > 0")->required();
  c_dn->add_option("--k", kk, "wavenumber")->required();
  auto* c_val = app.add_subcommand("validate", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (o_k->count()) cfg.k_max = k_max;
    if (o_n->count()) cfg.contour_nodes = nodes;
    if (o_out->count()) cfg.output_dir = out_dir;
    if (o_fmt->count()) cfg.format = format;
    if (o_eps->count()) cfg.eps_list = {eps};
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (c_res->parsed()) {
      emit_document(cfg, "resonance", resonance_document(cfg));
    } else if (c_coeffs->parsed()) {
      emit_document(cfg, "coeffs", coeffs_document(cfg));
    } else if (c_dn->parsed()) {
      emit_document(cfg, "dn_coeffs", dn_coeffs_document(beta, kk));
    } else if (c_isola->parsed()) {
      for (double e : cfg.eps_list) {
        const IsolaRun run = compute_isola(e, cfg);
        emit(cfg, "isola_eps" + eps_tag(e) + ".csv", isola_csv(run));
        if (svg) {
          RunConfig svg_cfg = cfg;
          if (svg_cfg.output_dir.empty()) svg_cfg.output_dir = ".";
          emit(svg_cfg, "isola_eps" + eps_tag(e) + ".svg", isola_svg(run));
        }
        std::fprintf(stderr, "eps=%g: max |direct - asymptotic| = %.6e (%.3f eps^4)\n", e,
                     run.max_discrepancy, run.max_discrepancy / std::pow(e, 4));
      }
    } else if (c_val->parsed()) {
      ValidationOptions opts;
      opts.k_max = cfg.k_max;
      opts.contour_nodes = cfg.contour_nodes;
      bool all = true;
      run_acceptance(opts, [&all](const CriterionResult& r) {
        all = all && r.pass;
        std::cout << format_result(r) << std::endl;
      });
      std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << std::endl;
      return all ? 0 : 1;
    }
  } catch (...) {
    return report_failure(std::current_exception());
  }
  return 0;
}

}  // namespace stw
