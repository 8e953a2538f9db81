#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "exq/appendix.hpp"
#include "exq/extremal.hpp"
#include "exq/io.hpp"
#include "exq/odewkb.hpp"
#include "exq/quaddiff.hpp"

#include "json.hpp"

namespace {

using namespace exq;
namespace fs = std::filesystem;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvalidDomain = 3;

struct RunConfig {
  std::string command;
  std::string domain_path;
  int samples = 512;
  int n_poly = 6;
  int m_pole = 4;
  double tol = 1e-8;
  std::string out_dir = ".";
  unsigned long long seed = 1;
};

Domain load_or_exit(const RunConfig& cfg) {
  if (cfg.domain_path.empty()) {
    std::cerr << "error: --domain is required for this command\n";
    std::exit(kExitParseError);
  }
  return load_domain_file(cfg.domain_path, cfg.samples);
}

int cmd_analyze(const RunConfig& cfg) {
  Domain dom = load_or_exit(cfg);
  GeometricSummary s = geometric_summary(dom);
  nlohmann::json doc;
  doc["area"] = s.area;
  doc["perimeter"] = s.perimeter;
  doc["lambda_min"] = s.lambda_min;
  doc["component_lengths"] = s.component_lengths;
  doc["isoperimetric_slack"] = isoperimetric_slack(dom);
  doc["monodromy_sum_over_2pi"] = monodromy_sum(dom, s.lambda_min);
  doc["diameter"] = dom.diameter();
  write_text_file(cfg.out_dir + "/analyze.json", doc.dump(2) + "\n");
  return kExitPass;
}

int cmd_fit(const RunConfig& cfg) {
  Domain dom = load_or_exit(cfg);
  BasisConfig basis{cfg.n_poly, cfg.m_pole, cfg.samples};
  ExtremalityReport rep = extremality_report(dom, basis);
  write_text_file(cfg.out_dir + "/fit_report.json", report_to_json(rep) + "\n");
  write_text_file(cfg.out_dir + "/fit_residuals.csv", residuals_to_csv(rep));
  return rep.verdict == Verdict::Extremal ? kExitPass : kExitVerificationFailed;
}

int cmd_stokes(const RunConfig& cfg) {
  Domain dom = load_or_exit(cfg);
  BasisConfig basis{cfg.n_poly, cfg.m_pole, cfg.samples};
  FitResult fit = fit_best_phi(dom, basis);
  RationalFunction phi_prime = fit.phi.derivative();
  TraceOptions opts;
  opts.scale = dom.diameter();
  StokesGraph graph = stokes_graph(phi_prime, dom, opts);
  write_text_file(cfg.out_dir + "/stokes.csv", stokes_to_csv(graph));
  write_text_file(cfg.out_dir + "/stokes.svg", stokes_to_svg(graph, dom));
  bool ok = true;
  for (const Arc& arc : graph.arcs)
    if (arc.drift > cfg.tol * std::max(arc.length, opts.scale)) ok = false;
  return ok ? kExitPass : kExitVerificationFailed;
}

int cmd_wkb(const RunConfig& cfg) {
  // Fixed zero-free fixture: v'' = -((1+z)/(lambda eps)^2) v on [0, 1].
  RationalFunction phi_prime({1.0, 1.0});
  std::vector<double> eps = {0.1, 0.05, 0.025};
  auto rows = wkb_error_scaling(phi_prime, 1.0, {cplx(0.0), cplx(1.0)}, eps);
  write_text_file(cfg.out_dir + "/wkb.csv", wkb_rows_to_csv(rows));
  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double ratio = rows[i].sup_error / rows[i - 1].sup_error;
    if (ratio < 0.3 || ratio > 0.7) ok = false;
  }
  return ok ? kExitPass : kExitVerificationFailed;
}

int cmd_appendix(const RunConfig& cfg) {
  std::string report;
  bool all_pass = true;
  auto line = [&](const std::string& name, double value, double tol) {
    bool pass = value < tol;
    all_pass = all_pass && pass;
    report += name + "  residual=" + fmt_double(value) + "  tol=" + fmt_double(tol) +
              (pass ? "  pass" : "  FAIL") + "\n";
  };

  for (auto [r1, r2] : {std::pair{2.0, 1.0}, std::pair{3.0, 2.0}}) {
    std::string tag = "concentric(" + fmt_double(r1) + "," + fmt_double(r2) + ") ";
    CurvaturePairResiduals c = concentric_curvature_pair_checks(r1, r2);
    line(tag + "metric_pair", c.id, 1e-9);
    line(tag + "curvature_derivative_pair", c.id2, 1e-9);
    line(tag + "radial_weight", c.rw, 1e-9);
    line(tag + "radius_transfer", c.oh, 1e-9);
    line(tag + "curvature_radius_product", c.po, 1e-9);
    line(tag + "length_balance_1", c.q1, 1e-9);
    line(tag + "length_balance_2", c.q2, 1e-9);
    line(tag + "constant_K_minus_1", std::abs(c.k_value - 1.0) + c.k_spread, 1e-9);
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    cplx a(U(rng), U(rng)), b(1.0 + 0.5 * U(rng), 0.5 * U(rng));
    cplx c_pole(U(rng), U(rng));
    MobiusMap mu = MobiusMap::standard(a, b, c_pole);
    std::map<int, cplx> coeffs;
    double r = 2.0 + 0.5 * U(rng);
    coeffs[0] = c_pole;
    coeffs[1] = r;
    coeffs[2] = cplx(0.08 * U(rng), 0.08 * U(rng));
    coeffs[-1] = cplx(0.08 * U(rng), 0.08 * U(rng));
    Contour source(coeffs, cfg.samples);
    MobiusPairResiduals m = mobius_pair_identities(mu, source);
    std::string tag = "mobius_pair[" + std::to_string(trial) + "] ";
    line(tag + "radius_product", m.eqa_radius, 1e-6);
    line(tag + "angle_sum", m.eqa_angle, 1e-6);
    line(tag + "speed_ratio", m.area1, 1e-6);
    line(tag + "log_derivative_match", m.ew1_first, 1e-6);
    line(tag + "log_second_derivative", m.ew1_second, 1e-6);
    line(tag + "curvature_difference", m.dif, 1e-6);
  }

  write_text_file(cfg.out_dir + "/appendix_report.txt", report);
  return all_pass ? kExitPass : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal-domain and quadratic-differential analysis tool"};
  RunConfig cfg;
  app.add_option("--command", cfg.command, "analyze|fit|stokes|wkb|appendix")
      ->required()
      ->check(CLI::IsMember({"analyze", "fit", "stokes", "wkb", "appendix"}));
  app.add_option("--domain", cfg.domain_path, "Domain JSON file");
  app.add_option("--samples", cfg.samples, "Boundary samples per contour")
      ->check(CLI::Range(64, 1 << 20));
  std::string basis_str;
  app.add_option("--basis", basis_str, "Npoly,Mpole basis degrees");
  app.add_option("--tol", cfg.tol, "Verification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_option("--seed", cfg.seed, "Seed for randomized suites");
  CLI11_PARSE(app, argc, argv);

  if (!basis_str.empty()) {
    if (std::sscanf(basis_str.c_str(), "%d,%d", &cfg.n_poly, &cfg.m_pole) != 2 ||
        cfg.n_poly < 0 || cfg.m_pole < 0) {
      std::cerr << "error: --basis expects Npoly,Mpole\n";
      return kExitParseError;
    }
  }
  if (const char* t = std::getenv("EXQ_THREADS")) {
    int n = std::atoi(t);
    if (n > 0) Eigen::setNbThreads(n);
  }

  try {
    fs::create_directories(cfg.out_dir);
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "fit") return cmd_fit(cfg);
    if (cfg.command == "stokes") return cmd_stokes(cfg);
    if (cfg.command == "wkb") return cmd_wkb(cfg);
    if (cfg.command == "appendix") return cmd_appendix(cfg);
    std::cerr << "error: unknown command\n";
    return kExitParseError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid domain: " << e.what() << "\n";
    return kExitInvalidDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid domain: " << e.what() << "\n";
    return kExitInvalidDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}
