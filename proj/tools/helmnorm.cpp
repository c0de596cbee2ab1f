// helmnorm: operator-norm sweeps, fits, reports and experiments.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helmnorm/circle_oracle.hpp"
#include "helmnorm/herglotz.hpp"
#include "helmnorm/matrix_io.hpp"
#include "helmnorm/sweep.hpp"
#include "helmnorm/witness.hpp"

using namespace helmnorm;

namespace {

constexpr int exit_config = 2;
constexpr int exit_verdict = 3;
constexpr int exit_nonconvergence = 4;

int cmd_sweep(const std::string& path) {
  const SweepConfig cfg = sweep_config_from(Config::load(path));
  const SweepResult r = run_sweep(cfg);
  for (const auto& row : r.rows) std::cout << format_row(row) << '\n';
  if (!r.fit_error.empty()) std::cout << "fit: " << r.fit_error << '\n';
  std::cout << '\n' << format_report({r});
  if (!r.all_converged()) return exit_nonconvergence;
  return report_passes({r}) ? 0 : exit_verdict;
}

int cmd_fit(const std::string& input) {
  const std::vector<SweepRow> rows = read_csv(input);
  std::set<std::pair<std::string, std::string>> groups;
  for (const auto& r : rows) groups.emplace(to_string(r.kind), r.spec);
  std::printf("%-10s %-22s %-16s %12s %14s %12s %5s %9s\n", "operator", "spec", "model", "p", "C", "rms", "used",
              "rejected");
  for (const auto& [kind, spec] : groups) {
    std::vector<std::pair<double, double>> pts;
    int dropped = 0;
    for (const auto& r : rows) {
      if (to_string(r.kind) != kind || r.spec != spec) continue;
      if (r.converged && !r.skipped()) {
        pts.emplace_back(r.k, r.norm);
      } else {
        ++dropped;
      }
    }
    for (auto model : {FitModel::pure_power, FitModel::power_times_log}) {
      try {
        const FitResult f = fit_exponent(pts, model);
        std::printf("%-10s %-22s %-16s %12.6f %14.6g %12.3e %5d %9d\n", kind.c_str(), spec.c_str(),
                    to_string(model).c_str(), f.p, f.C, f.rms_residual, f.used, f.rejected + dropped);
      } catch (const std::invalid_argument& e) {
        std::printf("%-10s %-22s %-16s %s\n", kind.c_str(), spec.c_str(), to_string(model).c_str(), e.what());
      }
    }
  }
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs) {
  std::vector<SweepResult> results;
  for (const auto& path : inputs) results.push_back(load_sweep(path));
  std::cout << format_report(results);
  return report_passes(results) ? 0 : exit_verdict;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

int cmd_witness(const std::string& path) {
  const Config c = Config::load(path);
  c.require_known({"geometry", "witness.kind", "witness.epsilon", "witness.bigM", "witness.k_values", "witness.piece",
                   "witness.center", "witness.nodes"});
  const BoundaryGeometry g = parse_geometry(c.get("geometry", "square side=1.0"));
  const std::string kind = c.get("witness.kind", "flat");
  if (kind != "flat" && kind != "curved") throw ConfigError("witness.kind must be flat or curved");
  const bool flat = kind == "flat";
  const double eps = c.get_double("witness.epsilon", flat ? 0.0 : 0.05);
  const double bigM = c.get_double("witness.bigM", 8.0);
  WitnessPlacement place;
  place.piece = c.get_int("witness.piece", -1);
  place.center = c.get_double("witness.center", -1.0);
  const int nodes = c.get_int("witness.nodes", 0);
  const auto ks = c.get_list("witness.k_values", {16, 32, 64, 128});
  // Compensating powers: k^{1/2}, k^{-1/2} (flat); k^{2/3}, k^{-1/3} (curved).
  const double a = flat ? 0.5 : 2.0 / 3.0;
  const double b = flat ? -0.5 : -1.0 / 3.0;
  std::printf("%10s %14s %14s %14s %14s %12s\n", "k", "r_L2", "r_H1", "comp_L2", "comp_H1", "u_norm");
  std::vector<double> cl, ch;
  for (double k : ks) {
    const Witness w = flat ? flat_witness(g, k, eps, bigM, place) : curved_witness(g, k, eps, bigM, place);
    const WitnessRatios r = witness_ratios(w, g, nodes);
    cl.push_back(std::pow(k, a) * r.r_L2);
    ch.push_back(std::pow(k, b) * r.r_H1);
    std::printf("%10.4f %14.6e %14.6e %14.6e %14.6e %12.6f\n", k, r.r_L2, r.r_H1, cl.back(), ch.back(), r.u_norm);
  }
  std::printf("variation factor: L2 %.4f, H1 %.4f\n", spread(cl), spread(ch));
  return 0;
}

int cmd_quasimode(const std::string& path) {
  const Config c = Config::load(path);
  c.require_known({"geometry", "quasimode.piece", "quasimode.width_exponent", "quasimode.center_offset",
                   "quasimode.margin", "quasimode.r_values"});
  const BoundaryGeometry g = parse_geometry(c.get("geometry", "square side=1.0"));
  const int piece = c.get_int("quasimode.piece", 0);
  if (piece < 0 || piece >= static_cast<int>(g.pieces.size())) throw ConfigError("quasimode.piece out of range");
  QuasimodeOptions opts;
  opts.width_exponent = c.get_double("quasimode.width_exponent", opts.width_exponent);
  opts.center_offset = c.get_double("quasimode.center_offset", opts.center_offset);
  opts.margin = c.get_double("quasimode.margin", opts.margin);
  const auto rs = c.get_list("quasimode.r_values", {16, 32, 64, 128, 256});
  const RestrictionGrowth out = restriction_growth(g.pieces[piece], rs, opts);
  std::printf("%10s %16s %16s\n", "r", "restriction", "normal");
  for (const auto& s : out.samples) std::printf("%10.4f %16.8e %16.8e\n", s.r, s.restriction, s.normal);
  std::printf("restriction exponent %.6f (rms %.2e), normal-derivative exponent %.6f (rms %.2e)\n",
              out.restriction_fit.p, out.restriction_fit.rms_residual, out.normal_fit.p, out.normal_fit.rms_residual);
  return 0;
}

int cmd_oracle(double k, const std::string& kind_text, const std::string& spec_text, double eta, int n_max) {
  const OperatorKind kind = parse_operator_kind(kind_text);
  const NormSpec spec = NormSpec::parse(spec_text);
  if (n_max <= 0) n_max = oracle_min_modes(k);
  const NormReport r = oracle_norm(kind, k, spec, n_max, eta);
  std::printf("kind=%s k=%.17g spec=%s n_max=%d norm=%.17g\n", to_string(kind).c_str(), k, spec.str().c_str(), n_max,
              r.norm_value);
  return 0;
}

int cmd_assemble(const std::string& geometry, double k, int N, const std::string& kind_text, double eta,
                 const std::string& dump) {
  const BoundaryGeometry g = parse_geometry(geometry);
  const OperatorKind kind = parse_operator_kind(kind_text);
  const Discretization d = discretize(g, k, N);
  DenseOperator a;
  if (kind == OperatorKind::A_direct || kind == OperatorKind::A_indirect) {
    a = assemble_combined(g, d, eta == 0.0 ? k : eta, kind == OperatorKind::A_direct);
  } else {
    a = assemble_operator(g, d, kind);
  }
  write_matrix_dump(dump, a);
  std::printf("wrote %s: N=%ld kind=%s (%s)\n", dump.c_str(), static_cast<long>(d.size()), to_string(kind).c_str(),
              d.id.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator norms of Helmholtz boundary integral operators"};
  app.require_subcommand(1);

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "Run a wavenumber sweep from a config file");
  sweep->add_option("--config", config_path, "Config file")->required();

  std::string input;
  auto* fit = app.add_subcommand("fit", "Fit exponents to a sweep CSV with both models");
  fit->add_option("--input", input, "Sweep CSV")->required();

  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "Compare fitted and predicted exponents");
  report->add_option("--inputs", inputs, "Sweep CSV files");

  auto* witness = app.add_subcommand("witness", "Lower-bound witness ratios over k");
  witness->add_option("--config", config_path, "Config file")->required();

  auto* quasimode = app.add_subcommand("quasimode", "Restriction growth of Herglotz fields");
  quasimode->add_option("--config", config_path, "Config file")->required();

  double k = 0.0, eta = 0.0;
  int n_max = 0, N = 0;
  std::string kind = "S", spec = "L2->L2", geometry = "circle radius=1.0", dump;
  auto* oracle = app.add_subcommand("oracle", "Fourier oracle norm on the unit circle");
  oracle->add_option("--k", k, "Wavenumber")->required();
  oracle->add_option("--kind", kind, "S, D, Dprime or Adirect")->required();
  oracle->add_option("--spec", spec, "Norm spec, e.g. L2->H1k");
  oracle->add_option("--eta", eta, "Coupling parameter for Adirect");
  oracle->add_option("--n-max", n_max, "Mode cutoff (default: truncation rule)");

  auto* assemble = app.add_subcommand("assemble", "Assemble an operator and write a binary matrix dump");
  assemble->add_option("--geometry", geometry, "Geometry line");
  assemble->add_option("--k", k, "Wavenumber")->required();
  assemble->add_option("--N", N, "Node count (default: ppw rule)");
  assemble->add_option("--kind", kind, "S, D, Dprime, A_direct or A_indirect");
  assemble->add_option("--eta", eta, "Coupling parameter (default k)");
  assemble->add_option("--dump", dump, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*sweep) return cmd_sweep(config_path);
    if (*fit) return cmd_fit(input);
    if (*report) return cmd_report(inputs);
    if (*witness) return cmd_witness(config_path);
    if (*quasimode) return cmd_quasimode(config_path);
    if (*oracle) {
      const OperatorKind parsed = parse_operator_kind(kind);
      if ((parsed == OperatorKind::A_direct || parsed == OperatorKind::A_indirect) && eta == 0.0) eta = k;
      return cmd_oracle(k, kind, spec, eta, n_max);
    }
    if (*assemble) return cmd_assemble(geometry, k, N, kind, eta, dump);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
