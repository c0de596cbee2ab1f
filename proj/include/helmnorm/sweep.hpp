#pragma once

// Wavenumber sweeps of operator norms, exponent fits against predicted rates,
// CSV persistence and comparison reports.

#include <optional>
#include <string>
#include <vector>

#include "helmnorm/config.hpp"
#include "helmnorm/fit.hpp"
#include "helmnorm/norms.hpp"

namespace helmnorm {

enum class EtaRule { proportional_to_k, constant };

struct SweepConfig {
  std::string geometry = "circle radius=1.0";
  OperatorKind kind = OperatorKind::S;
  NormSpec spec{Space::l2(), Space::h1k()};
  double k_min = 8.0;
  double k_max = 256.0;
  int points_per_octave = 4;
  double ppw = 10.0;
  EtaRule eta_rule = EtaRule::proportional_to_k;
  double eta_value = 1.0;  // eta = eta_value * k or eta = eta_value
  FitModel fit = FitModel::pure_power;
  std::optional<double> tolerance;   // default 0.08 smooth, 0.1 cornered
  std::optional<double> prediction;  // overrides the table
  std::string output = "sweep.csv";
  int threads = 1;
  NormOptions norm_options;
};

// Reads the sweep.* keys and geometry; ConfigError on invalid values.
SweepConfig sweep_config_from(const Config& c);

// k_min 2^{i / points_per_octave} up to k_max inclusive.
std::vector<double> k_grid(double k_min, double k_max, int points_per_octave);

struct Prediction {
  double p = 0.0;
  int q = 0;
};

// Predicted exponent of the norm as a power of k (times log k when q = 1).
// A kinds are predicted for L2->L2 only; other specs without a rate yield nullopt.
std::optional<Prediction> predicted_exponent(Classification c, OperatorKind kind, const NormSpec& spec,
                                             EtaRule eta_rule = EtaRule::proportional_to_k);

struct SweepRow {
  OperatorKind kind = OperatorKind::S;
  double k = 0.0;
  long N = 0;
  std::string spec;
  double norm = 0.0;
  std::string method;  // "skipped:<reason>" for refused points
  bool converged = false;
  int iterations = 0;

  bool skipped() const { return method.rfind("skipped:", 0) == 0; }
};

inline constexpr const char* csv_header = "kind,k,N,spec,norm,method,converged,iterations";

std::string format_row(const SweepRow& r);
SweepRow parse_row(const std::string& line);
std::vector<SweepRow> read_csv(const std::string& path);
// Sorted by (kind, k, spec) and renamed into place.
void write_csv_atomic(const std::string& path, std::vector<SweepRow> rows);

struct SweepResult {
  std::string geometry;
  Classification classification = Classification::smooth;
  OperatorKind kind = OperatorKind::S;
  std::string spec;
  std::vector<SweepRow> rows;
  std::optional<FitResult> fit;
  FitModel model = FitModel::pure_power;
  std::optional<Prediction> prediction;
  double tolerance = 0.0;
  std::string fit_error;  // why no fit was possible

  bool has_verdict() const { return fit && prediction; }
  bool passed() const { return has_verdict() && std::abs(fit->p - prediction->p) <= tolerance; }
  bool all_converged() const;
};

// Computes the missing rows, rewriting the CSV after each one, then fits the converged rows.
SweepResult run_sweep(const SweepConfig& config);

// Fit and verdict from rows already on disk plus the metadata sidecar "<csv>.meta".
SweepResult load_sweep(const std::string& csv_path);
void write_meta(const std::string& csv_path, const SweepResult& r);

// Table of (geometry class, operator, spec, measured p, predicted p, tolerance, verdict).
std::string format_report(const std::vector<SweepResult>& results);
// True unless some result has a failing verdict.
bool report_passes(const std::vector<SweepResult>& results);

}  // namespace helmnorm
