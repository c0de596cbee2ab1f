#include "helmnorm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <tuple>

#include "parallel.hpp"

namespace helmnorm {

namespace {

const std::set<std::string> sweep_keys = {
    "geometry",          "sweep.operator",  "sweep.norm",      "sweep.k_min",     "sweep.k_max",
    "sweep.points_per_octave", "sweep.ppw", "sweep.eta",       "sweep.eta_value", "sweep.fit",
    "sweep.tolerance",   "sweep.prediction", "sweep.output",   "sweep.threads",   "sweep.dense_limit",
    "sweep.seed"};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Exponent for L2 and H1k targets.
Prediction base_exponent(Classification c, OperatorKind kind) {
  const bool single = kind == OperatorKind::S;
  switch (c) {
    case Classification::smooth_curved: return single ? Prediction{-2.0 / 3.0, 0} : Prediction{0.0, 0};
    case Classification::piecewise_curved: return single ? Prediction{-2.0 / 3.0, 1} : Prediction{1.0 / 6.0, 1};
    case Classification::smooth:
    case Classification::piecewise_smooth: return single ? Prediction{-0.5, 1} : Prediction{0.25, 1};
  }
  return {};
}

Classification parse_classification(const std::string& s) {
  for (auto c : {Classification::smooth_curved, Classification::smooth, Classification::piecewise_curved,
                 Classification::piecewise_smooth}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown geometry classification '" + s + "'");
}

bool row_less(const SweepRow& a, const SweepRow& b) {
  return std::make_tuple(kind_code(a.kind), a.k, a.spec, a.N) < std::make_tuple(kind_code(b.kind), b.k, b.spec, b.N);
}

void fit_rows(SweepResult& r) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : r.rows) {
    if (row.kind == r.kind && row.spec == r.spec && row.converged && !row.skipped()) pts.emplace_back(row.k, row.norm);
  }
  try {
    r.fit = fit_exponent(pts, r.model);
  } catch (const std::invalid_argument& e) {
    r.fit.reset();
    r.fit_error = e.what();
  }
}

}  // namespace

SweepConfig sweep_config_from(const Config& c) {
  c.require_known(sweep_keys);
  SweepConfig s;
  try {
    s.geometry = c.get("geometry", s.geometry);
    s.kind = parse_operator_kind(c.get("sweep.operator", "S"));
    if (s.kind == OperatorKind::custom) throw ConfigError("sweep.operator cannot be custom");
    s.spec = NormSpec::parse(c.get("sweep.norm", s.spec.str()));
    const std::string eta = c.get("sweep.eta", "proportional_to_k");
    if (eta == "proportional_to_k") {
      s.eta_rule = EtaRule::proportional_to_k;
    } else if (eta == "constant") {
      s.eta_rule = EtaRule::constant;
    } else {
      throw ConfigError("sweep.eta must be proportional_to_k or constant");
    }
    s.fit = parse_fit_model(c.get("sweep.fit", "pure_power"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.k_min = c.get_double("sweep.k_min", s.k_min);
  s.k_max = c.get_double("sweep.k_max", s.k_max);
  s.points_per_octave = c.get_int("sweep.points_per_octave", s.points_per_octave);
  s.ppw = c.get_double("sweep.ppw", s.ppw);
  s.eta_value = c.get_double("sweep.eta_value", s.eta_value);
  if (c.has("sweep.tolerance")) s.tolerance = c.get_double("sweep.tolerance", 0.0);
  if (c.has("sweep.prediction")) s.prediction = c.get_double("sweep.prediction", 0.0);
  s.output = c.get("sweep.output", s.output);
  s.threads = c.get_int("sweep.threads", s.threads);
  s.norm_options.dense_limit = c.get_int("sweep.dense_limit", static_cast<int>(s.norm_options.dense_limit));
  s.norm_options.seed = static_cast<std::uint64_t>(c.get_int("sweep.seed", 0x5eed));

  if (!(s.k_min >= 1.0)) throw ConfigError("sweep.k_min must be at least 1");
  if (!(s.k_max > s.k_min)) throw ConfigError("sweep.k_max must exceed sweep.k_min");
  if (s.points_per_octave < 1) throw ConfigError("sweep.points_per_octave must be positive");
  if (!(s.ppw > 0.0)) throw ConfigError("sweep.ppw must be positive");
  if (s.eta_value == 0.0) throw ConfigError("sweep.eta_value must be nonzero");
  if (s.threads < 1) throw ConfigError("sweep.threads must be positive");
  if (s.tolerance && !(*s.tolerance > 0.0)) throw ConfigError("sweep.tolerance must be positive");
  if (k_grid(s.k_min, s.k_max, s.points_per_octave).size() < 4) {
    throw ConfigError("sweep grid has fewer than 4 wavenumbers");
  }
  try {
    parse_geometry(s.geometry);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
  return s;
}

std::vector<double> k_grid(double k_min, double k_max, int points_per_octave) {
  if (!(k_min > 0.0) || !(k_max >= k_min) || points_per_octave < 1) {
    throw std::invalid_argument("invalid wavenumber grid");
  }
  std::vector<double> ks;
  for (int i = 0;; ++i) {
    const double k = k_min * std::exp2(static_cast<double>(i) / points_per_octave);
    if (k > k_max * (1.0 + 1e-12)) break;
    ks.push_back(k);
  }
  return ks;
}

std::optional<Prediction> predicted_exponent(Classification c, OperatorKind kind, const NormSpec& spec,
                                             EtaRule eta_rule) {
  const auto& src = spec.source;
  const auto& tgt = spec.target;
  if (kind == OperatorKind::custom) return std::nullopt;
  if (kind == OperatorKind::A_direct || kind == OperatorKind::A_indirect) {
    if (src.type != Space::Type::L2 || tgt.type != Space::Type::L2) return std::nullopt;
    const Prediction s = base_exponent(c, OperatorKind::S);
    const Prediction d = base_exponent(c, OperatorKind::D);
    const double es = s.p + (eta_rule == EtaRule::proportional_to_k ? 1.0 : 0.0);
    Prediction best{0.0, 0};
    if (d.p > best.p) best = d;
    if (es > best.p) best = {es, s.q};
    return best;
  }
  Prediction p = base_exponent(c, kind);
  if (src.type == Space::Type::L2) {
    if (tgt.type == Space::Type::L2 || tgt.type == Space::Type::H1k) return p;
    if (tgt.type == Space::Type::H1) return Prediction{p.p + 1.0, p.q};
    return std::nullopt;
  }
  // Trace pairs H^{s-1/2} -> H^{s+1/2}, |s| <= 1/2, share the L2 -> H1 rate.
  if (src.type == Space::Type::Hs_circle && tgt.type == Space::Type::Hs_circle &&
      std::abs(tgt.s - src.s - 1.0) < 1e-12 && std::abs(src.s + 0.5) <= 0.5 + 1e-12) {
    return Prediction{p.p + 1.0, p.q};
  }
  return std::nullopt;
}

std::string format_row(const SweepRow& r) {
  std::ostringstream os;
  os << to_string(r.kind) << ',' << num(r.k) << ',' << r.N << ',' << r.spec << ',' << num(r.norm) << ','
     << r.method << ',' << (r.converged ? "true" : "false") << ',' << r.iterations;
  return os.str();
}

SweepRow parse_row(const std::string& line) {
  const auto f = split_csv(line);
  if (f.size() != 8) throw std::runtime_error("CSV row needs 8 fields: " + line);
  SweepRow r;
  try {
    r.kind = parse_operator_kind(f[0]);
    r.k = std::stod(f[1]);
    r.N = std::stol(f[2]);
    r.spec = f[3];
    r.norm = std::stod(f[4]);
    r.method = f[5];
    if (f[6] != "true" && f[6] != "false") throw std::invalid_argument("converged must be true or false");
    r.converged = f[6] == "true";
    r.iterations = std::stoi(f[7]);
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed CSV row '" + line + "': " + e.what());
  }
  return r;
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != csv_header) throw std::runtime_error("'" + path + "' lacks the CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(parse_row(line));
  }
  return rows;
}

void write_csv_atomic(const std::string& path, std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), row_less);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << csv_header << '\n';
    for (const auto& r : rows) out << format_row(r) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

bool SweepResult::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
    return r.kind != kind || r.spec != spec || r.skipped() || r.converged;
  });
}

SweepResult run_sweep(const SweepConfig& config) {
  const BoundaryGeometry g = parse_geometry(config.geometry);
  SweepResult result;
  result.geometry = config.geometry;
  result.classification = g.classification;
  result.kind = config.kind;
  result.spec = config.spec.str();
  result.model = config.fit;
  result.tolerance = config.tolerance.value_or(g.is_smooth() ? 0.08 : 0.1);
  if (config.prediction) {
    result.prediction = Prediction{*config.prediction, config.fit == FitModel::power_times_log ? 1 : 0};
  } else {
    result.prediction = predicted_exponent(g.classification, config.kind, config.spec, config.eta_rule);
  }

  std::vector<SweepRow> rows;
  if (std::filesystem::exists(config.output)) rows = read_csv(config.output);

  AssemblyOptions opts;
  opts.ppw = config.ppw;
  struct Task {
    double k;
    long N;
  };
  std::vector<Task> todo;
  for (double k : k_grid(config.k_min, config.k_max, config.points_per_octave)) {
    long N = 0;
    try {
      N = static_cast<long>(discretize(g, k, 0, opts).size());
    } catch (const std::exception&) {
      N = required_nodes(g, k, opts);
    }
    const bool done = std::any_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
      return r.kind == config.kind && r.k == k && r.N == N && r.spec == result.spec;
    });
    if (!done) todo.push_back({k, N});
  }

  std::mutex writer;
  parallel_for(static_cast<int>(todo.size()), config.threads, [&](int i) {
    const Task task = todo[i];
    SweepRow row;
    row.kind = config.kind;
    row.k = task.k;
    row.N = task.N;
    row.spec = result.spec;
    try {
      const Discretization d = discretize(g, task.k, 0, opts);
      DenseOperator a;
      if (config.kind == OperatorKind::A_direct || config.kind == OperatorKind::A_indirect) {
        const double eta = config.eta_rule == EtaRule::proportional_to_k ? config.eta_value * task.k : config.eta_value;
        a = assemble_combined(g, d, eta, config.kind == OperatorKind::A_direct);
      } else {
        a = assemble_operator(g, d, config.kind);
      }
      const NormReport rep = operator_norm(a, d, config.spec, config.norm_options);
      row.N = static_cast<long>(rep.N);
      row.norm = rep.norm_value;
      row.method = to_string(rep.method);
      row.converged = rep.converged;
      row.iterations = rep.iterations;
    } catch (const std::exception& e) {
      row.norm = std::nan("");
      row.method = "skipped:" + sanitize(e.what());
      row.converged = false;
      row.iterations = 0;
    }
    const std::lock_guard<std::mutex> lock(writer);
    rows.push_back(row);
    write_csv_atomic(config.output, rows);
  });
  if (todo.empty()) write_csv_atomic(config.output, rows);

  std::sort(rows.begin(), rows.end(), row_less);
  result.rows = rows;
  fit_rows(result);
  write_meta(config.output, result);
  return result;
}

void write_meta(const std::string& csv_path, const SweepResult& r) {
  const std::string path = csv_path + ".meta";
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << "geometry = " << r.geometry << '\n';
    out << "classification = " << to_string(r.classification) << '\n';
    out << "operator = " << to_string(r.kind) << '\n';
    out << "spec = " << r.spec << '\n';
    out << "fit = " << to_string(r.model) << '\n';
    if (r.prediction) {
      out << "prediction.p = " << num(r.prediction->p) << '\n';
      out << "prediction.q = " << r.prediction->q << '\n';
    }
    out << "tolerance = " << num(r.tolerance) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

SweepResult load_sweep(const std::string& csv_path) {
  SweepResult r;
  r.rows = read_csv(csv_path);
  std::sort(r.rows.begin(), r.rows.end(), row_less);
  const std::string meta = csv_path + ".meta";
  if (std::filesystem::exists(meta)) {
    const Config c = Config::load(meta);
    r.geometry = c.get("geometry");
    r.classification = parse_classification(c.get("classification"));
    try {
      r.kind = parse_operator_kind(c.get("operator"));
      r.model = parse_fit_model(c.get("fit"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(meta + ": " + e.what());
    }
    r.spec = c.get("spec");
    if (c.has("prediction.p")) r.prediction = Prediction{c.get_double("prediction.p", 0.0), c.get_int("prediction.q", 0)};
    r.tolerance = c.get_double("tolerance", 0.1);
  } else if (!r.rows.empty()) {
    r.kind = r.rows.front().kind;
    r.spec = r.rows.front().spec;
  }
  fit_rows(r);
  return r;
}

std::string format_report(const std::vector<SweepResult>& results) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "geometry_class" << std::setw(12) << "operator" << std::setw(22) << "spec"
     << std::setw(12) << "measured_p" << std::setw(12) << "predicted_p" << std::setw(11) << "tolerance" << "verdict\n";
  for (const auto& r : results) {
    os << std::setw(18) << (r.geometry.empty() ? "unknown" : to_string(r.classification)) << std::setw(12)
       << to_string(r.kind) << std::setw(22) << r.spec;
    std::ostringstream mp, pp;
    mp << std::fixed << std::setprecision(4);
    pp << std::fixed << std::setprecision(4);
    if (r.fit) {
      mp << r.fit->p << (r.fit->q ? "+log" : "");
    } else {
      mp << "-";
    }
    if (r.prediction) {
      pp << r.prediction->p << (r.prediction->q ? "+log" : "");
    } else {
      pp << "-";
    }
    std::ostringstream tol;
    tol << std::fixed << std::setprecision(3) << r.tolerance;
    os << std::setw(12) << mp.str() << std::setw(12) << pp.str() << std::setw(11) << tol.str()
       << (!r.has_verdict() ? "n/a" : r.passed() ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

bool report_passes(const std::vector<SweepResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const SweepResult& r) { return r.has_verdict() && !r.passed(); });
}

}  // namespace helmnorm
