#include "helmnorm/fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace helmnorm {

std::string to_string(FitModel m) { return m == FitModel::pure_power ? "pure_power" : "power_times_log"; }

FitModel parse_fit_model(const std::string& text) {
  if (text == "pure_power") return FitModel::pure_power;
  if (text == "power_times_log") return FitModel::power_times_log;
  throw std::invalid_argument("unknown fit model '" + text + "'");
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points, FitModel model) {
  FitResult out;
  out.q = model == FitModel::power_times_log ? 1 : 0;
  std::vector<std::pair<double, double>> kept;
  for (const auto& [k, v] : points) {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("fit abscissa must be positive");
    if (out.q == 1 && !(k > 1.0)) throw std::invalid_argument("log model needs k > 1");
    if (v > 0.0 && std::isfinite(v)) {
      kept.emplace_back(k, v);
    } else {
      ++out.rejected;
    }
  }
  if (kept.size() < 4) {
    throw std::invalid_argument("fit needs at least 4 positive points, got " + std::to_string(kept.size()));
  }
  const auto n = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lk = std::log(kept[i].first);
    a(i, 0) = 1.0;
    a(i, 1) = lk;
    b(i) = std::log(kept[i].second) - out.q * std::log(lk);
  }
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
  out.C = std::exp(x(0));
  out.p = x(1);
  out.rms_residual = std::sqrt((a * x - b).squaredNorm() / static_cast<double>(n));
  out.used = static_cast<int>(n);
  return out;
}

}  // namespace helmnorm
