#pragma once

// Log-space least-squares fits of value = C k^p (log k)^q.

#include <string>
#include <utility>
#include <vector>

namespace helmnorm {

enum class FitModel { pure_power, power_times_log };

std::string to_string(FitModel m);
FitModel parse_fit_model(const std::string& text);

struct FitResult {
  double C = 0.0;
  double p = 0.0;
  int q = 0;
  double rms_residual = 0.0;  // in log space
  int used = 0;
  int rejected = 0;           // nonpositive or non-finite values
};

// Needs at least 4 points with positive values; the log model needs k > 1.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points, FitModel model);

}  // namespace helmnorm
