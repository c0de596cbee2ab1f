#include "helmnorm/circle_oracle.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "helmnorm/specfun.hpp"

namespace helmnorm {

namespace {

double space_weight(const Space& s, int n, double k) {
  const double n2 = static_cast<double>(n) * n;
  switch (s.type) {
    case Space::Type::L2: return 1.0;
    case Space::Type::H1: return std::sqrt(1.0 + n2);
    case Space::Type::H1k: return std::sqrt(1.0 + n2 / (k * k));
    case Space::Type::Hs_circle: return std::pow(1.0 + n2, 0.5 * s.s);
  }
  return 1.0;
}

struct ModeValues {
  RealVector j, y;  // orders 0..n_max + 1
};

ModeValues mode_values(int n_max, double k) {
  return {specfun::bessel_j_array(n_max + 1, k), specfun::bessel_y_array(n_max + 1, k)};
}

Complex symbol_from(const ModeValues& v, OperatorKind kind, int n, double k, double eta) {
  n = std::abs(n);
  const Complex h(v.j(n), v.y(n));
  const Complex s = I * pi / 2.0 * v.j(n) * h;
  if (kind == OperatorKind::S) return s;
  // C_n' = (C_{n-1} - C_{n+1}) / 2, C_0' = -C_1.
  const double jp = n == 0 ? -v.j(1) : 0.5 * (v.j(n - 1) - v.j(n + 1));
  const double yp = n == 0 ? -v.y(1) : 0.5 * (v.y(n - 1) - v.y(n + 1));
  const Complex d = I * pi * k / 4.0 * (jp * h + v.j(n) * Complex(jp, yp));
  if (kind == OperatorKind::D || kind == OperatorKind::Dprime) return d;
  if (kind == OperatorKind::A_direct || kind == OperatorKind::A_indirect) return 0.5 + d - I * eta * s;
  throw std::invalid_argument("no circle symbol for operator kind " + to_string(kind));
}

}  // namespace

FourierSymbol circle_symbol(OperatorKind kind, int n, double k, double eta) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  const int m = std::abs(n);
  return {n, symbol_from(mode_values(m, k), kind, m, k, eta)};
}

int oracle_min_modes(double k) {
  return static_cast<int>(std::ceil(k)) + static_cast<int>(std::ceil(10.0 * std::cbrt(k))) + 100;
}

double oracle_weight(const NormSpec& spec, int n, double k) {
  return space_weight(spec.target, n, k) / space_weight(spec.source, n, k);
}

NormReport oracle_norm(OperatorKind kind, double k, const NormSpec& spec, int n_max, double eta) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  if (n_max < oracle_min_modes(k)) {
    throw std::invalid_argument("n_max = " + std::to_string(n_max) + " is below the truncation rule minimum " +
                                std::to_string(oracle_min_modes(k)));
  }
  if (spec.source.type == Space::Type::H1 || spec.source.type == Space::Type::H1k) {
    throw std::invalid_argument("source space must be L2 or Hs(s)");
  }
  if ((kind == OperatorKind::A_direct || kind == OperatorKind::A_indirect) && eta == 0.0) {
    throw std::domain_error("coupling parameter eta must be nonzero");
  }
  const ModeValues v = mode_values(n_max, k);
  double best = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    best = std::max(best, oracle_weight(spec, n, k) * std::abs(symbol_from(v, kind, n, k, eta)));
  }
  NormReport r;
  r.kind = kind;
  r.k = k;
  r.N = 2 * n_max + 1;
  r.spec = spec;
  r.norm_value = best;
  r.method = NormMethod::fourier_oracle;
  r.converged = true;
  return r;
}

}  // namespace helmnorm
