#include "helmnorm/quadrature.hpp"

#include <cmath>

namespace helmnorm {

namespace {

// Legendre polynomial P_n(x) and its derivative.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (n == 0) return {1.0, 0.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
  GaussRule rule{RealVector(n), RealVector(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

RealVector barycentric_weights(const RealVector& nodes) {
  const Eigen::Index n = nodes.size();
  RealVector w = RealVector::Ones(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m != j) w(j) /= (nodes(j) - nodes(m));
    }
  }
  return w / w.cwiseAbs().maxCoeff();
}

RealVector lagrange_basis(const RealVector& nodes, const RealVector& bary, double x) {
  const Eigen::Index n = nodes.size();
  RealVector out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = x - nodes(j);
    if (std::abs(d) < 1e-15) {
      out.setZero();
      out(j) = 1.0;
      return out;
    }
    out(j) = bary(j) / d;
  }
  return out / out.sum();
}

RealMatrix differentiation_matrix(const RealVector& nodes, const RealVector& bary) {
  const Eigen::Index n = nodes.size();
  RealMatrix d = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) d(i, j) = (bary(j) / bary(i)) / (nodes(i) - nodes(j));
    }
    d(i, i) = -d.row(i).sum();
  }
  return d;
}

RealVector kress_log_weights(int N) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("kress_log_weights needs an even N >= 2");
  const int n = N / 2;
  RealVector r(N);
  for (int j = 0; j < N; ++j) {
    const double s = 2.0 * pi * j / N;
    double acc = 0.0;
    for (int m = 1; m < n; ++m) acc += std::cos(m * s) / m;
    r(j) = -(2.0 * pi / n) * acc - (pi / (double(n) * n)) * ((j % 2 == 0) ? 1.0 : -1.0);
  }
  return r;
}

RealMatrix periodic_diff_matrix(int N) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("periodic_diff_matrix needs an even N >= 2");
  RealMatrix d(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int m = i - j;
      d(i, j) = (m == 0) ? 0.0 : 0.5 * ((m % 2 == 0) ? 1.0 : -1.0) / std::tan(pi * m / N);
    }
  }
  return d;
}

GaussRule composite_gauss(double a, double b, int panels, int order) {
  const GaussRule g = gauss_legendre(order);
  GaussRule out{RealVector(panels * order), RealVector(panels * order)};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    out.nodes.segment(p * order, order) = (mid + 0.5 * h * g.nodes.array()).matrix();
    out.weights.segment(p * order, order) = 0.5 * h * g.weights;
  }
  return out;
}

}  // namespace helmnorm
