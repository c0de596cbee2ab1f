#include "helmnorm/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "helmnorm/quadrature.hpp"

namespace helmnorm {

namespace {

constexpr int max_nodes = 1 << 22;
constexpr double self_tolerance = 1e-10;

int base_nodes(double r, double radius) { return 8 * static_cast<int>(std::ceil(r * radius)) + 64; }

void check_r(double r) {
  if (!(r > 0.0)) throw std::domain_error("Herglotz radius r must be positive");
}

// Trapezoidal sum with n nodes, plus the scale sum |phi| used for the self check.
std::pair<Complex, double> trapezoid(double r, const HerglotzDensity& phi, const Vec2& x, int n) {
  Complex acc = 0.0;
  double scale = 0.0;
  const double h = 2.0 * pi / n;
  for (int j = 0; j < n; ++j) {
    const double a = j * h;
    const Complex f = phi(a);
    if (f == 0.0) continue;
    acc += f * std::exp(I * r * (x(0) * std::cos(a) + x(1) * std::sin(a)));
    scale += std::abs(f);
  }
  return {acc * (h * r), scale * h * r};
}

}  // namespace

Complex herglotz(double r, const HerglotzDensity& phi, const Vec2& x) {
  check_r(r);
  int n = base_nodes(r, x.norm());
  auto coarse = trapezoid(r, phi, x, n);
  while (2 * n <= max_nodes) {
    const auto fine = trapezoid(r, phi, x, 2 * n);
    if (std::abs(fine.first - coarse.first) <= self_tolerance * std::max(1.0, fine.second)) return fine.first;
    coarse = fine;
    n *= 2;
  }
  throw UnderResolved("Herglotz quadrature did not settle below " + std::to_string(max_nodes) + " nodes");
}

HerglotzField::HerglotzField(double r, const HerglotzDensity& phi, double radius) : r_(r) {
  check_r(r);
  if (!(radius >= 0.0)) throw std::domain_error("field radius must be nonnegative");
  auto build = [&](int n) {
    xi_.clear();
    w_.clear();
    const double h = 2.0 * pi / n;
    for (int j = 0; j < n; ++j) {
      const double a = j * h;
      const Complex f = phi(a);
      if (f == 0.0) continue;
      xi_.emplace_back(r * std::cos(a), r * std::sin(a));
      w_.push_back(f * (h * r));
    }
    nodes_ = n;
  };
  // Probe points on the resolution circle.
  std::vector<Vec2> probes{Vec2::Zero()};
  for (int i = 0; i < 16; ++i) {
    const double a = 2.0 * pi * i / 16.0 + 0.1;
    probes.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  int n = base_nodes(r, radius);
  build(n);
  std::vector<Complex> previous;
  for (const auto& p : probes) previous.push_back(value(p));
  double mass = 0.0;
  for (const auto& w : w_) mass += std::abs(w);
  while (true) {
    if (2 * n > max_nodes) {
      throw UnderResolved("Herglotz field did not settle below " + std::to_string(max_nodes) + " nodes");
    }
    build(2 * n);
    double diff = 0.0;
    std::vector<Complex> current;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      current.push_back(value(probes[i]));
      diff = std::max(diff, std::abs(current[i] - previous[i]));
    }
    if (diff <= self_tolerance * std::max(1.0, mass)) return;
    previous = current;
    n *= 2;
  }
}

Complex HerglotzField::value(const Vec2& x) const {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < xi_.size(); ++j) acc += w_[j] * std::exp(I * xi_[j].dot(x));
  return acc;
}

Eigen::Vector2cd HerglotzField::gradient(const Vec2& x) const {
  Eigen::Vector2cd g = Eigen::Vector2cd::Zero();
  for (std::size_t j = 0; j < xi_.size(); ++j) {
    const Complex e = I * w_[j] * std::exp(I * xi_[j].dot(x));
    g(0) += e * xi_[j](0);
    g(1) += e * xi_[j](1);
  }
  return g;
}

HerglotzDensity bump_density(double center, double width) {
  if (!(width > 0.0) || width >= pi) throw std::domain_error("bump width must lie in (0, pi)");
  return [center, width](double alpha) -> Complex {
    const double d = std::remainder(alpha - center, 2.0 * pi);
    const double tau = d / width;
    if (std::abs(tau) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - tau * tau));
  };
}

RestrictionGrowth restriction_growth(const BoundaryPiece& piece, const std::vector<double>& r_values,
                                     const QuasimodeOptions& opts) {
  if (r_values.size() < 4) throw std::invalid_argument("restriction growth needs at least 4 r values");
  // Frame at the piece midpoint: e1 tangent, e2 normal. U is a box in this frame.
  const Vec2 mid = piece.point(0.5);
  const Vec2 tangent = piece.tangent(0.5);
  const Vec2 e1 = tangent, e2 = piece.normal(0.5);
  const double alpha_t = std::atan2(tangent(1), tangent(0));
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (int i = 0; i <= 256; ++i) {
    const Vec2 d = piece.point(i / 256.0) - mid;
    const Vec2 p(d.dot(e1), d.dot(e2));
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  lo.array() -= opts.margin;
  hi.array() += opts.margin;
  const double radius = std::max({lo.norm(), hi.norm(), Vec2(lo(0), hi(1)).norm(), Vec2(hi(0), lo(1)).norm()});

  RestrictionGrowth out;
  for (double r : r_values) {
    const double width = std::pow(r, -opts.width_exponent);
    const HerglotzField field(r, bump_density(alpha_t + opts.center_offset * width, width), radius);
    const double panel = 4.0 * pi / r;
    const GaussRule gx = composite_gauss(lo(0), hi(0), std::max(1, static_cast<int>(std::ceil((hi(0) - lo(0)) / panel))));
    const GaussRule gy = composite_gauss(lo(1), hi(1), std::max(1, static_cast<int>(std::ceil((hi(1) - lo(1)) / panel))));
    double area = 0.0;
    for (Eigen::Index i = 0; i < gx.nodes.size(); ++i) {
      for (Eigen::Index j = 0; j < gy.nodes.size(); ++j) {
        area += gx.weights(i) * gy.weights(j) * std::norm(field.value(gx.nodes(i) * e1 + gy.nodes(j) * e2));
      }
    }
    const int bpanels = std::max(8, static_cast<int>(std::ceil(piece.length() / panel)));
    const GaussRule gt = composite_gauss(0.0, 1.0, bpanels);
    double trace = 0.0, normal = 0.0;
    for (Eigen::Index i = 0; i < gt.nodes.size(); ++i) {
      const double t = gt.nodes(i);
      const Vec2 x = piece.point(t) - mid;
      const double w = gt.weights(i) * piece.speed(t);
      const Vec2 nu = piece.normal(t);
      trace += w * std::norm(field.value(x));
      const Eigen::Vector2cd g = field.gradient(x);
      normal += w * std::norm(nu(0) * g(0) + nu(1) * g(1));
    }
    const double scale = std::sqrt(area);
    out.samples.push_back({r, std::sqrt(trace) / scale, std::sqrt(normal) / scale});
  }
  std::vector<std::pair<double, double>> rs, ns;
  for (const auto& s : out.samples) {
    rs.emplace_back(s.r, s.restriction);
    ns.emplace_back(s.r, s.normal);
  }
  out.restriction_fit = fit_exponent(rs, FitModel::pure_power);
  out.normal_fit = fit_exponent(ns, FitModel::pure_power);
  return out;
}

}  // namespace helmnorm
