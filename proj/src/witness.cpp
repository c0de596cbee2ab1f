#include "helmnorm/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helmnorm/kernels.hpp"
#include "helmnorm/quadrature.hpp"

namespace helmnorm {

namespace {

double smooth_step_factor(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// Parameter t on the patch branch with <gamma(t) - origin, e1> = x1.
double invert_x1(const BoundaryPiece& p, const Witness& w, double x1) {
  auto f = [&](double t) { return (p.point(t) - w.origin).dot(w.e1) - x1; };
  auto df = [&](double t) { return p.d1(t).dot(w.e1); };
  const double speed = p.speed(w.t0);
  double t = w.t0 + x1 / speed;
  for (int it = 0; it < 60; ++it) {
    const double slope = df(t);
    if (!(slope > 0.0)) break;
    const double step = f(t) / slope;
    t -= step;
    if (std::abs(step) < 1e-15) return t;
  }
  // Bisection on the monotone branch.
  double a = w.t0, b = w.t0 + 2.0 * x1 / speed;
  if (x1 < 0.0) std::swap(a, b);
  while (f(a) > 0.0) a -= std::abs(b - a);
  while (f(b) < 0.0) b += std::abs(b - a);
  for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
    const double m = 0.5 * (a + b);
    (f(m) < 0.0 ? a : b) = m;
  }
  return 0.5 * (a + b);
}

struct PatchRule {
  std::vector<Vec2> points;
  std::vector<double> x1;
  std::vector<double> weights;  // arc-length weights
};

// Composite Gauss in the parameter between the preimages of x1 = lo and hi.
PatchRule patch_rule(const BoundaryPiece& p, const Witness& w, const Interval& range, int nodes) {
  const double ta = invert_x1(p, w, range.lo);
  const double tb = invert_x1(p, w, range.hi);
  const int order = 16;
  const int panels = std::max(1, (nodes + order - 1) / order);
  const GaussRule rule = composite_gauss(ta, tb, panels, order);
  PatchRule out;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes(i);
    const Vec2 x = p.point(t);
    out.points.push_back(x);
    out.x1.push_back((x - w.origin).dot(w.e1));
    out.weights.push_back(rule.weights(i) * p.speed(t));
  }
  return out;
}

void check_monotone(const BoundaryPiece& p, const Witness& w, const Interval& range) {
  const double ta = invert_x1(p, w, range.lo);
  const double tb = invert_x1(p, w, range.hi);
  for (int i = 0; i <= 64; ++i) {
    const double t = ta + (tb - ta) * i / 64.0;
    if (!(p.d1(t).dot(w.e1) > 0.0)) {
      throw std::domain_error("epsilon too large: the witness patch folds back along the piece");
    }
  }
}

Witness place(const BoundaryGeometry& g, WitnessKind kind, double k, double epsilon, double bigM,
              const WitnessPlacement& where) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  if (!(bigM > 1.0)) throw std::domain_error("M must exceed 1");
  const auto& pieces = g.pieces;
  int piece = where.piece;
  if (piece < 0) {
    for (std::size_t i = 0; i < pieces.size() && piece < 0; ++i) {
      if (kind == WitnessKind::flat ? pieces[i].is_flat() : pieces[i].is_curved()) piece = static_cast<int>(i);
    }
    if (piece < 0) {
      throw std::domain_error(std::string("geometry has no ") + (kind == WitnessKind::flat ? "flat" : "curved") +
                              " piece");
    }
  }
  if (piece >= static_cast<int>(pieces.size())) throw std::out_of_range("witness piece index out of range");
  const BoundaryPiece& p = pieces[piece];
  if (kind == WitnessKind::flat && !p.is_flat()) throw std::domain_error("flat witness needs a flat piece");
  if (kind == WitnessKind::curved && !p.is_curved()) throw std::domain_error("curved witness needs a curved piece");

  Witness w;
  w.kind = kind;
  w.k = k;
  w.bigM = bigM;
  w.piece = piece;
  const double len = p.length();
  if (kind == WitnessKind::flat) {
    w.epsilon = epsilon > 0.0 ? epsilon : 0.05 * len;
    w.gamma1 = 0.0;
    w.gamma2 = 0.5;
    w.scale = w.epsilon;
  } else {
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    w.epsilon = epsilon;
    w.gamma1 = 1.0 / 3.0;
    w.gamma2 = 2.0 / 3.0;
    w.scale = epsilon * std::cbrt(1.0 / k);
  }
  w.support = {-2.0 * w.scale, 2.0 * w.scale};
  w.u_patch = {bigM * w.scale, 2.0 * bigM * w.scale};

  if (where.center >= 0.0) {
    w.t0 = where.center;
  } else {
    w.t0 = kind == WitnessKind::flat ? 3.0 * w.scale / len : 0.0;
  }
  if (w.t0 > 1.0) throw std::domain_error("witness center parameter must lie in [0, 1]");
  if (w.u_patch.hi - w.support.lo > len) throw std::domain_error("epsilon too large for the piece");
  w.origin = p.point(w.t0);
  w.e1 = p.tangent(w.t0);
  check_monotone(p, w, {w.support.lo, w.u_patch.hi});
  if (!p.is_periodic()) {
    const double lo = invert_x1(p, w, w.support.lo);
    const double hi = invert_x1(p, w, w.u_patch.hi);
    if (lo < 0.0 || hi > 1.0) throw std::domain_error("epsilon too large: witness support or U leaves the piece");
  }
  return w;
}

}  // namespace

double cutoff(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double f = smooth_step_factor(2.0 - a);
  return f / (f + smooth_step_factor(a - 1.0));
}

Complex Witness::density(double x1) const { return std::exp(I * k * x1) * cutoff(x1 / scale); }

Witness flat_witness(const BoundaryGeometry& g, double k, double epsilon, double bigM, const WitnessPlacement& p) {
  return place(g, WitnessKind::flat, k, epsilon, bigM, p);
}

Witness curved_witness(const BoundaryGeometry& g, double k, double epsilon, double bigM, const WitnessPlacement& p) {
  return place(g, WitnessKind::curved, k, epsilon, bigM, p);
}

WitnessRatios witness_ratios(const Witness& w, const BoundaryGeometry& g, int N) {
  const BoundaryPiece& p = g.pieces.at(w.piece);
  const double wavelength = 2.0 * pi / w.k;
  auto nodes_for = [&](const Interval& range) {
    const double len = range.length();
    const int auto_nodes = static_cast<int>(std::ceil(40.0 * std::max(len / wavelength, len / w.scale)));
    return std::max(256, N > 0 ? N : auto_nodes);
  };
  auto check = [&](const Interval& range, int nodes) {
    const double per = nodes / std::max(range.length() / wavelength, range.length() / w.scale);
    if (N > 0 && per < 10.0) {
      throw UnderResolved("witness patch sampled at " + std::to_string(per) + " points per wavelength");
    }
  };
  const int ns = nodes_for(w.support);
  const int nt = nodes_for(w.u_patch);
  check(w.support, N > 0 ? N : ns);
  check(w.u_patch, N > 0 ? N : nt);
  const PatchRule src = patch_rule(p, w, w.support, N > 0 ? N : ns);
  const PatchRule tgt = patch_rule(p, w, w.u_patch, N > 0 ? N : nt);

  ComplexVector u(static_cast<Eigen::Index>(src.points.size()));
  double u2 = 0.0;
  for (std::size_t j = 0; j < src.points.size(); ++j) {
    u(j) = w.density(src.x1[j]);
    u2 += src.weights[j] * std::norm(u(j));
  }
  double s2 = 0.0, g2 = 0.0;
  KernelPoint2 kp;
  kp.k = w.k;
  for (std::size_t i = 0; i < tgt.points.size(); ++i) {
    kp.x = tgt.points[i];
    Complex su = 0.0, gu = 0.0;
    for (std::size_t j = 0; j < src.points.size(); ++j) {
      kp.y = src.points[j];
      const Complex f = u(j) * src.weights[j];
      su += phi(kp) * f;
      gu += grad_x_phi(kp, w.e1) * f;
    }
    s2 += tgt.weights[i] * std::norm(su);
    g2 += tgt.weights[i] * std::norm(gu);
  }
  WitnessRatios r;
  r.u_norm = std::sqrt(u2);
  r.r_L2 = std::sqrt(s2) / r.u_norm;
  r.r_H1 = std::sqrt(g2) / r.u_norm;
  r.source_nodes = static_cast<int>(src.points.size());
  r.target_nodes = static_cast<int>(tgt.points.size());
  return r;
}

}  // namespace helmnorm
