#pragma once

// Herglotz wave functions T_r phi(x) = int_{|xi| = r} phi(xi) exp(i <x, xi>) dsigma(xi)
// in two dimensions, and restriction measurements of such fields on boundary pieces.

#include <functional>
#include <vector>

#include "helmnorm/fit.hpp"
#include "helmnorm/geometry.hpp"

namespace helmnorm {

// Density as a function of the frequency angle alpha, xi = r (cos alpha, sin alpha).
using HerglotzDensity = std::function<Complex(double alpha)>;

// Trapezoidal rule in alpha with 8 ceil(r |x|) + 64 nodes, checked against a doubled rule.
Complex herglotz(double r, const HerglotzDensity& phi, const Vec2& x);

// Field resolved for all |x| <= radius. Nodes where the density vanishes are dropped.
class HerglotzField {
 public:
  HerglotzField(double r, const HerglotzDensity& phi, double radius);

  Complex value(const Vec2& x) const;
  Eigen::Vector2cd gradient(const Vec2& x) const;
  double r() const { return r_; }
  int nodes() const { return nodes_; }

 private:
  double r_;
  int nodes_;
  std::vector<Vec2> xi_;
  std::vector<Complex> w_;
};

// exp(1 - 1 / (1 - tau^2)) for |tau| < 1, tau = (alpha - center) / width, periodic in alpha.
HerglotzDensity bump_density(double center, double width);

struct QuasimodeOptions {
  double width_exponent = 0.5;  // density width r^{-width_exponent}
  double center_offset = 0.0;   // shift of the density center, in widths
  double margin = 0.5;          // U is the piece bounding box grown by this much
};

struct RestrictionSample {
  double r;
  double restriction;  // ||u||_{L2(Gamma)} / ||u||_{L2(U)}
  double normal;       // ||d_nu u||_{L2(Gamma)} / ||u||_{L2(U)}
};

struct RestrictionGrowth {
  std::vector<RestrictionSample> samples;
  FitResult restriction_fit;
  FitResult normal_fit;
};

// Fields concentrated at the tangent direction at the piece midpoint, L2(U)
// normalized, restricted to the piece; pure-power fits in r. At least 4 r values.
RestrictionGrowth restriction_growth(const BoundaryPiece& piece, const std::vector<double>& r_values,
                                     const QuasimodeOptions& opts = {});

}  // namespace helmnorm
