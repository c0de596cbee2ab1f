#pragma once

// Lower-bound witnesses for the single-layer operator: oscillatory densities
// concentrated near a flat or curved boundary patch, observed on a patch U
// further along the boundary.

#include "helmnorm/geometry.hpp"

namespace helmnorm {

// Smooth cutoff: 1 on [-1, 1], 0 outside (-2, 2).
double cutoff(double t);

enum class WitnessKind { flat, curved };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool intersects(const Interval& o) const { return lo < o.hi && o.lo < hi; }
};

struct WitnessPlacement {
  int piece = -1;  // -1: first flat piece (flat) or first curved piece (curved)
  // Parameter of the patch center in [0, 1]; negative selects 3 epsilon along a
  // flat piece and t = 0 on a curved one.
  double center = -1.0;
};

struct Witness {
  WitnessKind kind = WitnessKind::flat;
  double k = 0.0;
  double epsilon = 0.0;
  double bigM = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  int piece = 0;
  double t0 = 0.0;       // parameter of the patch center
  Vec2 origin;           // gamma(t0)
  Vec2 e1;               // unit tangent at the origin
  double scale = 0.0;    // epsilon k^{-gamma1}
  Interval support;      // x1 range of supp u
  Interval u_patch;      // x1 range of U

  // u at local coordinate x1 (on the patch branch through the origin).
  Complex density(double x1) const;
};

// u = exp(i k x1) chi(x1 / epsilon), U = {M eps <= x1 <= 2 M eps}.
// epsilon <= 0 selects 0.05 times the piece length.
Witness flat_witness(const BoundaryGeometry& g, double k, double epsilon = 0.0, double bigM = 8.0,
                     const WitnessPlacement& place = {});

// u = exp(i k x1) chi(k^{1/3} x1 / epsilon), U = {M eps k^{-1/3} <= x1 <= 2 M eps k^{-1/3}}.
Witness curved_witness(const BoundaryGeometry& g, double k, double epsilon = 0.05, double bigM = 8.0,
                       const WitnessPlacement& place = {});

struct WitnessRatios {
  double r_L2 = 0.0;
  double r_H1 = 0.0;
  double u_norm = 0.0;  // ||u||_{L2(Gamma)}
  int source_nodes = 0;
  int target_nodes = 0;
};

// ||S u||_{L2(U)} / ||u|| and ||d/dx1 S u||_{L2(U)} / ||u|| by direct quadrature.
// N is the node count on each patch; 0 selects ppw = 40. Fewer than 10 points
// per wavelength or per cutoff scale is refused.
WitnessRatios witness_ratios(const Witness& w, const BoundaryGeometry& g, int N = 0);

}  // namespace helmnorm
