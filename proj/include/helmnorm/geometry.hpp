#pragma once

// Piecewise smooth closed boundaries in the plane.
//
// Each piece is parametrized over t in [0, 1]. Pieces are listed in
// counterclockwise order so that (y', -x') / |gamma'| is the outward normal.

#include <memory>
#include <string>
#include <vector>

#include "helmnorm/types.hpp"

namespace helmnorm {

class Curve {
 public:
  virtual ~Curve() = default;
  virtual Vec2 point(double t) const = 0;
  virtual Vec2 d1(double t) const = 0;
  virtual Vec2 d2(double t) const = 0;
};

class BoundaryPiece {
 public:
  BoundaryPiece(std::shared_ptr<const Curve> curve, std::string label);

  Vec2 point(double t) const { return curve_->point(t); }
  Vec2 d1(double t) const { return curve_->d1(t); }
  Vec2 d2(double t) const { return curve_->d2(t); }
  double speed(double t) const { return d1(t).norm(); }
  Vec2 tangent(double t) const;
  Vec2 normal(double t) const;
  double curvature(double t) const;

  bool is_flat() const { return flat_; }
  bool is_curved() const { return curved_; }
  // Closed piece whose parametrization is 1-periodic.
  bool is_periodic() const { return periodic_; }
  double length() const { return length_; }
  const std::string& label() const { return label_; }

  BoundaryPiece reversed() const;
  BoundaryPiece transformed(double angle, const Vec2& shift) const;

 private:
  std::shared_ptr<const Curve> curve_;
  std::string label_;
  bool flat_ = false;
  bool curved_ = false;
  bool periodic_ = false;
  double length_ = 0.0;
};

enum class Classification { smooth_curved, smooth, piecewise_curved, piecewise_smooth };

std::string to_string(Classification c);

struct BoundaryGeometry {
  std::string name;
  std::vector<BoundaryPiece> pieces;
  bool closed = true;
  int dimension = 2;
  Classification classification = Classification::piecewise_smooth;

  double length() const;
  // True for a single periodic piece, where no corners exist.
  bool is_smooth() const {
    return classification == Classification::smooth || classification == Classification::smooth_curved;
  }
};

struct BoundaryPoint {
  Vec2 point;
  Vec2 tangent;
  Vec2 normal;
  double speed;
  double curvature;
};

// Validates endpoints, regularity and simplicity, and classifies the boundary.
BoundaryGeometry make_geometry(std::string name, std::vector<BoundaryPiece> pieces);

BoundaryGeometry make_circle(double radius);
BoundaryGeometry make_ellipse(double a, double b);
// x(theta) = (cos theta + 0.65 cos 2 theta - 0.65, 1.5 sin theta).
BoundaryGeometry make_kite();
BoundaryGeometry make_square(double side);
// Vertices in counterclockwise order; the polygon is closed implicitly.
BoundaryGeometry make_polygon(const std::vector<Vec2>& vertices);

BoundaryPiece make_segment(const Vec2& a, const Vec2& b);
// Arc of the circle |x - center| = radius from angle theta0 to theta1 (theta1 > theta0).
BoundaryPiece make_arc(const Vec2& center, double radius, double theta0, double theta1);

Classification classify(const BoundaryGeometry& g);
BoundaryPoint evaluate(const BoundaryGeometry& g, int piece, double t);

// Interior angles at the junctions between consecutive pieces where the tangent jumps.
std::vector<double> corner_angles(const BoundaryGeometry& g);

BoundaryGeometry transformed(const BoundaryGeometry& g, double angle, const Vec2& shift);
BoundaryGeometry reversed(const BoundaryGeometry& g);

// Builds a geometry from a registry line such as "circle radius=1.0".
BoundaryGeometry parse_geometry(const std::string& spec);

}  // namespace helmnorm
