#include "helmnorm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "helmnorm/quadrature.hpp"

namespace helmnorm {

namespace {

constexpr int kSamples = 1000;
constexpr double kJoinTol = 1e-12;

class Segment final : public Curve {
 public:
  Segment(Vec2 a, Vec2 b) : a_(std::move(a)), b_(std::move(b)) {}
  Vec2 point(double t) const override { return a_ + t * (b_ - a_); }
  Vec2 d1(double) const override { return b_ - a_; }
  Vec2 d2(double) const override { return Vec2::Zero(); }

 private:
  Vec2 a_, b_;
};

// center + (a cos theta, b sin theta), theta = theta0 + t (theta1 - theta0).
class EllipseArc final : public Curve {
 public:
  EllipseArc(Vec2 center, double a, double b, double theta0, double theta1)
      : c_(std::move(center)), a_(a), b_(b), t0_(theta0), span_(theta1 - theta0) {}
  Vec2 point(double t) const override {
    const double th = t0_ + span_ * t;
    return c_ + Vec2(a_ * std::cos(th), b_ * std::sin(th));
  }
  Vec2 d1(double t) const override {
    const double th = t0_ + span_ * t;
    return span_ * Vec2(-a_ * std::sin(th), b_ * std::cos(th));
  }
  Vec2 d2(double t) const override {
    const double th = t0_ + span_ * t;
    return -span_ * span_ * Vec2(a_ * std::cos(th), b_ * std::sin(th));
  }

 private:
  Vec2 c_;
  double a_, b_, t0_, span_;
};

class Kite final : public Curve {
 public:
  Vec2 point(double t) const override {
    const double th = 2.0 * pi * t;
    return {std::cos(th) + 0.65 * std::cos(2.0 * th) - 0.65, 1.5 * std::sin(th)};
  }
  Vec2 d1(double t) const override {
    const double th = 2.0 * pi * t;
    return 2.0 * pi * Vec2(-std::sin(th) - 1.3 * std::sin(2.0 * th), 1.5 * std::cos(th));
  }
  Vec2 d2(double t) const override {
    const double th = 2.0 * pi * t;
    return 4.0 * pi * pi * Vec2(-std::cos(th) - 2.6 * std::cos(2.0 * th), -1.5 * std::sin(th));
  }
};

class Reversed final : public Curve {
 public:
  explicit Reversed(std::shared_ptr<const Curve> base) : base_(std::move(base)) {}
  Vec2 point(double t) const override { return base_->point(1.0 - t); }
  Vec2 d1(double t) const override { return -base_->d1(1.0 - t); }
  Vec2 d2(double t) const override { return base_->d2(1.0 - t); }

 private:
  std::shared_ptr<const Curve> base_;
};

class Rigid final : public Curve {
 public:
  Rigid(std::shared_ptr<const Curve> base, double angle, Vec2 shift)
      : base_(std::move(base)), rot_(Eigen::Rotation2Dd(angle).toRotationMatrix()), shift_(std::move(shift)) {}
  Vec2 point(double t) const override { return rot_ * base_->point(t) + shift_; }
  Vec2 d1(double t) const override { return rot_ * base_->d1(t); }
  Vec2 d2(double t) const override { return rot_ * base_->d2(t); }

 private:
  std::shared_ptr<const Curve> base_;
  Eigen::Matrix2d rot_;
  Vec2 shift_;
};

double coordinate_scale(const std::vector<BoundaryPiece>& pieces) {
  double s = 1.0;
  for (const auto& p : pieces) {
    for (int i = 0; i <= 8; ++i) s = std::max(s, p.point(i / 8.0).cwiseAbs().maxCoeff());
  }
  return s;
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Chord sampling of the whole boundary checked pairwise with a bounding-box prefilter.
bool is_simple(const std::vector<BoundaryPiece>& pieces) {
  constexpr int per_piece = 128;
  std::vector<Vec2> pts;
  for (const auto& p : pieces) {
    for (int i = 0; i < per_piece; ++i) pts.push_back(p.point(static_cast<double>(i) / per_piece));
  }
  const int m = static_cast<int>(pts.size());
  struct Box { double x0, x1, y0, y1; };
  std::vector<Box> boxes(m);
  for (int i = 0; i < m; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % m];
    boxes[i] = {std::min(a.x(), b.x()), std::max(a.x(), b.x()), std::min(a.y(), b.y()), std::max(a.y(), b.y())};
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;
      const Box& a = boxes[i];
      const Box& b = boxes[j];
      if (a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0) continue;
      if (segments_intersect(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m])) return false;
    }
  }
  return true;
}

double parse_number(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("geometry parameter " + key + " is not a number: '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
  return out;
}

}  // namespace

BoundaryPiece::BoundaryPiece(std::shared_ptr<const Curve> curve, std::string label)
    : curve_(std::move(curve)), label_(std::move(label)) {
  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -kmin;
  double smin = kmin;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = static_cast<double>(i) / kSamples;
    smin = std::min(smin, speed(t));
    const double k = curvature(t);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
  }
  if (!(smin > 0.0)) throw std::domain_error("piece '" + label_ + "' has a degenerate parametrization");
  flat_ = std::max(std::abs(kmin), std::abs(kmax)) == 0.0;
  curved_ = kmin > 0.0;
  const double scale = std::max(1.0, point(0.0).cwiseAbs().maxCoeff());
  periodic_ = (point(0.0) - point(1.0)).norm() <= kJoinTol * scale &&
              (d1(0.0) - d1(1.0)).norm() <= kJoinTol * std::max(1.0, d1(0.0).norm()) &&
              (d2(0.0) - d2(1.0)).norm() <= 1e-10 * std::max(1.0, d2(0.0).norm());
  const GaussRule g = composite_gauss(0.0, 1.0, 64);
  for (Eigen::Index i = 0; i < g.nodes.size(); ++i) length_ += g.weights(i) * speed(g.nodes(i));
}

Vec2 BoundaryPiece::tangent(double t) const {
  const Vec2 d = d1(t);
  return d / d.norm();
}

Vec2 BoundaryPiece::normal(double t) const {
  const Vec2 d = d1(t);
  return Vec2(d.y(), -d.x()) / d.norm();
}

double BoundaryPiece::curvature(double t) const {
  const Vec2 a = d1(t);
  const Vec2 b = d2(t);
  const double s = a.norm();
  return cross(a, b) / (s * s * s);
}

BoundaryPiece BoundaryPiece::reversed() const {
  return BoundaryPiece(std::make_shared<Reversed>(curve_), label_ + "~");
}

BoundaryPiece BoundaryPiece::transformed(double angle, const Vec2& shift) const {
  return BoundaryPiece(std::make_shared<Rigid>(curve_, angle, shift), label_);
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::smooth_curved: return "smooth_curved";
    case Classification::smooth: return "smooth";
    case Classification::piecewise_curved: return "piecewise_curved";
    case Classification::piecewise_smooth: return "piecewise_smooth";
  }
  return "unknown";
}

double BoundaryGeometry::length() const {
  double s = 0.0;
  for (const auto& p : pieces) s += p.length();
  return s;
}

Classification classify(const BoundaryGeometry& g) {
  const bool all_curved = std::all_of(g.pieces.begin(), g.pieces.end(), [](const auto& p) { return p.is_curved(); });
  if (g.pieces.size() == 1 && g.pieces.front().is_periodic()) {
    return all_curved ? Classification::smooth_curved : Classification::smooth;
  }
  return all_curved ? Classification::piecewise_curved : Classification::piecewise_smooth;
}

BoundaryGeometry make_geometry(std::string name, std::vector<BoundaryPiece> pieces) {
  if (pieces.empty()) throw std::domain_error("geometry '" + name + "' has no pieces");
  const double scale = coordinate_scale(pieces);
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 end = pieces[i].point(1.0);
    const Vec2 next = pieces[(i + 1) % n].point(0.0);
    if ((end - next).norm() > kJoinTol * scale) {
      throw std::domain_error("geometry '" + name + "': piece " + std::to_string(i) +
                              " does not end where the next piece starts");
    }
  }
  if (!is_simple(pieces)) throw std::domain_error("geometry '" + name + "' is self-intersecting");
  BoundaryGeometry g;
  g.name = std::move(name);
  g.pieces = std::move(pieces);
  g.closed = true;
  g.classification = classify(g);
  return g;
}

BoundaryGeometry make_circle(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("circle radius must be positive");
  auto c = std::make_shared<EllipseArc>(Vec2::Zero(), radius, radius, 0.0, 2.0 * pi);
  return make_geometry("circle", {BoundaryPiece(c, "circle")});
}

BoundaryGeometry make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("ellipse semi-axes must be positive");
  auto c = std::make_shared<EllipseArc>(Vec2::Zero(), a, b, 0.0, 2.0 * pi);
  return make_geometry("ellipse", {BoundaryPiece(c, "ellipse")});
}

BoundaryGeometry make_kite() {
  return make_geometry("kite", {BoundaryPiece(std::make_shared<Kite>(), "kite")});
}

BoundaryGeometry make_polygon(const std::vector<Vec2>& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw std::domain_error("polygon needs at least 3 vertices");
  double area = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    area += 0.5 * cross(vertices[i], vertices[(i + 1) % n]);
    scale = std::max(scale, (vertices[(i + 1) % n] - vertices[i]).norm());
  }
  if (!(area > 1e-14 * scale * scale)) {
    throw std::domain_error("polygon vertices must be non-collinear and counterclockwise");
  }
  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    const Vec2& c = vertices[(i + 2) % n];
    if ((b - a).norm() <= 1e-14 * scale) throw std::domain_error("polygon has repeated vertices");
    if (std::abs(cross(b - a, c - b)) <= 1e-14 * scale * scale && (b - a).dot(c - b) > 0.0) {
      throw std::domain_error("polygon has three consecutive collinear vertices");
    }
    pieces.push_back(make_segment(a, b));
  }
  return make_geometry("polygon", std::move(pieces));
}

BoundaryGeometry make_square(double side) {
  if (!(side > 0.0)) throw std::domain_error("square side must be positive");
  BoundaryGeometry g = make_polygon({{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}});
  g.name = "square";
  return g;
}

BoundaryPiece make_segment(const Vec2& a, const Vec2& b) {
  if ((b - a).norm() == 0.0) throw std::domain_error("segment endpoints coincide");
  return BoundaryPiece(std::make_shared<Segment>(a, b), "segment");
}

BoundaryPiece make_arc(const Vec2& center, double radius, double theta0, double theta1) {
  if (!(radius > 0.0) || !(theta1 > theta0)) throw std::domain_error("arc needs radius > 0 and theta1 > theta0");
  return BoundaryPiece(std::make_shared<EllipseArc>(center, radius, radius, theta0, theta1), "arc");
}

BoundaryPoint evaluate(const BoundaryGeometry& g, int piece, double t) {
  if (piece < 0 || piece >= static_cast<int>(g.pieces.size())) {
    throw std::out_of_range("piece index " + std::to_string(piece) + " out of range");
  }
  if (!(t >= 0.0 && t <= 1.0)) throw std::out_of_range("parameter t must lie in [0, 1]");
  const BoundaryPiece& p = g.pieces[piece];
  return {p.point(t), p.tangent(t), p.normal(t), p.speed(t), p.curvature(t)};
}

std::vector<double> corner_angles(const BoundaryGeometry& g) {
  std::vector<double> out;
  const std::size_t n = g.pieces.size();
  if (n == 1 && g.pieces.front().is_periodic()) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 tin = g.pieces[i].tangent(1.0);
    const Vec2 tout = g.pieces[(i + 1) % n].tangent(0.0);
    const double turn = std::atan2(cross(tin, tout), tin.dot(tout));
    if (std::abs(turn) > 1e-12) out.push_back(pi - turn);
  }
  return out;
}

BoundaryGeometry transformed(const BoundaryGeometry& g, double angle, const Vec2& shift) {
  std::vector<BoundaryPiece> pieces;
  for (const auto& p : g.pieces) pieces.push_back(p.transformed(angle, shift));
  return make_geometry(g.name, std::move(pieces));
}

BoundaryGeometry reversed(const BoundaryGeometry& g) {
  std::vector<BoundaryPiece> pieces;
  for (auto it = g.pieces.rbegin(); it != g.pieces.rend(); ++it) pieces.push_back(it->reversed());
  return make_geometry(g.name, std::move(pieces));
}

BoundaryGeometry parse_geometry(const std::string& spec) {
  std::stringstream ss(spec);
  std::string kind;
  ss >> kind;
  if (kind.empty()) throw std::invalid_argument("empty geometry specification");
  std::map<std::string, std::string> params;
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("geometry parameter without '=': " + token);
    params[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto take = [&](const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = parse_number(it->second, key);
    params.erase(it);
    return v;
  };

  double angle = take("rotate", 0.0);
  Vec2 shift = Vec2::Zero();
  if (auto it = params.find("shift"); it != params.end()) {
    const auto v = parse_list(it->second, "shift");
    if (v.size() != 2) throw std::invalid_argument("shift expects two numbers");
    shift = Vec2(v[0], v[1]);
    params.erase(it);
  }

  BoundaryGeometry g;
  if (kind == "circle") {
    g = make_circle(take("radius", 1.0));
  } else if (kind == "ellipse") {
    const double a = take("a", 1.0);
    g = make_ellipse(a, take("b", 1.0));
  } else if (kind == "kite") {
    g = make_kite();
  } else if (kind == "square") {
    g = make_square(take("side", 1.0));
  } else if (kind == "polygon") {
    const auto it = params.find("vertices");
    if (it == params.end()) throw std::invalid_argument("polygon needs vertices=x0,y0;x1,y1;...");
    std::vector<Vec2> verts;
    std::stringstream vs(it->second);
    std::string pair;
    while (std::getline(vs, pair, ';')) {
      const auto v = parse_list(pair, "vertices");
      if (v.size() != 2) throw std::invalid_argument("polygon vertex needs two coordinates: " + pair);
      verts.emplace_back(v[0], v[1]);
    }
    params.erase(it);
    g = make_polygon(verts);
  } else {
    throw std::invalid_argument("unknown geometry '" + kind + "'");
  }
  if (!params.empty()) {
    throw std::invalid_argument("unknown parameter '" + params.begin()->first + "' for geometry " + kind);
  }
  if (angle != 0.0 || shift.squaredNorm() > 0.0) {
    const std::string name = g.name;
    g = transformed(g, angle, shift);
    g.name = name;
  }
  return g;
}

}  // namespace helmnorm
