#pragma once

// Nystrom discretizations of the Helmholtz layer operators on 2-d boundaries.
//
// Matrices act on nodal values and include the quadrature weights, so that
// (A v)_i approximates the operator applied to v at node i. In this convention
// the weight-symmetrized matrix W^{1/2} A W^{-1/2} is complex-symmetric for S,
// and D' = M^{-1} D^T M.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "helmnorm/geometry.hpp"

namespace helmnorm {

enum class OperatorKind { S, D, Dprime, A_direct, A_indirect, custom };
enum class Scheme { kress, panel };

std::string to_string(OperatorKind kind);
OperatorKind parse_operator_kind(const std::string& text);
std::uint32_t kind_code(OperatorKind kind);
OperatorKind kind_from_code(std::uint32_t code);

struct QuadratureNode {
  int piece;
  double t;
  Vec2 point;
  Vec2 normal;
  double weight;
  double jacobian;  // |gamma'(t)|
  double curvature;
};

struct Panel {
  int piece;
  double t0;
  double t1;
  int first;  // index of the panel's first node
};

struct Discretization {
  std::vector<QuadratureNode> nodes;
  RealVector weights;  // diagonal of the mass matrix M
  RealMatrix diff;     // arc-length derivative, block diagonal over pieces
  double k = 0.0;
  Scheme scheme = Scheme::kress;
  std::string id;
  std::vector<Panel> panels;  // panel scheme only
  int order = 0;              // nodes per panel
  // Set when the boundary is a circle sampled at equispaced angles.
  bool equispaced_circle = false;
  double circle_radius = 0.0;

  Eigen::Index size() const { return weights.size(); }
  double length() const { return weights.sum(); }
};

struct DenseOperator {
  ComplexMatrix matrix;
  OperatorKind kind = OperatorKind::custom;
  double k = 0.0;
  double eta = 0.0;
  std::string discretization_id;
};

struct AssemblyOptions {
  double ppw = 10.0;
  int min_nodes = 64;
  int panel_order = 16;
  double grading = 3.0;
  int threads = 1;
};

// max(min_nodes, ceil(ppw k L / 2 pi)), rounded up to an even count.
int required_nodes(const BoundaryGeometry& g, double k, const AssemblyOptions& opts = {});

// Kress trapezoidal nodes on a single periodic piece, graded Gauss panels otherwise.
// N = 0 selects required_nodes.
Discretization discretize(const BoundaryGeometry& g, double k, int N = 0, const AssemblyOptions& opts = {});

DenseOperator assemble_operator(const BoundaryGeometry& g, const Discretization& d, OperatorKind kind,
                                int threads = 1);

std::pair<Discretization, DenseOperator> assemble(const BoundaryGeometry& g, double k, int N, OperatorKind kind,
                                                  const AssemblyOptions& opts = {});

// 1/2 I + dlike - i eta S; dlike is D' for the direct and D for the indirect formulation.
DenseOperator combine(const DenseOperator& s, const DenseOperator& dlike, double eta, bool direct);

DenseOperator assemble_combined(const BoundaryGeometry& g, const Discretization& d, double eta, bool direct,
                                int threads = 1);
DenseOperator assemble_combined(const BoundaryGeometry& g, double k, int N, double eta, bool direct,
                                const AssemblyOptions& opts = {});

// W^{1/2} A W^{-1/2}.
ComplexMatrix weight_symmetrized(const DenseOperator& a, const Discretization& d);

}  // namespace helmnorm
