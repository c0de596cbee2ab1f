#pragma once

// Quadrature and interpolation rules shared by geometry, assembly and experiments.

#include "helmnorm/types.hpp"

namespace helmnorm {

struct GaussRule {
  RealVector nodes;    // ascending, in (-1, 1)
  RealVector weights;
};

GaussRule gauss_legendre(int n);

// Barycentric weights for polynomial interpolation on the given nodes.
RealVector barycentric_weights(const RealVector& nodes);

// Values of the Lagrange basis polynomials at x.
RealVector lagrange_basis(const RealVector& nodes, const RealVector& bary, double x);

// D(i, j) = l_j'(nodes(i)): exact differentiation of the interpolant.
RealMatrix differentiation_matrix(const RealVector& nodes, const RealVector& bary);

// Weights R_j(t_i) = R(|i - j|) of the periodic product rule for
// integrals of ln(4 sin^2((t - s)/2)) f(s) over [0, 2pi) with N = 2n equispaced nodes.
RealVector kress_log_weights(int N);

// d/dtheta of the trigonometric interpolant on N equispaced nodes of [0, 2pi), N even.
RealMatrix periodic_diff_matrix(int N);

// Composite Gauss-Legendre rule on [a, b] with the given number of equal panels.
GaussRule composite_gauss(double a, double b, int panels, int order = 16);

}  // namespace helmnorm
