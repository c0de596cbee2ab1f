#pragma once

// Helmholtz fundamental solution and its first derivatives in two and three dimensions.

#include <optional>

#include "helmnorm/types.hpp"

namespace helmnorm {

template <int Dim>
struct KernelPoint {
  static_assert(Dim == 2 || Dim == 3, "kernels are defined for d = 2 and d = 3");
  using Point = Eigen::Matrix<double, Dim, 1>;

  Point x;
  Point y;
  std::optional<Point> normal_x;
  std::optional<Point> normal_y;
  double k = 1.0;
};

using KernelPoint2 = KernelPoint<2>;
using KernelPoint3 = KernelPoint<3>;

// (i/4) H0(k|x-y|) in 2-d, exp(ik|x-y|) / (4 pi |x-y|) in 3-d.
template <int Dim>
Complex phi(const KernelPoint<Dim>& p);

// dPhi/dn(y).
template <int Dim>
Complex dlp_kernel(const KernelPoint<Dim>& p);

// dPhi/dn(x).
template <int Dim>
Complex adlp_kernel(const KernelPoint<Dim>& p);

// <V, grad_x Phi>.
template <int Dim>
Complex grad_x_phi(const KernelPoint<Dim>& p, const typename KernelPoint<Dim>::Point& v);

}  // namespace helmnorm
