#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace helmnorm {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;
using RealVector = Vector<double>;
using ComplexVector = Vector<Complex>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr Complex I{0.0, 1.0};

// Coincident source and target points in a kernel evaluation.
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Operator requested on a boundary lacking the regularity it needs.
struct UnsupportedRegularity : std::domain_error {
  using std::domain_error::domain_error;
};

// Too few quadrature nodes for the requested wavenumber or region.
struct UnderResolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace helmnorm
