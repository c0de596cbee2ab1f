#pragma once

// Operator norms between discrete L2, H1, semiclassical H1_k and Fourier-weighted
// spaces on boundary discretizations.

#include <cstdint>
#include <string>

#include <Eigen/Eigenvalues>

#include "helmnorm/assembly.hpp"

namespace helmnorm {

struct Space {
  enum class Type { L2, H1, H1k, Hs_circle };
  Type type = Type::L2;
  double s = 0.0;  // Sobolev index for Hs_circle

  static Space l2() { return {Type::L2, 0.0}; }
  static Space h1() { return {Type::H1, 0.0}; }
  static Space h1k() { return {Type::H1k, 0.0}; }
  static Space hs(double s) { return {Type::Hs_circle, s}; }
};

struct NormSpec {
  Space source;
  Space target;

  // "L2->H1k", "Hs(-0.5)->Hs(0.5)".
  std::string str() const;
  static NormSpec parse(const std::string& text);
  // Source H^{s-1/2}, target H^{s+1/2} on the circle.
  static NormSpec trace_pair(double s) { return {Space::hs(s - 0.5), Space::hs(s + 0.5)}; }
};

std::string to_string(const Space& s);

enum class NormMethod { dense_svd, power_iteration, fourier_oracle };
std::string to_string(NormMethod m);

struct NormReport {
  OperatorKind kind = OperatorKind::custom;
  double k = 0.0;
  Eigen::Index N = 0;
  NormSpec spec;
  double norm_value = 0.0;
  NormMethod method = NormMethod::dense_svd;
  bool converged = false;
  int iterations = 0;
  // Relative change of the Rayleigh quotient at the last power step; zero for direct methods.
  double residual = 0.0;
};

struct NormOptions {
  Eigen::Index dense_limit = 4000;
  double tolerance = 1e-10;
  int stable_iterations = 3;
  int max_iterations = 5000;
  std::uint64_t seed = 0x5eed1234abcdULL;
  bool force_power_iteration = false;
};

// Gram matrix of the discrete inner product for a space on the discretization.
RealMatrix gram_matrix(const Space& space, const Discretization& d);

NormReport operator_norm(const DenseOperator& a, const Discretization& d, const NormSpec& spec,
                         const NormOptions& opts = {});

// Largest singular value of B from the eigenvalues of the Hermitian matrix B^H B.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& b) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat normal = Mat::Zero(b.cols(), b.cols());
  normal.template selfadjointView<Eigen::Lower>().rankUpdate(b.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(normal, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, static_cast<double>(es.eigenvalues().maxCoeff())));
}

struct PowerResult {
  double sigma = 0.0;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
};

// Power iteration on B^H B with a seeded start vector.
PowerResult power_sigma_max(const ComplexMatrix& b, const NormOptions& opts = {});

double l2_norm(const ComplexVector& v, const Discretization& d);
double h1_norm(const ComplexVector& v, const Discretization& d);
double h1k_norm(const ComplexVector& v, const Discretization& d);

}  // namespace helmnorm
