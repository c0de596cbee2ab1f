#include <doctest.h>

#include <cmath>
#include <random>

#include "helmnorm/circle_oracle.hpp"
#include "helmnorm/norms.hpp"

using namespace helmnorm;

namespace {

DenseOperator wrap(const ComplexMatrix& m, double k) {
  DenseOperator a;
  a.matrix = m;
  a.k = k;
  return a;
}

ComplexMatrix random_matrix(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("identity has unit L2 norm") {
  const BoundaryGeometry g = make_kite();
  const Discretization d = discretize(g, 4.0);
  const NormReport r = operator_norm(wrap(ComplexMatrix::Identity(d.size(), d.size()), 4.0), d, NormSpec::parse("L2->L2"));
  CHECK(r.norm_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.method == NormMethod::dense_svd);
  CHECK(r.converged);
}

TEST_CASE("Fourier multiplier 1/(1+n^2) has unit L2->H1 norm on the circle") {
  const BoundaryGeometry g = make_circle(1.0);
  const int N = 64;
  const Discretization d = discretize(g, 1.0, N);
  ComplexMatrix a = ComplexMatrix::Zero(N, N);
  for (int n = -N / 2 + 1; n < N / 2; ++n) {
    const double an = 1.0 / (1.0 + double(n) * n);
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) a(i, j) += an * std::exp(I * double(n) * 2.0 * pi * double(i - j) / double(N)) / double(N);
    }
  }
  CHECK(operator_norm(wrap(a, 1.0), d, NormSpec::parse("L2->H1")).norm_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("power iteration agrees with the dense decomposition") {
  const BoundaryGeometry g = make_circle(1.0);
  const Discretization d = discretize(g, 1.0, 200);
  const DenseOperator a = wrap(random_matrix(200, 7), 1.0);
  NormOptions power;
  power.force_power_iteration = true;
  const NormReport dense = operator_norm(a, d, NormSpec::parse("L2->L2"));
  const NormReport iter = operator_norm(a, d, NormSpec::parse("L2->L2"), power);
  CHECK(iter.method == NormMethod::power_iteration);
  CHECK(iter.converged);
  CHECK(iter.residual <= 1e-10);
  CHECK(std::abs(iter.norm_value - dense.norm_value) <= 1e-9 * dense.norm_value);

  // Same check on an assembled operator with an H1k target.
  const Discretization dk = discretize(g, 20.0);
  const DenseOperator s = assemble_operator(g, dk, OperatorKind::S);
  const double x = operator_norm(s, dk, NormSpec::parse("L2->H1k")).norm_value;
  const double y = operator_norm(s, dk, NormSpec::parse("L2->H1k"), power).norm_value;
  CHECK(std::abs(x - y) <= 1e-9 * x);
}

TEST_CASE("power iteration reports non-convergence") {
  const BoundaryGeometry g = make_circle(1.0);
  const Discretization d = discretize(g, 1.0, 200);
  NormOptions opts;
  opts.force_power_iteration = true;
  opts.max_iterations = 2;
  const NormReport r = operator_norm(wrap(random_matrix(200, 3), 1.0), d, NormSpec::parse("L2->L2"), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
}

TEST_CASE("nodal norms") {
  const BoundaryGeometry g = make_circle(1.0);
  const Discretization d = discretize(g, 1.0, 64);
  const ComplexVector c = ComplexVector::Constant(64, Complex(3.0, -4.0));
  CHECK(h1k_norm(c, d) == doctest::Approx(5.0 * std::sqrt(2.0 * pi)).epsilon(1e-13));
  ComplexVector e(64);
  for (int j = 0; j < 64; ++j) e(j) = std::exp(I * 2.0 * pi * double(j) / 64.0);
  CHECK(h1k_norm(e, d) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-10));
  CHECK(h1_norm(e, d) == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-10));
  CHECK(l2_norm(e, d) == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-13));

  const Discretization dk = discretize(make_square(1.0), 5.0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexVector v(dk.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = Complex(normal(rng), normal(rng));
    CHECK(h1k_norm(v, dk) >= l2_norm(v, dk));
  }
  CHECK_THROWS_AS(h1k_norm(ComplexVector::Zero(3), d), std::invalid_argument);
}

TEST_CASE("target monotonicity and the H1 scaling bridge on assembled operators") {
  for (const BoundaryGeometry& g : {make_circle(1.0), make_kite(), make_square(1.0)}) {
    for (double k : {3.0, 11.0}) {
      const Discretization d = discretize(g, k);
      for (auto kind : {OperatorKind::S, OperatorKind::D, OperatorKind::Dprime, OperatorKind::A_direct}) {
        if (!g.is_smooth() && kind != OperatorKind::S) continue;
        const DenseOperator a = kind == OperatorKind::A_direct ? assemble_combined(g, d, k, true)
                                                               : assemble_operator(g, d, kind);
        const double l2 = operator_norm(a, d, NormSpec::parse("L2->L2")).norm_value;
        const double h1k = operator_norm(a, d, NormSpec::parse("L2->H1k")).norm_value;
        const double h1 = operator_norm(a, d, NormSpec::parse("L2->H1")).norm_value;
        CHECK(h1k >= l2 * (1.0 - 1e-12));
        CHECK(h1 <= k * h1k * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("duality of the single-layer norms on the circle") {
  const BoundaryGeometry g = make_circle(1.0);
  const double k = 17.0;
  const Discretization d = discretize(g, k);
  const DenseOperator s = assemble_operator(g, d, OperatorKind::S);
  const double forward = operator_norm(s, d, NormSpec::parse("L2->H1")).norm_value;
  const double dual = operator_norm(s, d, NormSpec::parse("Hs(-1)->L2")).norm_value;
  CHECK(std::abs(forward - dual) <= 1e-8 * forward);
  const double oracle_dual = oracle_norm(OperatorKind::S, k, NormSpec::parse("Hs(-1)->L2"), oracle_min_modes(k)).norm_value;
  CHECK(std::abs(oracle_dual - forward) <= 1e-8 * forward);
}

TEST_CASE("incompatible specs are refused") {
  const BoundaryGeometry kite = make_kite();
  const Discretization d = discretize(kite, 4.0);
  const DenseOperator s = assemble_operator(kite, d, OperatorKind::S);
  CHECK_THROWS_AS(operator_norm(s, d, NormSpec::trace_pair(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::parse("H1->L2"), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::parse("L2-H1"), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::parse("L2->Hs(x)"), std::invalid_argument);
  NormSpec bad{Space::h1k(), Space::l2()};
  CHECK_THROWS_AS(operator_norm(s, d, bad), std::invalid_argument);
  const Discretization other = discretize(kite, 5.0);
  CHECK_THROWS_AS(operator_norm(s, other, NormSpec::parse("L2->L2")), std::invalid_argument);
  CHECK(NormSpec::parse("Hs(-0.5)->Hs(0.5)").str() == "Hs(-0.5)->Hs(0.5)");
  CHECK(NormSpec::parse("L2->H1k").str() == "L2->H1k");
}
