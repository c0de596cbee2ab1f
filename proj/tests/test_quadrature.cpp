#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "helmnorm/quadrature.hpp"

using namespace helmnorm;

TEST_CASE("gauss_legendre matches the tabulated 20-point rule") {
  const GaussRule g = gauss_legendre(20);
  using Ref = boost::math::quadrature::gauss<double, 20>;
  const auto& abscissa = Ref::abscissa();
  const auto& weights = Ref::weights();
  // Boost stores the nonnegative half of the symmetric rule.
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const Eigen::Index j = 10 + static_cast<Eigen::Index>(i);
    CHECK(g.nodes(j) == doctest::Approx(abscissa[i]).epsilon(1e-14));
    CHECK(g.weights(j) == doctest::Approx(weights[i]).epsilon(1e-13));
    CHECK(g.nodes(19 - j) == doctest::Approx(-abscissa[i]).epsilon(1e-14));
  }
}

TEST_CASE("gauss_legendre is exact through degree 2n - 1") {
  for (int n : {1, 2, 5, 16, 33}) {
    const GaussRule g = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < g.nodes.size(); ++i) s += g.weights(i) * std::pow(g.nodes(i), deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("lagrange interpolation reproduces polynomials and partitions unity") {
  const GaussRule g = gauss_legendre(12);
  const RealVector bary = barycentric_weights(g.nodes);
  for (double x : {-0.97, -0.3, 0.0, 0.41, 0.999, g.nodes(3)}) {
    const RealVector l = lagrange_basis(g.nodes, bary, x);
    CHECK(l.sum() == doctest::Approx(1.0).epsilon(1e-13));
    double interp = 0.0;
    for (Eigen::Index j = 0; j < l.size(); ++j) interp += l(j) * std::pow(g.nodes(j), 11);
    CHECK(interp == doctest::Approx(std::pow(x, 11)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("differentiation matrix is exact on polynomials of the rule's degree") {
  const GaussRule g = gauss_legendre(10);
  const RealMatrix d = differentiation_matrix(g.nodes, barycentric_weights(g.nodes));
  RealVector f(10), df(10);
  for (int i = 0; i < 10; ++i) {
    const double x = g.nodes(i);
    f(i) = 3.0 * std::pow(x, 9) - x * x + 2.0;
    df(i) = 27.0 * std::pow(x, 8) - 2.0 * x;
  }
  CHECK((d * f - df).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("periodic log weights integrate trigonometric modes exactly") {
  // int_0^{2pi} ln(4 sin^2(s/2)) cos(m s) ds = -2 pi / m for m >= 1 and 0 for m = 0.
  const int N = 32;
  const RealVector r = kress_log_weights(N);
  for (int m = 0; m < N / 2; ++m) {
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += r(j) * std::cos(m * 2.0 * pi * j / N);
    const double exact = m == 0 ? 0.0 : -2.0 * pi / m;
    CHECK(s == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("periodic log weights against adaptive quadrature for a smooth density") {
  const int N = 64;
  const RealVector r = kress_log_weights(N);
  auto f = [](double s) { return std::exp(std::cos(s)) * std::sin(2.0 * s + 0.3); };
  double rule = 0.0;
  for (int j = 0; j < N; ++j) rule += r(j) * f(2.0 * pi * j / N);
  boost::math::quadrature::tanh_sinh<double> ts;
  // Folded onto [0, pi] so the only logarithmic endpoint is s = 0.
  const double ref = ts.integrate(
      [&](double s) { return 2.0 * std::log(2.0 * std::sin(s / 2.0)) * (f(s) + f(2.0 * pi - s)); }, 0.0, pi);
  CHECK(rule == doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("periodic differentiation matrix is exact on band-limited functions") {
  const int N = 24;
  const RealMatrix d = periodic_diff_matrix(N);
  RealVector f(N), df(N);
  for (int j = 0; j < N; ++j) {
    const double t = 2.0 * pi * j / N;
    f(j) = std::cos(3.0 * t) + 0.5 * std::sin(11.0 * t);
    df(j) = -3.0 * std::sin(3.0 * t) + 5.5 * std::cos(11.0 * t);
  }
  CHECK((d * f - df).cwiseAbs().maxCoeff() < 1e-11);
  CHECK_THROWS(periodic_diff_matrix(7));
}

TEST_CASE("composite gauss integrates an oscillatory function") {
  const GaussRule g = composite_gauss(0.0, 3.0, 12);
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.nodes.size(); ++i) s += g.weights(i) * std::cos(20.0 * g.nodes(i));
  CHECK(s == doctest::Approx(std::sin(60.0) / 20.0).epsilon(1e-13));
  CHECK(g.nodes.size() == 12 * 16);
}
