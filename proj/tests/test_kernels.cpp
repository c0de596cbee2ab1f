#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "helmnorm/kernels.hpp"

using namespace helmnorm;

namespace {

KernelPoint2 point2(Vec2 x, Vec2 y, double k) {
  KernelPoint2 p;
  p.x = x;
  p.y = y;
  p.k = k;
  return p;
}

}  // namespace

TEST_CASE("two-dimensional fundamental solution against reference Bessel values") {
  const double k = 3.0;
  const Vec2 x(0.2, -0.1), y(1.0, 0.5);
  const double kr = k * (x - y).norm();
  const Complex ref = I / 4.0 * Complex(boost::math::cyl_bessel_j(0, kr), boost::math::cyl_neumann(0, kr));
  const Complex v = phi(point2(x, y, k));
  CHECK(std::abs(v - ref) < 1e-14 * std::abs(ref) + 1e-15);
  CHECK(std::abs(phi(point2(y, x, k)) - v) == 0.0);
}

TEST_CASE("three-dimensional fundamental solution") {
  KernelPoint3 p;
  p.x = Vec3(0.0, 0.0, 0.0);
  p.y = Vec3(1.0, 2.0, 2.0);
  p.k = 2.0;
  const Complex ref = std::exp(I * 6.0) / (4.0 * pi * 3.0);
  CHECK(std::abs(phi(p) - ref) < 1e-16);
}

TEST_CASE("normal-derivative kernels match finite differences") {
  const double k = 7.0, h = 1e-5;
  const Vec2 x(0.3, 0.4), y(-0.5, 0.1);
  const Vec2 nx = Vec2(1.0, 2.0).normalized(), ny = Vec2(-3.0, 1.0).normalized();
  KernelPoint2 p = point2(x, y, k);
  p.normal_x = nx;
  p.normal_y = ny;
  const Complex fd_y = (phi(point2(x, y + h * ny, k)) - phi(point2(x, y - h * ny, k))) / (2.0 * h);
  const Complex fd_x = (phi(point2(x + h * nx, y, k)) - phi(point2(x - h * nx, y, k))) / (2.0 * h);
  CHECK(std::abs(dlp_kernel(p) - fd_y) < 1e-8 * std::abs(fd_y));
  CHECK(std::abs(adlp_kernel(p) - fd_x) < 1e-8 * std::abs(fd_x));
  CHECK(std::abs(grad_x_phi(p, nx) - adlp_kernel(p)) < 1e-15);

  KernelPoint3 q;
  q.x = Vec3(0.1, 0.2, 0.3);
  q.y = Vec3(-0.4, 0.5, 1.0);
  q.k = 4.0;
  const Vec3 v = Vec3(1.0, -1.0, 0.5).normalized();
  KernelPoint3 qp = q, qm = q;
  qp.x += h * v;
  qm.x -= h * v;
  const Complex fd3 = (phi(qp) - phi(qm)) / (2.0 * h);
  CHECK(std::abs(grad_x_phi(q, v) - fd3) < 1e-8 * std::abs(fd3));
}

TEST_CASE("fundamental solution satisfies the Helmholtz equation away from the source") {
  const double k = 5.0, h = 1e-3;
  const Vec2 y(0.0, 0.0);
  for (const Vec2& x : {Vec2(0.7, 0.2), Vec2(-1.5, 0.9)}) {
    Complex lap = -4.0 * phi(point2(x, y, k));
    for (const Vec2& e : {Vec2(h, 0.0), Vec2(0.0, h)}) {
      lap += phi(point2(x + e, y, k)) + phi(point2(x - e, y, k));
    }
    lap /= h * h;
    const Complex residual = lap + k * k * phi(point2(x, y, k));
    CHECK(std::abs(residual) < 1e-4 * k * k * std::abs(phi(point2(x, y, k))));
  }
}

TEST_CASE("kernel preconditions") {
  CHECK_THROWS_AS(phi(point2(Vec2(1, 1), Vec2(1, 1), 1.0)), SingularityError);
  CHECK_THROWS_AS(phi(point2(Vec2(1, 1), Vec2(0, 1), 0.0)), std::domain_error);
  CHECK_THROWS_AS(dlp_kernel(point2(Vec2(1, 1), Vec2(0, 1), 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(adlp_kernel(point2(Vec2(1, 1), Vec2(0, 1), 1.0)), std::invalid_argument);
}
