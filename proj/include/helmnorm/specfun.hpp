#pragma once

// Bessel and Hankel functions of integer order and real argument.

#include "helmnorm/types.hpp"

namespace helmnorm::specfun {

struct SpecialFunctionValue {
  Complex value;
  double abs_error_estimate = 0.0;
};

// Jn(x) for n >= 0, 0 <= x <= 1e4, n <= 2x + 200.
double bessel_j(int n, double x);
// Yn(x) for n >= 0, x > 0.
double bessel_y(int n, double x);
// Jn(x) + i Yn(x).
Complex hankel1(int n, double x);
SpecialFunctionValue hankel1_checked(int n, double x);

double bessel_j_prime(int n, double x);
double bessel_y_prime(int n, double x);
Complex hankel1_prime(int n, double x);

// Values for orders 0..nmax at a single argument.
RealVector bessel_j_array(int nmax, double x);
RealVector bessel_y_array(int nmax, double x);

// J0, J1, Y0, Y1 at one argument; the kernel hot path.
struct Order01 {
  double j0, j1, y0, y1;
};
Order01 bessel_order01(double x);

namespace detail {

// Argument above which J0, J1, Y0, Y1 use the Hankel asymptotic expansion.
inline constexpr double asymptotic_threshold = 25.0;

Order01 order01_asymptotic(double x);
Order01 order01_miller(double x);
// Ascending power series for Jn; accurate where x^2/4 is small against n+1.
double bessel_j_series(int n, double x);
// Miller downward recurrence for J0..Jnmax, normalized by J0 + 2 sum J2k = 1.
RealVector bessel_j_miller(int nmax, double x);

}  // namespace detail

}  // namespace helmnorm::specfun
