#include "helmnorm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace helmnorm::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double rescale_limit = 1e250;

void check_order_argument(int n, double x) {
  if (n < 0) throw std::out_of_range("Bessel order must be nonnegative, got " + std::to_string(n));
  if (!(x >= 0.0) || !std::isfinite(x)) throw std::out_of_range("Bessel argument must be finite and nonnegative");
}

// Even starting order for the downward recurrence.
int miller_start(int nmax, double x) {
  const double top = std::max(static_cast<double>(nmax), x);
  int m = static_cast<int>(std::ceil(top + 15.0 * std::cbrt(std::max(x, 2.0) / 2.0) + 20.0));
  return m + (m % 2);
}

// Asymptotic P and Q sums for order nu; tail is the last term kept.
void hankel_pq(int nu, double x, double& p, double& q, double& tail) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  p = 1.0;
  q = 0.0;
  tail = 0.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag > prev) break;
    // Terms alternate in sign pairwise: k = 1 -> Q+, 2 -> P-, 3 -> Q-, 4 -> P+.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    tail = mag;
    prev = mag;
    if (mag < 1e-18) break;
  }
}

}  // namespace

namespace detail {

Order01 order01_asymptotic(double x) {
  double p0, q0, t0, p1, q1, t1;
  hankel_pq(0, x, p0, q0, t0);
  hankel_pq(1, x, p1, q1, t1);
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double amp = std::sqrt(2.0 / (pi * x)) / std::numbers::sqrt2;
  // x - pi/4 and x - 3pi/4 phases expanded to avoid subtracting pi multiples.
  const double c0 = c + s, s0 = s - c;
  const double c1 = s - c, s1 = -(s + c);
  Order01 r;
  r.j0 = amp * (p0 * c0 - q0 * s0);
  r.y0 = amp * (p0 * s0 + q0 * c0);
  r.j1 = amp * (p1 * c1 - q1 * s1);
  r.y1 = amp * (p1 * s1 + q1 * c1);
  return r;
}

Order01 order01_miller(double x) {
  if (!(x > 0.0)) throw std::domain_error("order01_miller requires x > 0");
  const int m = miller_start(1, x);
  double up2 = 0.0;    // J_{k+2}
  double up1 = 0.0;    // J_{k+1}
  double cur = 1e-30;  // J_k
  double norm = 0.0;   // J0 + 2 sum J_2k
  double y0sum = 0.0;  // sum (-1)^h J_2h / h
  double y1sum = 0.0;  // sum (-1)^h (J_{2h-1} - J_{2h+1}) / h
  for (int k = m; k >= 1; --k) {
    if (k % 2 == 0) {
      const int h = k / 2;
      norm += 2.0 * cur;
      y0sum += (h % 2 == 0 ? cur : -cur) / h;
    } else {
      const int h = (k + 1) / 2;
      y1sum += (h % 2 == 0 ? 1.0 : -1.0) * (cur - up2) / h;
    }
    const double down = (2.0 * k / x) * cur - up1;
    up2 = up1;
    up1 = cur;
    cur = down;
    if (std::abs(cur) > rescale_limit) {
      const double f = 1.0 / rescale_limit;
      cur *= f; up1 *= f; up2 *= f; norm *= f; y0sum *= f; y1sum *= f;
    }
  }
  norm += cur;
  const double inv = 1.0 / norm;
  Order01 r;
  r.j0 = cur * inv;
  r.j1 = up1 * inv;
  const double lg = std::log(x / 2.0) + euler_gamma;
  r.y0 = (2.0 / pi) * (lg * r.j0 - 2.0 * y0sum * inv);
  r.y1 = (2.0 / pi) * (lg * r.j1 - r.j0 / x + y1sum * inv);
  return r;
}

double bessel_j_series(int n, double x) {
  check_order_argument(n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  const double h = x / 2.0;
  double term = std::exp(n * std::log(h) - std::lgamma(n + 1.0));
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -(h * h) / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

RealVector bessel_j_miller(int nmax, double x) {
  check_order_argument(nmax, x);
  RealVector out = RealVector::Zero(nmax + 1);
  if (x == 0.0) {
    out(0) = 1.0;
    return out;
  }
  const int m = miller_start(nmax, x);
  double next = 0.0;
  double cur = 1e-30;
  double norm = 0.0;
  for (int k = m; k >= 1; --k) {
    if (k <= nmax) out(k) = cur;
    if (k % 2 == 0) norm += 2.0 * cur;
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > rescale_limit) {
      const double f = 1.0 / rescale_limit;
      cur *= f; next *= f; norm *= f;
      if (k <= nmax) out.segment(k, nmax + 1 - k) *= f;
    }
  }
  out(0) = cur;
  norm += cur;
  return out / norm;
}

}  // namespace detail

Order01 bessel_order01(double x) {
  if (!(x > 0.0)) throw std::domain_error("Bessel functions of order 0/1 need x > 0");
  return x >= detail::asymptotic_threshold ? detail::order01_asymptotic(x) : detail::order01_miller(x);
}

RealVector bessel_j_array(int nmax, double x) {
  check_order_argument(nmax, x);
  if (x > 1e4 || nmax > 2.0 * x + 200.0) {
    throw std::out_of_range("bessel_j supports x <= 1e4 and n <= 2x + 200");
  }
  if (x < detail::asymptotic_threshold) return detail::bessel_j_miller(nmax, x);

  const auto o = detail::order01_asymptotic(x);
  const int nu = std::min(nmax, static_cast<int>(std::floor(x)));
  RealVector out(nmax + 1);
  out(0) = o.j0;
  if (nmax >= 1) out(1) = o.j1;
  for (int k = 1; k < nu; ++k) out(k + 1) = (2.0 * k / x) * out(k) - out(k - 1);
  if (nmax > nu) {
    // Above the turning point the upward recurrence is unstable: recur downward
    // and match at order nu, where Jn is positive and away from its zeros.
    const int m = miller_start(nmax, x);
    double next = 0.0, cur = 1e-30;
    RealVector tmp = RealVector::Zero(nmax + 1 - nu);
    for (int k = m; k > nu; --k) {
      if (k <= nmax) tmp(k - nu) = cur;
      const double prev = (2.0 * k / x) * cur - next;
      next = cur;
      cur = prev;
      if (std::abs(cur) > rescale_limit) {
        cur /= rescale_limit;
        next /= rescale_limit;
        tmp /= rescale_limit;
      }
    }
    tmp(0) = cur;
    const double scale = out(nu) / cur;
    for (int k = nu + 1; k <= nmax; ++k) out(k) = tmp(k - nu) * scale;
  }
  return out;
}

RealVector bessel_y_array(int nmax, double x) {
  if (nmax < 0) throw std::out_of_range("Bessel order must be nonnegative");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_y requires finite x > 0");
  const auto o = bessel_order01(x);
  RealVector out(nmax + 1);
  out(0) = o.y0;
  if (nmax >= 1) out(1) = o.y1;
  for (int k = 1; k < nmax; ++k) {
    out(k + 1) = (2.0 * k / x) * out(k) - out(k - 1);
    if (!std::isfinite(out(k + 1))) {
      throw std::out_of_range("bessel_y overflows at order " + std::to_string(k + 1));
    }
  }
  return out;
}

double bessel_j(int n, double x) {
  check_order_argument(n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n <= 1 && x <= 1e4) {
    const auto o = bessel_order01(x);
    return n == 0 ? o.j0 : o.j1;
  }
  return bessel_j_array(n, x)(n);
}

double bessel_y(int n, double x) {
  if (n <= 1) {
    if (n < 0) throw std::out_of_range("Bessel order must be nonnegative");
    if (!(x > 0.0)) throw std::domain_error("bessel_y requires x > 0");
    const auto o = bessel_order01(x);
    return n == 0 ? o.y0 : o.y1;
  }
  return bessel_y_array(n, x)(n);
}

Complex hankel1(int n, double x) { return {bessel_j(n, x), bessel_y(n, x)}; }

SpecialFunctionValue hankel1_checked(int n, double x) {
  const Complex h = hankel1(n, x);
  double tail = 0.0;
  if (x >= detail::asymptotic_threshold) {
    double p, q, t0, t1;
    hankel_pq(0, x, p, q, t0);
    hankel_pq(1, x, p, q, t1);
    tail = std::max(t0, t1) * std::sqrt(2.0 / (pi * x)) * (1.0 + n);
  }
  // Round-off grows linearly along the recurrences.
  const double est = (32.0 + 4.0 * n) * eps * std::abs(h) + tail;
  return {h, est};
}

double bessel_j_prime(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  const RealVector j = bessel_j_array(n + 1, x);
  return 0.5 * (j(n - 1) - j(n + 1));
}

double bessel_y_prime(int n, double x) {
  const RealVector y = bessel_y_array(n + 1, x);
  return n == 0 ? -y(1) : 0.5 * (y(n - 1) - y(n + 1));
}

Complex hankel1_prime(int n, double x) { return {bessel_j_prime(n, x), bessel_y_prime(n, x)}; }

}  // namespace helmnorm::specfun
