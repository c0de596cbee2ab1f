#include "helmnorm/kernels.hpp"

#include <cmath>

#include "helmnorm/specfun.hpp"

namespace helmnorm {

namespace {

template <int Dim>
double separation(const KernelPoint<Dim>& p) {
  if (!(p.k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  const double r = (p.x - p.y).norm();
  if (r == 0.0) throw SingularityError("kernel evaluated at coincident points");
  return r;
}

// Radial factor g with grad_x Phi = g * (x - y).
template <int Dim>
Complex radial_gradient(const KernelPoint<Dim>& p, double r) {
  if constexpr (Dim == 2) {
    const auto b = specfun::bessel_order01(p.k * r);
    return -I * p.k / 4.0 * Complex(b.j1, b.y1) / r;
  } else {
    const Complex e = std::exp(I * p.k * r) / (4.0 * pi * r);
    return e * (I * p.k - 1.0 / r) / r;
  }
}

}  // namespace

template <int Dim>
Complex phi(const KernelPoint<Dim>& p) {
  const double r = separation(p);
  if constexpr (Dim == 2) {
    const auto b = specfun::bessel_order01(p.k * r);
    return I / 4.0 * Complex(b.j0, b.y0);
  } else {
    return std::exp(I * p.k * r) / (4.0 * pi * r);
  }
}

template <int Dim>
Complex dlp_kernel(const KernelPoint<Dim>& p) {
  if (!p.normal_y) throw std::invalid_argument("dlp_kernel needs normal_y");
  const double r = separation(p);
  // grad_y Phi = -grad_x Phi.
  return -radial_gradient(p, r) * (p.x - p.y).dot(*p.normal_y);
}

template <int Dim>
Complex adlp_kernel(const KernelPoint<Dim>& p) {
  if (!p.normal_x) throw std::invalid_argument("adlp_kernel needs normal_x");
  const double r = separation(p);
  return radial_gradient(p, r) * (p.x - p.y).dot(*p.normal_x);
}

template <int Dim>
Complex grad_x_phi(const KernelPoint<Dim>& p, const typename KernelPoint<Dim>::Point& v) {
  const double r = separation(p);
  return radial_gradient(p, r) * (p.x - p.y).dot(v);
}

template Complex phi<2>(const KernelPoint<2>&);
template Complex phi<3>(const KernelPoint<3>&);
template Complex dlp_kernel<2>(const KernelPoint<2>&);
template Complex dlp_kernel<3>(const KernelPoint<3>&);
template Complex adlp_kernel<2>(const KernelPoint<2>&);
template Complex adlp_kernel<3>(const KernelPoint<3>&);
template Complex grad_x_phi<2>(const KernelPoint<2>&, const KernelPoint<2>::Point&);
template Complex grad_x_phi<3>(const KernelPoint<3>&, const KernelPoint<3>::Point&);

}  // namespace helmnorm
