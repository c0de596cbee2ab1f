#include "helmnorm/norms.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace helmnorm {

namespace {

Space parse_space(const std::string& text) {
  if (text == "L2") return Space::l2();
  if (text == "H1") return Space::h1();
  if (text == "H1k") return Space::h1k();
  if (text.rfind("Hs(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(3, text.size() - 4);
    std::size_t used = 0;
    double s = 0.0;
    try {
      s = std::stod(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == inner.size() && used > 0) return Space::hs(s);
  }
  throw std::invalid_argument("unknown space '" + text + "'");
}

void require_circle(const Discretization& d) {
  if (!d.equispaced_circle) {
    throw std::invalid_argument("Hs_circle norms need a circle sampled at equispaced nodes");
  }
}

RealMatrix fourier_gram(double s, const Discretization& d) {
  require_circle(d);
  const Eigen::Index n = d.size();
  const Eigen::Index half = n / 2;
  const double radius = d.circle_radius;
  auto lambda = [&](Eigen::Index m) {
    const double f = static_cast<double>(m) / radius;
    return std::pow(1.0 + f * f, s);
  };
  // The Gram matrix is circulant: G(j, l) = c(j - l).
  RealVector c(n);
  for (Eigen::Index off = 0; off < n; ++off) {
    const double th = 2.0 * pi * off / n;
    double acc = lambda(0) + lambda(half) * ((off % 2 == 0) ? 1.0 : -1.0);
    for (Eigen::Index m = 1; m < half; ++m) acc += 2.0 * lambda(m) * std::cos(m * th);
    c(off) = 2.0 * pi * radius * acc / (static_cast<double>(n) * n);
  }
  RealMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) g(j, l) = c((j - l + n) % n);
  }
  return g;
}

RealMatrix lower_factor(const RealMatrix& gram) {
  Eigen::LLT<RealMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw std::runtime_error("Gram matrix is not positive definite");
  return llt.matrixL();
}

}  // namespace

std::string to_string(const Space& s) {
  switch (s.type) {
    case Space::Type::L2: return "L2";
    case Space::Type::H1: return "H1";
    case Space::Type::H1k: return "H1k";
    case Space::Type::Hs_circle: {
      std::ostringstream os;
      os << "Hs(" << s.s << ")";
      return os.str();
    }
  }
  return "L2";
}

std::string NormSpec::str() const { return to_string(source) + "->" + to_string(target); }

NormSpec NormSpec::parse(const std::string& text) {
  const auto arrow = text.find("->");
  if (arrow == std::string::npos) throw std::invalid_argument("norm spec needs 'source->target': " + text);
  NormSpec spec{parse_space(text.substr(0, arrow)), parse_space(text.substr(arrow + 2))};
  if (spec.source.type == Space::Type::H1 || spec.source.type == Space::Type::H1k) {
    throw std::invalid_argument("source space must be L2 or Hs(s)");
  }
  return spec;
}

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::dense_svd: return "dense_svd";
    case NormMethod::power_iteration: return "power_iteration";
    case NormMethod::fourier_oracle: return "fourier_oracle";
  }
  return "dense_svd";
}

RealMatrix gram_matrix(const Space& space, const Discretization& d) {
  const RealMatrix m = d.weights.asDiagonal();
  switch (space.type) {
    case Space::Type::L2: return m;
    case Space::Type::H1: return m + d.diff.transpose() * d.weights.asDiagonal() * d.diff;
    case Space::Type::H1k:
      return m + (d.diff.transpose() * d.weights.asDiagonal() * d.diff) / (d.k * d.k);
    case Space::Type::Hs_circle: return fourier_gram(space.s, d);
  }
  return m;
}

PowerResult power_sigma_max(const ComplexMatrix& b, const NormOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  ComplexVector v(b.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  v.normalize();
  PowerResult out;
  double previous = 0.0;
  int stable = 0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const ComplexVector w = b * v;
    const double lambda = w.squaredNorm();
    ComplexVector z = b.adjoint() * w;
    const double zn = z.norm();
    out.iterations = it;
    if (zn == 0.0) {
      out.sigma = 0.0;
      out.converged = true;
      return out;
    }
    v = z / zn;
    out.residual = std::abs(lambda - previous) / lambda;
    out.sigma = std::sqrt(lambda);
    stable = (out.residual <= opts.tolerance) ? stable + 1 : 0;
    previous = lambda;
    if (stable >= opts.stable_iterations) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

NormReport operator_norm(const DenseOperator& a, const Discretization& d, const NormSpec& spec,
                         const NormOptions& opts) {
  const Eigen::Index n = d.size();
  if (a.matrix.rows() != n || a.matrix.cols() != n) {
    throw std::invalid_argument("operator size does not match the discretization");
  }
  if (!a.discretization_id.empty() && a.discretization_id != d.id) {
    throw std::invalid_argument("operator was assembled on a different discretization");
  }
  if (spec.source.type == Space::Type::H1 || spec.source.type == Space::Type::H1k) {
    throw std::invalid_argument("source space must be L2 or Hs(s)");
  }
  if ((spec.target.type == Space::Type::H1 || spec.target.type == Space::Type::H1k) && d.diff.rows() != n) {
    throw std::invalid_argument("H1 targets need the discretization's differentiation matrix");
  }

  const RealVector sqrtw = d.weights.cwiseSqrt();
  ComplexMatrix b;
  if (spec.source.type == Space::Type::L2) {
    b = a.matrix * sqrtw.cwiseInverse().asDiagonal();
  } else {
    const ComplexMatrix ls = lower_factor(gram_matrix(spec.source, d)).cast<Complex>();
    b = ls.triangularView<Eigen::Lower>().solve(a.matrix.transpose()).transpose();
  }
  if (spec.target.type == Space::Type::L2) {
    b = sqrtw.asDiagonal() * b;
  } else {
    // Real factor applied to real and imaginary parts separately.
    const RealMatrix ltt = lower_factor(gram_matrix(spec.target, d)).transpose();
    const RealMatrix re = ltt.triangularView<Eigen::Upper>() * b.real();
    const RealMatrix im = ltt.triangularView<Eigen::Upper>() * b.imag();
    b.real() = re;
    b.imag() = im;
  }

  NormReport r;
  r.kind = a.kind;
  r.k = a.k;
  r.N = n;
  r.spec = spec;
  if (n <= opts.dense_limit && !opts.force_power_iteration) {
    r.norm_value = spectral_norm(b);
    r.method = NormMethod::dense_svd;
    r.converged = true;
  } else {
    const PowerResult p = power_sigma_max(b, opts);
    r.norm_value = p.sigma;
    r.method = NormMethod::power_iteration;
    r.converged = p.converged;
    r.iterations = p.iterations;
    r.residual = p.residual;
  }
  return r;
}

double l2_norm(const ComplexVector& v, const Discretization& d) {
  if (v.size() != d.size()) throw std::invalid_argument("vector size does not match the discretization");
  return std::sqrt((d.weights.array() * v.array().abs2()).sum());
}

double h1_norm(const ComplexVector& v, const Discretization& d) {
  if (v.size() != d.size()) throw std::invalid_argument("vector size does not match the discretization");
  const ComplexVector g = d.diff.cast<Complex>() * v;
  return std::sqrt((d.weights.array() * (v.array().abs2() + g.array().abs2())).sum());
}

double h1k_norm(const ComplexVector& v, const Discretization& d) {
  if (v.size() != d.size()) throw std::invalid_argument("vector size does not match the discretization");
  const ComplexVector g = d.diff.cast<Complex>() * v;
  return std::sqrt((d.weights.array() * (v.array().abs2() + g.array().abs2() / (d.k * d.k))).sum());
}

}  // namespace helmnorm
