#include "helmnorm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helmnorm/quadrature.hpp"
#include "helmnorm/specfun.hpp"
#include "parallel.hpp"

namespace helmnorm {

namespace {

constexpr double inv4pi = 1.0 / (4.0 * pi);

double grade(double u, double q) {
  const double a = std::pow(u, q);
  const double b = std::pow(1.0 - u, q);
  return a / (a + b);
}

std::string make_id(const BoundaryGeometry& g, Scheme scheme, Eigen::Index n, double k) {
  std::ostringstream os;
  os.precision(17);
  os << g.name << '/' << (scheme == Scheme::kress ? "kress" : "panel") << "/N=" << n << "/k=" << k;
  return os.str();
}

void check_resolution(const BoundaryGeometry& g, double k, int N) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  const double ppw = 2.0 * pi * N / (k * g.length());
  if (ppw < 4.0) {
    std::ostringstream os;
    os << "N = " << N << " gives " << ppw << " points per wavelength at k = " << k << " (minimum 4)";
    throw UnderResolved(os.str());
  }
}

Discretization discretize_kress(const BoundaryGeometry& g, double k, int N) {
  const BoundaryPiece& piece = g.pieces.front();
  Discretization d;
  d.k = k;
  d.scheme = Scheme::kress;
  d.weights.resize(N);
  RealVector inv_dtheta(N);
  double smin = 1e300, smax = 0.0, kmin = 1e300, kmax = -1e300;
  for (int j = 0; j < N; ++j) {
    const double t = static_cast<double>(j) / N;
    const double s = piece.speed(t);
    const double kappa = piece.curvature(t);
    d.nodes.push_back({0, t, piece.point(t), piece.normal(t), s / N, s, kappa});
    d.weights(j) = s / N;
    inv_dtheta(j) = 2.0 * pi / s;
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    kmin = std::min(kmin, kappa);
    kmax = std::max(kmax, kappa);
  }
  d.diff = inv_dtheta.asDiagonal() * periodic_diff_matrix(N);
  if (kmin > 0.0 && smax - smin <= 1e-12 * smax && kmax - kmin <= 1e-12 * kmax) {
    d.equispaced_circle = true;
    d.circle_radius = 1.0 / kmax;
  }
  d.id = make_id(g, d.scheme, N, k);
  return d;
}

Discretization discretize_panels(const BoundaryGeometry& g, double k, int N, const AssemblyOptions& opts) {
  const int q = opts.panel_order;
  const int pieces = static_cast<int>(g.pieces.size());
  const int per_piece = 2 * ((N + pieces - 1) / pieces);
  const int m = std::max(2, (per_piece + q - 1) / q);
  const GaussRule rule = gauss_legendre(q);
  const RealMatrix dref = differentiation_matrix(rule.nodes, barycentric_weights(rule.nodes));

  Discretization d;
  d.k = k;
  d.scheme = Scheme::panel;
  d.order = q;
  const int total = pieces * m * q;
  d.weights.resize(total);
  d.diff = RealMatrix::Zero(total, total);
  int idx = 0;
  for (int p = 0; p < pieces; ++p) {
    const BoundaryPiece& piece = g.pieces[p];
    for (int b = 0; b < m; ++b) {
      const double t0 = grade(static_cast<double>(b) / m, opts.grading);
      const double t1 = grade(static_cast<double>(b + 1) / m, opts.grading);
      const double half = 0.5 * (t1 - t0);
      d.panels.push_back({p, t0, t1, idx});
      for (int j = 0; j < q; ++j) {
        const double t = t0 + half * (1.0 + rule.nodes(j));
        const double s = piece.speed(t);
        d.nodes.push_back({p, t, piece.point(t), piece.normal(t), half * rule.weights(j) * s, s, piece.curvature(t)});
        d.weights(idx + j) = half * rule.weights(j) * s;
        d.diff.block(idx + j, idx, 1, q) = dref.row(j) / (half * s);
      }
      idx += q;
    }
  }
  d.id = make_id(g, d.scheme, total, k);
  return d;
}

void assemble_kress(const Discretization& d, OperatorKind kind, ComplexMatrix& a, int threads) {
  const int N = static_cast<int>(d.size());
  const double k = d.k;
  const double h = 2.0 * pi / N;
  const RealVector r = kress_log_weights(N);
  RealVector logs(N);
  for (int m = 1; m < N; ++m) {
    const double s = std::sin(pi * m / N);
    logs(m) = std::log(4.0 * s * s);
  }
  parallel_for(N, threads, [&](long i) {
    const QuadratureNode& xi = d.nodes[i];
    const double spi = xi.jacobian / (2.0 * pi);
    for (int j = 0; j < N; ++j) {
      const QuadratureNode& yj = d.nodes[j];
      const double spj = yj.jacobian / (2.0 * pi);
      if (i == j) {
        if (kind == OperatorKind::S) {
          const Complex m2 = (I / 4.0 - euler_gamma / (2.0 * pi) - std::log(k * spi / 2.0) / (2.0 * pi)) * spi;
          a(i, i) = r(0) * (-spi * inv4pi) + h * m2;
        } else {
          a(i, i) = h * (-xi.curvature * spi * inv4pi);
        }
        continue;
      }
      const Vec2 diff = xi.point - yj.point;
      const double dist = diff.norm();
      const auto b = specfun::bessel_order01(k * dist);
      const int off = (static_cast<int>(i) - j + N) % N;
      const double lg = logs(off);
      if (kind == OperatorKind::S) {
        const double m1 = -b.j0 * spj * inv4pi;
        const Complex full = I / 4.0 * Complex(b.j0, b.y0) * spj;
        a(i, j) = r(off) * m1 + h * (full - m1 * lg);
      } else {
        const double proj = (kind == OperatorKind::D) ? diff.dot(yj.normal) : -diff.dot(xi.normal);
        const double l1 = -k * inv4pi * b.j1 / dist * proj * spj;
        const Complex full = I * k / 4.0 * Complex(b.j1, b.y1) / dist * proj * spj;
        a(i, j) = r(off) * l1 + h * (full - l1 * lg);
      }
    }
  });
}

// Single-layer matrix on graded Gauss panels. Entries for sources on panels
// close to the target are moment integrals of the Lagrange basis against the
// kernel, computed with dyadic refinement toward the closest point.
void assemble_panel_s(const BoundaryGeometry& g, const Discretization& d, ComplexMatrix& a, int threads) {
  const int q = d.order;
  const double k = d.k;
  const GaussRule rule = gauss_legendre(q);
  const RealVector bary = barycentric_weights(rule.nodes);
  const double scale = g.length();

  struct PanelInfo {
    double length;
    Vec2 lo, hi;  // bounding box
  };
  std::vector<PanelInfo> info;
  for (const Panel& p : d.panels) {
    PanelInfo entry;
    entry.length = d.weights.segment(p.first, q).sum();
    entry.lo = entry.hi = g.pieces[p.piece].point(p.t0);
    for (int s = 1; s <= 32; ++s) {
      const Vec2 y = g.pieces[p.piece].point(p.t0 + (p.t1 - p.t0) * s / 32.0);
      entry.lo = entry.lo.cwiseMin(y);
      entry.hi = entry.hi.cwiseMax(y);
    }
    info.push_back(entry);
  }

  auto phi = [k](const Vec2& x, const Vec2& y) {
    const auto b = specfun::bessel_order01(k * (x - y).norm());
    return I / 4.0 * Complex(b.j0, b.y0);
  };

  parallel_for(static_cast<long>(d.size()), threads, [&](long i) {
    const Vec2 x = d.nodes[i].point;
    ComplexVector row(q);
    for (std::size_t pidx = 0; pidx < d.panels.size(); ++pidx) {
      const Panel& p = d.panels[pidx];
      const BoundaryPiece& piece = g.pieces[p.piece];
      const double half = 0.5 * (p.t1 - p.t0);
      const double box_dist = (x.cwiseMax(info[pidx].lo).cwiseMin(info[pidx].hi) - x).norm();
      const bool self = i >= p.first && i < p.first + q;
      if (!self && box_dist > info[pidx].length) {
        for (int j = 0; j < q; ++j) {
          a(i, p.first + j) = phi(x, d.nodes[p.first + j].point) * d.weights(p.first + j);
        }
        continue;
      }
      auto param = [&](double xi) { return p.t0 + half * (1.0 + xi); };
      // Closest point of the panel to x in the reference variable.
      double xs;
      if (self) {
        xs = rule.nodes(i - p.first);
      } else {
        xs = -1.0;
        double best = 1e300;
        for (int s = 0; s <= 64; ++s) {
          const double xi = -1.0 + s / 32.0;
          const double dist = (piece.point(param(xi)) - x).squaredNorm();
          if (dist < best) { best = dist; xs = xi; }
        }
        for (int it = 0; it < 20; ++it) {
          const double t = param(xs);
          const Vec2 r = piece.point(t) - x;
          const Vec2 d1 = piece.d1(t) * half;
          const Vec2 d2 = piece.d2(t) * half * half;
          const double f = r.dot(d1);
          const double fp = d1.squaredNorm() + r.dot(d2);
          if (fp <= 0.0) break;
          const double next = std::clamp(xs - f / fp, -1.0, 1.0);
          if (std::abs(next - xs) < 1e-15) { xs = next; break; }
          xs = next;
        }
      }
      const double delta = self ? 0.0 : (piece.point(param(xs)) - x).norm();
      const double stop = std::max(0.25 * delta, 1e-12 * scale);
      row.setZero();
      auto integrate = [&](double lo, double hi) {
        const double hh = 0.5 * (hi - lo);
        for (int n = 0; n < q; ++n) {
          const double xi = lo + hh * (1.0 + rule.nodes(n));
          const double t = param(xi);
          const Complex f = phi(x, piece.point(t)) * (piece.speed(t) * half * hh * rule.weights(n));
          row += f * lagrange_basis(rule.nodes, bary, xi).cast<Complex>();
        }
      };
      for (int side = -1; side <= 1; side += 2) {
        const double span = side < 0 ? xs + 1.0 : 1.0 - xs;
        if (span <= 0.0) continue;
        double len = span;
        // Refine while the interval adjacent to xs is long compared with the distance to x.
        while (len * half * piece.speed(param(xs)) > stop && len > 1e-15) {
          const double a0 = xs + side * 0.5 * len;
          const double a1 = xs + side * len;
          integrate(std::min(a0, a1), std::max(a0, a1));
          len *= 0.5;
        }
        const double e = xs + side * len;
        integrate(std::min(xs, e), std::max(xs, e));
      }
      a.row(i).segment(p.first, q) = row.transpose();
    }
  });
}

}  // namespace

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::S: return "S";
    case OperatorKind::D: return "D";
    case OperatorKind::Dprime: return "Dprime";
    case OperatorKind::A_direct: return "A_direct";
    case OperatorKind::A_indirect: return "A_indirect";
    case OperatorKind::custom: return "custom";
  }
  return "custom";
}

OperatorKind parse_operator_kind(const std::string& text) {
  if (text == "S") return OperatorKind::S;
  if (text == "D") return OperatorKind::D;
  if (text == "Dprime" || text == "D'") return OperatorKind::Dprime;
  if (text == "A_direct" || text == "Adirect") return OperatorKind::A_direct;
  if (text == "A_indirect" || text == "Aindirect") return OperatorKind::A_indirect;
  if (text == "custom") return OperatorKind::custom;
  throw std::invalid_argument("unknown operator kind '" + text + "'");
}

std::uint32_t kind_code(OperatorKind kind) { return static_cast<std::uint32_t>(kind); }

OperatorKind kind_from_code(std::uint32_t code) {
  if (code > kind_code(OperatorKind::custom)) throw std::invalid_argument("unknown operator kind code");
  return static_cast<OperatorKind>(code);
}

int required_nodes(const BoundaryGeometry& g, double k, const AssemblyOptions& opts) {
  if (!(k > 0.0)) throw std::domain_error("wavenumber k must be positive");
  const double exact = opts.ppw * k * g.length() / (2.0 * pi);
  // Round-off in the length must not push an exact count up by one.
  const int n = std::max(opts.min_nodes, static_cast<int>(std::ceil(exact * (1.0 - 1e-12))));
  return n + (n % 2);
}

Discretization discretize(const BoundaryGeometry& g, double k, int N, const AssemblyOptions& opts) {
  if (N <= 0) N = required_nodes(g, k, opts);
  check_resolution(g, k, N);
  if (g.is_smooth()) return discretize_kress(g, k, N + (N % 2));
  return discretize_panels(g, k, N, opts);
}

DenseOperator assemble_operator(const BoundaryGeometry& g, const Discretization& d, OperatorKind kind, int threads) {
  if (kind != OperatorKind::S && kind != OperatorKind::D && kind != OperatorKind::Dprime) {
    throw std::invalid_argument("assemble_operator builds S, D or Dprime; use assemble_combined for " +
                                to_string(kind));
  }
  if (kind != OperatorKind::S && !g.is_smooth()) {
    throw UnsupportedRegularity("D and D' map L2 into H1 only on C^{2,alpha} boundaries; geometry '" + g.name +
                                "' has corners");
  }
  DenseOperator op;
  op.kind = kind;
  op.k = d.k;
  op.discretization_id = d.id;
  op.matrix.resize(d.size(), d.size());
  if (d.scheme == Scheme::kress) {
    assemble_kress(d, kind, op.matrix, threads);
  } else {
    assemble_panel_s(g, d, op.matrix, threads);
  }
  return op;
}

std::pair<Discretization, DenseOperator> assemble(const BoundaryGeometry& g, double k, int N, OperatorKind kind,
                                                  const AssemblyOptions& opts) {
  Discretization d = discretize(g, k, N, opts);
  DenseOperator op = assemble_operator(g, d, kind, opts.threads);
  return {std::move(d), std::move(op)};
}

DenseOperator combine(const DenseOperator& s, const DenseOperator& dlike, double eta, bool direct) {
  if (eta == 0.0) throw std::domain_error("coupling parameter eta must be nonzero");
  if (s.matrix.rows() != dlike.matrix.rows() || s.matrix.cols() != dlike.matrix.cols()) {
    throw std::invalid_argument("combine: operator sizes differ");
  }
  DenseOperator out;
  out.kind = direct ? OperatorKind::A_direct : OperatorKind::A_indirect;
  out.k = s.k;
  out.eta = eta;
  out.discretization_id = s.discretization_id;
  out.matrix = dlike.matrix - I * eta * s.matrix;
  out.matrix.diagonal().array() += 0.5;
  return out;
}

DenseOperator assemble_combined(const BoundaryGeometry& g, const Discretization& d, double eta, bool direct,
                                int threads) {
  if (eta == 0.0) throw std::domain_error("coupling parameter eta must be nonzero");
  const DenseOperator s = assemble_operator(g, d, OperatorKind::S, threads);
  const DenseOperator dl = assemble_operator(g, d, direct ? OperatorKind::Dprime : OperatorKind::D, threads);
  return combine(s, dl, eta, direct);
}

DenseOperator assemble_combined(const BoundaryGeometry& g, double k, int N, double eta, bool direct,
                                const AssemblyOptions& opts) {
  if (eta == 0.0) throw std::domain_error("coupling parameter eta must be nonzero");
  const Discretization d = discretize(g, k, N, opts);
  return assemble_combined(g, d, eta, direct, opts.threads);
}

ComplexMatrix weight_symmetrized(const DenseOperator& a, const Discretization& d) {
  const RealVector s = d.weights.cwiseSqrt();
  return s.asDiagonal() * a.matrix * s.cwiseInverse().asDiagonal();
}

}  // namespace helmnorm
