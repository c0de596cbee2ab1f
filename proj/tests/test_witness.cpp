#include <doctest.h>

#include <cmath>
#include <vector>

#include "helmnorm/witness.hpp"

using namespace helmnorm;

namespace {

const std::vector<double> sweep_k{16.0, 32.0, 64.0, 128.0};

double spread(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
}

}  // namespace

TEST_CASE("cutoff has a plateau, compact support and a symmetric transition") {
  for (double t : {-1.0, -0.3, 0.0, 0.99, 1.0}) CHECK(cutoff(t) == 1.0);
  for (double t : {-2.0, 2.0, 2.5, -7.0}) CHECK(cutoff(t) == 0.0);
  CHECK(cutoff(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff(1.2) + cutoff(1.8) == doctest::Approx(1.0).epsilon(1e-14));
  double previous = 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = cutoff(1.0 + i / 100.0);
    CHECK(v <= previous);
    previous = v;
  }
}

TEST_CASE("flat witness geometry") {
  const BoundaryGeometry sq = make_square(1.0);
  const Witness w = flat_witness(sq, 32.0);
  CHECK(w.piece == 0);
  CHECK(w.epsilon == doctest::Approx(0.05));
  CHECK(w.bigM == 8.0);
  CHECK(w.gamma1 == 0.0);
  CHECK(w.gamma2 == 0.5);
  CHECK(w.density(2.0 * w.epsilon * 1.001) == 0.0);
  CHECK(w.density(-2.0 * w.epsilon * 1.001) == 0.0);
  CHECK(std::abs(w.density(0.3 * w.epsilon)) == doctest::Approx(1.0));
  CHECK_FALSE(w.support.intersects(w.u_patch));
  const Witness near = flat_witness(sq, 32.0, 0.05, 2.5);
  CHECK_FALSE(near.support.intersects(near.u_patch));
}

TEST_CASE("flat witness norm is independent of k") {
  const BoundaryGeometry sq = make_square(1.0);
  std::vector<double> norms;
  for (double k : sweep_k) norms.push_back(witness_ratios(flat_witness(sq, k), sq).u_norm);
  CHECK(spread(norms) <= 1.02);
}

TEST_CASE("flat witness compensated ratios stay bounded away from zero") {
  const BoundaryGeometry sq = make_square(1.0);
  std::vector<double> l2, h1;
  for (double k : sweep_k) {
    const WitnessRatios r = witness_ratios(flat_witness(sq, k), sq);
    l2.push_back(std::sqrt(k) * r.r_L2);
    h1.push_back(r.r_H1 / std::sqrt(k));
  }
  CHECK(1.0 / spread(l2) >= 0.5);
  CHECK(1.0 / spread(h1) >= 0.5);
  CHECK(*std::min_element(l2.begin(), l2.end()) > 0.0);
}

TEST_CASE("curved witness compensated ratio on the circle") {
  const BoundaryGeometry c = make_circle(1.0);
  std::vector<double> l2;
  for (double k : sweep_k) l2.push_back(std::pow(k, 2.0 / 3.0) * witness_ratios(curved_witness(c, k), c).r_L2);
  CHECK(1.0 / spread(l2) >= 0.5);
}

TEST_CASE("witness ratio decreases with M on the flat edge") {
  const BoundaryGeometry sq = make_square(1.0);
  const double k = 64.0;
  double previous = std::numeric_limits<double>::infinity();
  for (double m : {4.0, 8.0, 16.0}) {
    // 16 * 2 * 0.02 + 3 * 0.02 fits on the unit edge.
    const double r = witness_ratios(flat_witness(sq, k, 0.02, m), sq).r_L2;
    CHECK(r <= previous);
    previous = r;
  }
}

TEST_CASE("witness ratios are invariant under rigid motions") {
  const BoundaryGeometry sq = make_square(1.0);
  const BoundaryGeometry moved = transformed(sq, 0.8, Vec2(3.0, -1.0));
  const WitnessRatios a = witness_ratios(flat_witness(sq, 40.0), sq);
  const WitnessRatios b = witness_ratios(flat_witness(moved, 40.0), moved);
  CHECK(std::abs(a.r_L2 - b.r_L2) <= 1e-8 * a.r_L2);
  CHECK(std::abs(a.r_H1 - b.r_H1) <= 1e-8 * a.r_H1);

  const BoundaryGeometry c = make_circle(1.0);
  const BoundaryGeometry cm = transformed(c, -2.0, Vec2(0.5, 0.5));
  const WitnessRatios p = witness_ratios(curved_witness(c, 40.0), c);
  const WitnessRatios q = witness_ratios(curved_witness(cm, 40.0), cm);
  CHECK(std::abs(p.r_L2 - q.r_L2) <= 1e-8 * p.r_L2);
  CHECK(std::abs(p.r_H1 - q.r_H1) <= 1e-8 * p.r_H1);
}

TEST_CASE("witness quadrature is converged") {
  const BoundaryGeometry c = make_circle(1.0);
  const Witness w = curved_witness(c, 64.0);
  const WitnessRatios a = witness_ratios(w, c);
  const WitnessRatios b = witness_ratios(w, c, 2 * std::max(a.source_nodes, a.target_nodes));
  CHECK(std::abs(a.r_L2 - b.r_L2) <= 1e-10 * a.r_L2);
  CHECK(std::abs(a.r_H1 - b.r_H1) <= 1e-10 * a.r_H1);
}

TEST_CASE("witness refusals") {
  const BoundaryGeometry sq = make_square(1.0);
  const BoundaryGeometry c = make_circle(1.0);
  CHECK_THROWS_AS(flat_witness(sq, 32.0, 0.2), std::domain_error);
  CHECK_THROWS_AS(flat_witness(c, 32.0), std::domain_error);
  CHECK_THROWS_AS(curved_witness(sq, 32.0), std::domain_error);
  CHECK_THROWS_AS(curved_witness(c, 32.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(flat_witness(sq, 32.0, 0.05, 1.0), std::domain_error);
  CHECK_THROWS_AS(witness_ratios(flat_witness(sq, 128.0), sq, 16), UnderResolved);
}
