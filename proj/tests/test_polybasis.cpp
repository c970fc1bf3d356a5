#include <cmath>
#include <functional>
#include <random>

#include <doctest.h>

#include "mmadv/polybasis.hpp"

using mmadv::gauss_rule;
using mmadv::NodalEdgeBasis;

namespace {

// independent oracle: integrate g over [a,b] with a 16-point Gauss rule
double integrate(const std::function<double(double)>& g, double a, double b) {
  static const mmadv::QuadratureRule rule = gauss_rule(16);
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.points[q];
    acc += 0.5 * (b - a) * rule.weights[q] * g(x);
  }
  return acc;
}

}  // namespace

TEST_CASE("GLL nodes for small degrees") {
  NodalEdgeBasis b1(1);
  CHECK(b1.nodes()[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(b1.nodes()[1] == doctest::Approx(1.0).epsilon(1e-15));

  NodalEdgeBasis b2(2);
  CHECK(b2.nodes()[1] == doctest::Approx(0.0).epsilon(1e-15));

  // interior roots of P_3' = (15 xi^2 - 3)/2 are +-1/sqrt(5)
  NodalEdgeBasis b3(3);
  CHECK(b3.nodes()[1] == doctest::Approx(-0.447213595499958).epsilon(1e-13));
  CHECK(b3.nodes()[2] == doctest::Approx(0.447213595499958).epsilon(1e-13));
}

TEST_CASE("node symmetry and weight sum") {
  for (int p = 1; p <= 10; ++p) {
    NodalEdgeBasis b(p);
    for (int k = 0; k <= p; ++k)
      CHECK(b.nodes()[k] == doctest::Approx(-b.nodes()[p - k]).epsilon(1e-14));
    CHECK(b.node_weights().sum() == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("invalid degree rejected") {
  CHECK_THROWS_AS(NodalEdgeBasis(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
}

TEST_CASE("cardinality and nodal values") {
  NodalEdgeBasis b(3);
  CHECK(b.eval_nodal(1, b.nodes()[1]) == doctest::Approx(1.0));
  CHECK(b.eval_nodal(1, b.nodes()[2]) == doctest::Approx(0.0));
  CHECK_THROWS_AS(b.eval_nodal(4, 0.0), std::out_of_range);
  CHECK_THROWS_AS(b.eval_edge(3, 0.0), std::out_of_range);

  // l_0 = xi (xi - 1) / 2 on nodes {-1, 0, 1}
  NodalEdgeBasis b2(2);
  CHECK(b2.eval_nodal(0, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
}

TEST_CASE("partition of unity, including extrapolation") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int p = 1; p <= 10; ++p) {
    NodalEdgeBasis b(p);
    for (int t = 0; t < 1000; ++t) {
      const double xi = dist(rng);
      // extrapolated cardinal values grow quickly with p, so the unity sum
      // carries an amplified rounding error
      CHECK(std::abs(b.eval_all_nodal(xi).sum() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("derivative matches finite differences") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-0.99, 0.99);
  for (int p : {2, 4, 6}) {
    NodalEdgeBasis b(p);
    for (int t = 0; t < 50; ++t) {
      const double xi = dist(rng);
      for (int i = 0; i <= p; ++i) {
        const double h = 1e-6;
        const double fd = (b.eval_nodal(i, xi + h) - b.eval_nodal(i, xi - h)) / (2 * h);
        const double d = b.eval_nodal_deriv(i, xi);
        CHECK(d == doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("p=1 edge function is constant 1/2") {
  NodalEdgeBasis b(1);
  CHECK(b.eval_edge(0, 0.3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b.eval_edge(0, -0.8) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("edge integral duality") {
  for (int p = 1; p <= 6; ++p) {
    NodalEdgeBasis b(p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        const double val = integrate([&](double x) { return b.eval_edge(i, x); },
                                     b.nodes()[j], b.nodes()[j + 1]);
        CHECK(val == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
      // telescoping: each e_i integrates to 1 over [-1,1]
      const double total = integrate(
          [&](double x) { return b.eval_edge(i, x); }, -1.0, 1.0);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("discrete fundamental theorem") {
  // d/dxi sum_i a_i l_i = sum_j (a_{j+1} - a_j) e_j holds pointwise
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> pt(-1.0, 1.0);
  for (int p = 1; p <= 6; ++p) {
    NodalEdgeBasis b(p);
    Eigen::VectorXd a(p + 1);
    for (int i = 0; i <= p; ++i) a[i] = coef(rng);
    for (int t = 0; t < 100; ++t) {
      const double xi = pt(rng);
      double lhs = 0.0, rhs = 0.0;
      for (int i = 0; i <= p; ++i) lhs += a[i] * b.eval_nodal_deriv(i, xi);
      for (int j = 0; j < p; ++j) rhs += (a[j + 1] - a[j]) * b.eval_edge(j, xi);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("gauss rule basics") {
  const auto r1 = gauss_rule(1);
  CHECK(r1.points[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto r2 = gauss_rule(2);
  CHECK(r2.points[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.points[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  // int xi^4 over [-1,1] = 2/5, exact for q=3
  const auto r3 = gauss_rule(3);
  double acc = 0.0;
  for (int q = 0; q < 3; ++q)
    acc += r3.weights[q] * std::pow(r3.points[q], 4);
  CHECK(acc == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("gauss rule exactness degree") {
  for (int q = 2; q <= 10; ++q) {
    const auto r = gauss_rule(q);
    for (int deg = 0; deg <= 2 * q - 1; ++deg) {
      double acc = 0.0;
      for (int i = 0; i < q; ++i)
        acc += r.weights[i] * std::pow(r.points[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}
