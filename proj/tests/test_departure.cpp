#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mmadv/departure.hpp"

using namespace mmadv;

TEST_CASE("constant velocity displacement") {
  PeriodicMesh1D m(4, 1.0, 3);  // |J| = 0.125
  const VelocityModel u = VelocityModel::analytic([](double) { return 0.4; });
  const DisplacementField down(Direction::Downstream, 0.05, u);
  // xi^d = xi + dt u / |J| = xi + 0.05*0.4/0.125 = xi + 0.16
  CHECK(down.displace(m, 0, 0.0) == doctest::Approx(0.16).epsilon(1e-13));
  CHECK(down.displace(m, 2, -0.5) == doctest::Approx(-0.34).epsilon(1e-13));

  const DisplacementField up(Direction::Upstream, 0.05, u);
  CHECK(up.displace(m, 0, 0.0) == doctest::Approx(-0.16).epsilon(1e-13));
}

TEST_CASE("tuning scales the displacement") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = VelocityModel::analytic([](double) { return 0.4; });
  const DisplacementField half(Direction::Downstream, 0.05, u, 0.5);
  CHECK(half.displace(m, 0, 0.0) == doctest::Approx(0.08).epsilon(1e-13));
  const DisplacementField zero(Direction::Downstream, 0.05, u, 0.0);
  CHECK(zero.displace(m, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("variable velocity is sampled at the physical point") {
  PeriodicMesh1D m(5, 1.0, 2);
  constexpr double pi = std::numbers::pi;
  auto u_fn = [](double x) { return 0.4 + 0.2 * (1.0 + std::sin(2 * pi * x)); };
  const VelocityModel u = VelocityModel::analytic(u_fn);
  const DisplacementField d(Direction::Downstream, 0.01, u);
  const int e = 3;
  const double xi = 0.25;
  const double expected = xi + 0.01 * u_fn(m.x_of(e, xi)) / m.jacobian();
  CHECK(d.displace(m, e, xi) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("large displacements are counted") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = VelocityModel::analytic([](double) { return 10.0; });
  const DisplacementField d(Direction::Downstream, 0.1, u);
  CHECK(d.warnings() == 0);
  (void)d.displace(m, 0, 0.9);  // 0.9 + 8 leaves |xi| <= 2 by a wide margin
  CHECK(d.warnings() == 1);
}
