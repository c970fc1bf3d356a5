#include <cmath>
#include <numbers>

#include <doctest.h>

#include "mmadv/operators.hpp"

using namespace mmadv;

namespace {
constexpr double pi = std::numbers::pi;

VelocityModel const_u(double v) {
  return VelocityModel::analytic([v](double) { return v; });
}
}  // namespace

TEST_CASE("operator kind string round trip") {
  for (OperatorKind k : {OperatorKind::A, OperatorKind::B, OperatorKind::A_PG,
                         OperatorKind::B_PG, OperatorKind::S, OperatorKind::S_PG})
    CHECK(operator_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(operator_kind_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("adjoint identities") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  const Eigen::MatrixXd A = build_A(m, u).matrix;
  const Eigen::MatrixXd B = build_B(m, u).matrix;
  CHECK((B + A.transpose()).cwiseAbs().maxCoeff() < 1e-11);

  const Eigen::MatrixXd S = build_S(m, u).matrix;
  CHECK((S - 0.5 * (A - A.transpose())).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((S + S.transpose()).cwiseAbs().maxCoeff() < 1e-13);

  const double dt = 0.02;
  const Eigen::MatrixXd SPG = build_S_PG(m, u, dt).matrix;
  CHECK((SPG + SPG.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Petrov-Galerkin operators reduce to Galerkin at dt = 0") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  CHECK((build_A_PG(m, u, 0.0).matrix - build_A(m, u).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-11);
  CHECK((build_B_PG(m, u, 0.0).matrix - build_B(m, u).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-11);
  CHECK((build_S_PG(m, u, 0.0).matrix - build_S(m, u).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-11);
}

TEST_CASE("B_PG is the negative adjoint of the reversed-shift A_PG") {
  PeriodicMesh1D m(5, 1.0, 3);
  const VelocityModel u = const_u(0.3);
  const double dt = 0.03;
  const Eigen::MatrixXd BPG = build_B_PG(m, u, dt).matrix;
  // tuning -1 reverses the displacement, realizing A_PG(-dt)
  const Eigen::MatrixXd APG_rev = build_A_PG(m, u, dt, -1, -1.0).matrix;
  CHECK((BPG + APG_rev.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("flux-form tendency conserves total mass") {
  PeriodicMesh1D m(6, 1.0, 4);
  auto u_fn = [](double x) { return 0.4 + 0.2 * (1.0 + std::sin(2 * pi * x)); };
  const VelocityModel u = VelocityModel::analytic(u_fn);
  const Field q =
      project_to_Q(m, [](double x) { return 0.5 * (1 - std::cos(2 * pi * x)); });
  // flux forms telescope for any velocity
  for (OperatorKind k : {OperatorKind::A, OperatorKind::A_PG}) {
    const AdvectionOperator op = build_operator(k, m, u, 0.01);
    const Field dq = apply_tendency(m, op, q);
    CHECK(dq.coeffs.sum() == doctest::Approx(0.0).epsilon(1e-10));
  }
  // skew variants conserve mass for constant velocity
  const VelocityModel uc = VelocityModel::analytic([](double) { return 0.4; });
  for (OperatorKind k : {OperatorKind::S, OperatorKind::S_PG}) {
    const AdvectionOperator op = build_operator(k, m, uc, 0.01);
    const Field dq = apply_tendency(m, op, q);
    CHECK(dq.coeffs.sum() == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("skew operators conserve energy rate exactly") {
  PeriodicMesh1D m(6, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  const Field q =
      project_to_Q(m, [](double x) { return std::sin(2 * pi * x); });
  for (OperatorKind k : {OperatorKind::S, OperatorKind::S_PG}) {
    const AdvectionOperator op = build_operator(k, m, u, 0.02);
    // dE/dt = -2 q^T K q = 0 for skew K
    CHECK(q.coeffs.dot(op.matrix * q.coeffs) ==
          doctest::Approx(0.0).epsilon(1e-11));
  }
}

TEST_CASE("flux solve reproduces u q for constants") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = const_u(0.7);
  const Field q = project_to_Q(m, [](double) { return 2.0; });
  const Field F = solve_flux(m, u, q);
  REQUIRE(F.space == Space::U);
  for (int g = 0; g < F.coeffs.size(); ++g)
    CHECK(F.coeffs[g] == doctest::Approx(1.4).epsilon(1e-11));
}

TEST_CASE("flux solve is high-order accurate for smooth data") {
  PeriodicMesh1D m(16, 1.0, 4);
  auto u_fn = [](double x) { return 0.4 + 0.2 * (1.0 + std::sin(2 * pi * x)); };
  auto q_fn = [](double x) { return 0.5 * (1.0 - std::cos(2 * pi * x)); };
  const VelocityModel u = VelocityModel::analytic(u_fn);
  const Field q = project_to_Q(m, q_fn);
  const Field F = solve_flux(m, u, q);
  const double err =
      l2_error(F, [&](double x) { return u_fn(x) * q_fn(x); });
  CHECK(err < 5e-6);
}

TEST_CASE("gradient of a constant vanishes") {
  PeriodicMesh1D m(5, 1.0, 3);
  const Field q = project_to_Q(m, [](double) { return 3.0; });
  const Field G = solve_grad(m, q);
  CHECK(G.coeffs.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("material tendency approximates -u dq/dx") {
  PeriodicMesh1D m(24, 1.0, 4);
  const double uval = 0.4;
  const VelocityModel u = const_u(uval);
  auto q_fn = [](double x) { return std::sin(2 * pi * x); };
  const Field q = project_to_Q(m, q_fn);
  const AdvectionOperator B = build_B(m, u);
  const Field dq = apply_tendency(m, B, q);
  const double err = l2_error(
      dq, [&](double x) { return -uval * 2 * pi * std::cos(2 * pi * x); });
  CHECK(err < 1e-5);
}

TEST_CASE("dispatcher records dt for PG kinds only") {
  PeriodicMesh1D m(4, 1.0, 2);
  const VelocityModel u = const_u(0.4);
  CHECK(build_operator(OperatorKind::A, m, u, 0.5).dt_used == 0.0);
  CHECK(build_operator(OperatorKind::A_PG, m, u, 0.02).dt_used ==
        doctest::Approx(0.02));
}
