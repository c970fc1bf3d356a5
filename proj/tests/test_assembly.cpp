#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "mmadv/assembly.hpp"

using namespace mmadv;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("incidence matrix structure") {
  PeriodicMesh1D m(3, 1.0, 2);
  const Eigen::MatrixXd E = incidence(m);
  REQUIRE(E.rows() == 6);
  REQUIRE(E.cols() == 6);
  for (int r = 0; r < 6; ++r) {
    int plus = 0, minus = 0, zero = 0;
    for (int c = 0; c < 6; ++c) {
      if (E(r, c) == 1.0) ++plus;
      else if (E(r, c) == -1.0) ++minus;
      else if (E(r, c) == 0.0) ++zero;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
    CHECK(zero == 4);
    CHECK(E.row(r).sum() == 0.0);
  }
  // telescoping: column sums vanish, so 1^T E = 0
  for (int c = 0; c < 6; ++c) CHECK(E.col(c).sum() == 0.0);
}

TEST_CASE("incidence applies the discrete difference") {
  PeriodicMesh1D m(4, 1.0, 3);
  const Eigen::MatrixXd E = incidence(m);
  Eigen::VectorXd u(m.dim_U());
  for (int g = 0; g < m.dim_U(); ++g) u[g] = std::sin(2 * pi * g / m.dim_U());
  const Eigen::VectorXd d = E * u;
  // row for edge i of element e is u(next node) - u(this node)
  for (int e = 0; e < m.n_elements(); ++e)
    for (int i = 0; i < m.degree(); ++i)
      CHECK(d[m.global_Q(e, i)] ==
            doctest::Approx(u[m.global_U(e, i + 1)] - u[m.global_U(e, i)])
                .epsilon(1e-14));
}

TEST_CASE("edge mass matrix for p=1 is the finite-volume 1/dx") {
  PeriodicMesh1D m(2, 1.0, 1);  // two cells of width 0.5
  const Eigen::MatrixXd MQ = mass_Q(m);
  REQUIRE(MQ.rows() == 2);
  CHECK(MQ(0, 0) == doctest::Approx(2.0).epsilon(1e-13));  // 1/dx
  CHECK(MQ(1, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(MQ(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("mass matrices are symmetric positive definite") {
  for (int p : {1, 3, 5}) {
    PeriodicMesh1D m(4, 1.0, p);
    const Eigen::MatrixXd MU = mass_U(m);
    const Eigen::MatrixXd MQ = mass_Q(m);
    CHECK((MU - MU.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((MQ - MQ.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eu(MU), eq(MQ);
    CHECK(eu.eigenvalues().minCoeff() > 0.0);
    CHECK(eq.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("nodal mass row sums integrate the hat of unity") {
  PeriodicMesh1D m(5, 1.0, 1);  // |J| = 0.1
  const Eigen::MatrixXd MU = mass_U(m);
  for (int r = 0; r < MU.rows(); ++r)
    CHECK(MU.row(r).sum() == doctest::Approx(0.2).epsilon(1e-13));
  // linear FEM stencil: diag 4|J|/3, neighbours |J|/3
  CHECK(MU(0, 0) == doctest::Approx(4.0 * 0.1 / 3.0).epsilon(1e-13));
  CHECK(MU(0, 1) == doctest::Approx(0.1 / 3.0).epsilon(1e-13));
}

TEST_CASE("edge mass matrix acts as the block integral dual") {
  // q^T M_Q q equals the L2 norm of the reconstructed field
  PeriodicMesh1D m(6, 1.0, 3);
  auto f = [](double x) { return 0.5 * (1.0 - std::cos(2 * pi * x)); };
  const Field q = project_to_Q(m, f);
  const Eigen::MatrixXd MQ = mass_Q(m);
  const double energy = q.coeffs.dot(MQ * q.coeffs);
  // int f^2 = 3/8 for this profile, reduced by the squared projection error
  CHECK(energy == doctest::Approx(0.375).epsilon(1e-4));
}

TEST_CASE("mixed flux matrix with unit velocity sums to edge integrals") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = VelocityModel::analytic([](double) { return 1.0; });
  const Eigen::MatrixXd R = mixed_flux(m, u);
  REQUIRE(R.rows() == m.dim_U());
  REQUIRE(R.cols() == m.dim_Q());
  // sum_i l_i = 1, so each column sums to u * int e_k = 1
  for (int c = 0; c < R.cols(); ++c)
    CHECK(R.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mixed flux scales linearly with constant velocity") {
  PeriodicMesh1D m(3, 1.0, 2);
  const VelocityModel u1 = VelocityModel::analytic([](double) { return 1.0; });
  const VelocityModel u2 = VelocityModel::analytic([](double) { return -2.5; });
  const Eigen::MatrixXd R1 = mixed_flux(m, u1);
  const Eigen::MatrixXd R2 = mixed_flux(m, u2);
  CHECK((R2 + 2.5 * R1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("shifted matrices reduce to unshifted at dt = 0") {
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = VelocityModel::analytic([](double) { return 0.7; });
  const DisplacementField none(Direction::Downstream, 0.0, u);
  CHECK((mass_U_shifted(m, none) - mass_U(m)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((mixed_flux(m, u, none) - mixed_flux(m, u)).cwiseAbs().maxCoeff() <
        1e-13);
}

TEST_CASE("shifted nodal mass keeps column sums") {
  // sum_i l_i(xi^d) = 1, so column sums (integrals of the unshifted trial
  // functions) are preserved
  PeriodicMesh1D m(4, 1.0, 3);
  const VelocityModel u = VelocityModel::analytic([](double) { return 0.4; });
  const DisplacementField shift(Direction::Downstream, 0.05, u);
  const Eigen::MatrixXd MUs = mass_U_shifted(m, shift);
  const Eigen::MatrixXd MU = mass_U(m);
  for (int c = 0; c < MU.cols(); ++c)
    CHECK(MUs.col(c).sum() == doctest::Approx(MU.col(c).sum()).epsilon(1e-11));
}

TEST_CASE("triplet export round-trips") {
  PeriodicMesh1D m(2, 1.0, 2);
  const Eigen::MatrixXd E = incidence(m);
  const std::string path = "test_triplets.txt";
  export_triplets(E, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  Eigen::MatrixXd back = Eigen::MatrixXd::Zero(E.rows(), E.cols());
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    int r, c;
    double v;
    ss >> r >> c >> v;
    back(r, c) = v;
  }
  in.close();
  std::remove(path.c_str());
  CHECK((back - E).cwiseAbs().maxCoeff() < 1e-14);
}
