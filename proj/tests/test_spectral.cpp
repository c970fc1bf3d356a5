#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <doctest.h>

#include "mmadv/spectral.hpp"

using namespace mmadv;

namespace {
constexpr double pi = std::numbers::pi;

VelocityModel const_u(double v) {
  return VelocityModel::analytic([v](double) { return v; });
}
}  // namespace

TEST_CASE("generalized eigensolve on a diagonal pencil") {
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(3, 3) * 2.0;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(3, 3);
  K(0, 0) = 2.0;
  K(1, 1) = 4.0;
  K(2, 2) = 6.0;
  const Eigenpairs e = eig_generalized(M, K);
  std::vector<double> vals;
  for (int i = 0; i < 3; ++i) vals.push_back(e.values[i].real());
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vals[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(vals[2] == doctest::Approx(3.0).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(e.values[i].imag()) < 1e-12);
}

TEST_CASE("skew operators have purely imaginary spectra") {
  PeriodicMesh1D m(8, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  const Eigen::MatrixXd MQ = mass_Q(m);
  const Eigen::MatrixXd S = build_S(m, u).matrix;
  const Eigenpairs e = eig_generalized(MQ, S);
  for (int i = 0; i < e.values.size(); ++i)
    CHECK(std::abs(e.values[i].real()) < 1e-9);
}

TEST_CASE("fourier pairing identifies a pure mode") {
  PeriodicMesh1D m(8, 1.0, 3);
  const int n = m.dim_Q();
  const int k = 3;
  const Field cr = project_to_Q(m, [k](double x) { return std::cos(2 * pi * k * x); });
  const Field ci = project_to_Q(m, [k](double x) { return std::sin(2 * pi * k * x); });
  Eigenpairs pairs;
  pairs.values = Eigen::VectorXcd::Constant(1, std::complex<double>(0.0, 2.0));
  pairs.vectors = Eigen::MatrixXcd(n, 1);
  pairs.vectors.col(0) = cr.coeffs + std::complex<double>(0, 1) * ci.coeffs;
  const auto recs = fourier_pair(m, pairs);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].k == k);
  CHECK(recs[0].dominant_amplitude > 0.0);
}

TEST_CASE("dispersion of the skew operator follows the exact line") {
  PeriodicMesh1D m(40, 1.0, 3);
  const double uval = 0.4;
  const VelocityModel u = const_u(uval);
  const AdvectionOperator S = build_S(m, u);
  const auto recs = dispersion_relation(m, S);
  REQUIRE(static_cast<int>(recs.size()) == m.dim_Q());
  bool found_k1 = false, found_k0 = false;
  for (const auto& r : recs) {
    CHECK(std::abs(r.omega_re) < 1e-8);  // energy conserving
    if (r.k == 1 && !found_k1) {
      found_k1 = true;
      CHECK(r.omega_im == doctest::Approx(uval * 2 * pi).epsilon(1e-5));
    }
    if (r.k == 0) found_k0 = true;
  }
  CHECK(found_k1);
  CHECK(found_k0);
}

TEST_CASE("upwinded flux operator is dissipative") {
  PeriodicMesh1D m(20, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  const AdvectionOperator APG = build_A_PG(m, u, 0.01);
  const auto recs = dispersion_relation(m, APG);
  for (const auto& r : recs) CHECK(r.omega_re <= 1e-9);
}

TEST_CASE("centered amplification of a skew operator stays on the circle") {
  PeriodicMesh1D m(8, 1.0, 3);
  const VelocityModel u = const_u(0.4);
  const Eigen::MatrixXd MQ = mass_Q(m);
  const Eigen::MatrixXd S = build_S(m, u).matrix;
  const Eigenpairs amp = amplification_spectrum(MQ, S, 0.05);
  for (int i = 0; i < amp.values.size(); ++i)
    CHECK(std::abs(amp.values[i]) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("stability scan shape and boundedness") {
  PeriodicMesh1D m(10, 1.0, 3);
  const std::vector<double> cfls = {0.1, 0.3, 0.6};
  const StabilityScan scan = stability_scan(m, 1.0, cfls);
  REQUIRE(scan.cfl_values == cfls);
  REQUIRE(scan.magnitudes.size() == cfls.size());
  for (const auto& row : scan.magnitudes) {
    REQUIRE(row.size() == scan.modes.size());
    for (double v : row)
      if (!std::isnan(v)) CHECK(v <= 1.0 + 1e-8);  // A-stable centered map
  }
}

TEST_CASE("spectral csv layouts") {
  std::vector<DispersionRecord> recs = {{0, 0.0, 0.0, 1.0},
                                        {1, -0.1, 2.5, 0.9}};
  write_dispersion_csv(recs, "test_disp.csv");
  {
    std::ifstream in("test_disp.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,omega_re,omega_im");
  }
  std::remove("test_disp.csv");

  StabilityScan scan;
  scan.cfl_values = {0.1};
  scan.modes = {0, 1};
  scan.magnitudes = {{1.0, 0.99}};
  write_scan_csv(scan, "test_scan.csv");
  {
    std::ifstream in("test_scan.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "cfl,k,abs_omega");
    int lines = 0;
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) ++lines;
    CHECK(lines == 2);
  }
  std::remove("test_scan.csv");
}
