#ifndef MMADV_SPECTRAL_HPP
#define MMADV_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "mmadv/operators.hpp"

namespace mmadv {

struct Eigenpairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // column per eigenvalue
};

// All eigenpairs of M^-1 K, dense solver, residual-checked.
Eigenpairs eig_generalized(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K);

struct DispersionRecord {
  int k;
  double omega_re;
  double omega_im;
  double dominant_amplitude;
};

// Interpolate each eigenvector to n = n_e*p physical sample points
// x_j = (j+1/2) L/n, expand over Fourier modes, and pair each eigenvalue
// with the dominant mode.
std::vector<DispersionRecord> fourier_pair(const PeriodicMesh1D& mesh,
                                           const Eigenpairs& pairs);

// Dispersion relation of an advection operator: eigenvalues omega of the
// semi-discrete evolution M_Q dq/dt = -K q, i.e. omega = -lambda(M_Q^-1 K),
// so dissipative modes carry Re(omega) < 0 and for constant velocity u the
// low modes follow omega_im ~ u 2 pi k / L.
std::vector<DispersionRecord> dispersion_relation(const PeriodicMesh1D& mesh,
                                                  const AdvectionOperator& op);

// Full spectrum of the one-step centered map
// (M + dt/2 K)^-1 (M - dt/2 K).
Eigenpairs amplification_spectrum(const Eigen::MatrixXd& M,
                                  const Eigen::MatrixXd& K, double dt);

struct StabilityScan {
  std::vector<double> cfl_values;
  std::vector<int> modes;
  // magnitudes[c][m]: |omega| of the amplification eigenvalue paired with
  // modes[m] at cfl_values[c] (NaN where no eigenvalue paired to that mode)
  std::vector<std::vector<double>> magnitudes;
};

// CFL x wavenumber A-stability scan of the centered A_PG time map for
// constant velocity; cfl = dt |u| n_e p / L.
StabilityScan stability_scan(const PeriodicMesh1D& mesh, double u,
                             const std::vector<double>& cfl_values);

void write_dispersion_csv(const std::vector<DispersionRecord>& records,
                          const std::string& path);
void write_scan_csv(const StabilityScan& scan, const std::string& path);

}  // namespace mmadv

#endif  // MMADV_SPECTRAL_HPP
