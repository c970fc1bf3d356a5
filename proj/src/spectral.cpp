#include "mmadv/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace mmadv {

Eigenpairs eig_generalized(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K) {
  if (M.rows() != K.rows() || M.cols() != K.cols() || M.rows() != M.cols())
    throw std::invalid_argument("eig_generalized: dimension mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const Eigen::MatrixXd MK = lu.solve(K);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(MK);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_generalized: eigensolver failed to converge");
  Eigenpairs out{solver.eigenvalues(), solver.eigenvectors()};
  const double knorm = K.norm();
  for (Eigen::Index i = 0; i < out.values.size(); ++i) {
    const Eigen::VectorXcd v = out.vectors.col(i);
    const double resid = (K * v - out.values[i] * (M * v)).norm();
    if (!(resid <= 1e-9 * (knorm + 1.0) * v.norm()))
      throw std::runtime_error("eig_generalized: residual " +
                               std::to_string(resid) + " too large for pair " +
                               std::to_string(i));
  }
  return out;
}

std::vector<DispersionRecord> fourier_pair(const PeriodicMesh1D& mesh,
                                           const Eigenpairs& pairs) {
  const int n = mesh.dim_Q();
  if (pairs.vectors.rows() != n || pairs.values.size() != pairs.vectors.cols())
    throw std::invalid_argument("fourier_pair: eigenvector length != n_e*p");
  const double L = mesh.length();
  const int p = mesh.degree();

  // sample points x_j = (j+1/2) L/n, interior to elements
  std::vector<double> xs(n);
  for (int j = 0; j < n; ++j) xs[j] = (j + 0.5) * L / n;

  // Q_jk = e_k at x_j, local coordinates (uniform Jacobian cancels)
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    double xi;
    const int e = mesh.element_of(xs[j], &xi);
    const Eigen::VectorXd ev = mesh.basis().eval_all_edge(xi);
    for (int i = 0; i < p; ++i) Q(j, mesh.global_Q(e, i)) = ev[i];
  }

  // F_jk = exp(i 2 pi k x_j / L), modes -floor(n/2) .. ceil(n/2)-1
  const int kmin = -(n / 2);
  std::vector<int> modes(n);
  for (int m = 0; m < n; ++m) modes[m] = kmin + m;
  Eigen::MatrixXcd F(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const double th = 2.0 * M_PI * modes[m] * xs[j] / L;
      F(j, m) = std::complex<double>(std::cos(th), std::sin(th));
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> flu(F);

  std::vector<DispersionRecord> records;
  records.reserve(pairs.values.size());
  for (int i = 0; i < pairs.values.size(); ++i) {
    const Eigen::VectorXcd vf = flu.solve(Q * pairs.vectors.col(i));
    int best = 0;
    double best_amp = -1.0;
    for (int m = 0; m < n; ++m) {
      const double amp = std::abs(vf[m]);
      // ties at 1e-12 resolve to the smaller |k|, then to k >= 0
      if (amp > best_amp + 1e-12 ||
          (amp > best_amp - 1e-12 &&
           (std::abs(modes[m]) < std::abs(modes[best]) ||
            (std::abs(modes[m]) == std::abs(modes[best]) &&
             modes[m] > modes[best])))) {
        best = m;
        best_amp = amp;
      }
    }
    records.push_back({modes[best], pairs.values[i].real(),
                       pairs.values[i].imag(), best_amp});
  }
  return records;
}

std::vector<DispersionRecord> dispersion_relation(const PeriodicMesh1D& mesh,
                                                  const AdvectionOperator& op) {
  const Eigen::MatrixXd MQ = mass_Q(mesh);
  const Eigenpairs pairs = eig_generalized(MQ, op.matrix);
  std::vector<DispersionRecord> records = fourier_pair(mesh, pairs);
  // report the evolution-generator eigenvalues -lambda, mirroring the mode
  // so that constant-velocity advection follows omega_im ~ u 2 pi k / L
  for (auto& r : records) {
    r.k = -r.k;
    r.omega_re = -r.omega_re;
    r.omega_im = -r.omega_im;
  }
  return records;
}

Eigenpairs amplification_spectrum(const Eigen::MatrixXd& M,
                                  const Eigen::MatrixXd& K, double dt) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M + 0.5 * dt * K);
  const Eigen::MatrixXd map = lu.solve(M - 0.5 * dt * K);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(map);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("amplification_spectrum: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

StabilityScan stability_scan(const PeriodicMesh1D& mesh, double u,
                             const std::vector<double>& cfl_values) {
  const int n = mesh.dim_Q();
  const Eigen::MatrixXd MQ = mass_Q(mesh);
  const VelocityModel vel = VelocityModel::analytic([u](double) { return u; });

  StabilityScan scan;
  scan.cfl_values = cfl_values;
  const int kmin = -(n / 2);
  scan.modes.resize(n);
  for (int m = 0; m < n; ++m) scan.modes[m] = kmin + m;

  for (const double cfl : cfl_values) {
    const double dt =
        cfl * mesh.length() / (std::abs(u) * mesh.n_elements() * mesh.degree());
    const AdvectionOperator op = build_A_PG(mesh, vel, dt);
    const Eigenpairs amp = amplification_spectrum(MQ, op.matrix, dt);
    const std::vector<DispersionRecord> recs = fourier_pair(mesh, amp);
    std::vector<double> mags(n, std::numeric_limits<double>::quiet_NaN());
    for (const auto& r : recs) {
      const int m = r.k - kmin;
      const double a = std::hypot(r.omega_re, r.omega_im);
      if (std::isnan(mags[m]) || a > mags[m]) mags[m] = a;
    }
    scan.magnitudes.push_back(std::move(mags));
  }
  return scan;
}

void write_dispersion_csv(const std::vector<DispersionRecord>& records,
                          const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_dispersion_csv: cannot open " + path);
  std::fprintf(f, "k,omega_re,omega_im\n");
  for (const auto& r : records)
    std::fprintf(f, "%d,%.17g,%.17g\n", r.k, r.omega_re, r.omega_im);
  std::fclose(f);
}

void write_scan_csv(const StabilityScan& scan, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_scan_csv: cannot open " + path);
  std::fprintf(f, "cfl,k,abs_omega\n");
  for (size_t c = 0; c < scan.cfl_values.size(); ++c) {
    for (size_t m = 0; m < scan.modes.size(); ++m) {
      if (!std::isnan(scan.magnitudes[c][m]))
        std::fprintf(f, "%.17g,%d,%.17g\n", scan.cfl_values[c], scan.modes[m],
                     scan.magnitudes[c][m]);
    }
  }
  std::fclose(f);
}

}  // namespace mmadv
