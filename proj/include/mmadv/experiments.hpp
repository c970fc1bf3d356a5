#ifndef MMADV_EXPERIMENTS_HPP
#define MMADV_EXPERIMENTS_HPP

#include <map>
#include <string>
#include <vector>

#include "mmadv/operators.hpp"
#include "mmadv/plane2d.hpp"
#include "mmadv/spectral.hpp"
#include "mmadv/timestep.hpp"

namespace mmadv {

// Flat experiment configuration; unknown keys are rejected up front.
using ConfigMap = std::map<std::string, std::string>;

// Least-squares slope of log(error) against log(1/n_e).
double fit_convergence(const std::vector<double>& n_e,
                       const std::vector<double>& errors);

// Velocity specs: "const:<v>" or "manufactured" (0.4 + 0.2 (1 + sin 2 pi x)).
VelocityModel velocity_from_spec(const std::string& spec,
                                 const PeriodicMesh1D& mesh);

struct ConvergenceResult {
  std::vector<int> resolutions;
  std::vector<double> error_original;
  std::vector<double> error_pg;
  double slope_original = 0.0;
  double slope_pg = 0.0;
};

// L2 flux error against F = u q for the manufactured solution, original
// and Petrov-Galerkin fluxes, dt = dt_over_ne / n_e.
ConvergenceResult converge_flux(int p, const std::vector<int>& resolutions,
                                double dt_over_ne, int quad_points = -1);

// L2 error of the material-form tendency -M_Q^-1 B q against -u dq/dx.
ConvergenceResult converge_material(int p, const std::vector<int>& resolutions,
                                    double dt_over_ne, int quad_points = -1);

// The sharp tanh profile used by the 1D revolution tests.
double tanh_profile(double x);

// Known experiment names: converge-flux, converge-material, advect1d,
// dispersion, stability, advect2d. Writes CSV outputs, plot scripts and a
// manifest.json under out_dir.
void run_experiment(const std::string& name, const ConfigMap& config,
                    const std::string& out_dir);

}  // namespace mmadv

#endif  // MMADV_EXPERIMENTS_HPP
