#ifndef MMADV_PLANE2D_HPP
#define MMADV_PLANE2D_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "mmadv/mesh_fields.hpp"

namespace mmadv {

using SparseMat = Eigen::SparseMatrix<double>;

// Doubly periodic plane [0,L)^2, n_e x n_e square elements of degree p.
// Q_h DOFs: (n_e p)^2 fully discontinuous. U_h DOFs: 2 (n_e p)^2, the
// xi-directed component first, each component normal-continuous in its
// nodal direction.
class PeriodicMesh2D {
 public:
  PeriodicMesh2D(int n_e, double L, int p);

  int n_elements() const { return n_e_; }
  double length() const { return L_; }
  int degree() const { return p_; }
  double jacobian_1d() const { return jac_; }           // L/(2 n_e) per dim
  double jacobian() const { return jac_ * jac_; }       // |J|
  const NodalEdgeBasis& basis() const { return basis_; }

  int n() const { return n_e_ * p_; }  // DOF lines per dimension
  int dim_Q() const { return n() * n(); }
  int dim_U() const { return 2 * n() * n(); }

  int global_Q(int ex, int ey, int i, int j) const;
  int global_Ux(int ex, int ey, int i, int j) const;  // l_i(xi) e_j(eta)
  int global_Uy(int ex, int ey, int i, int j) const;  // e_i(xi) l_j(eta)

  double x_of(int ex, double xi) const;
  int element_of(double x, double* xi) const;

 private:
  int n_e_;
  double L_;
  int p_;
  double jac_;
  NodalEdgeBasis basis_;
};

// Interleaved per-element numbering of the U_h tensor bases: even k are
// xi-directed, odd k eta-directed.
struct TensorBasisIndex {
  bool xi_directed;
  int i;
  int j;

  static TensorBasisIndex decode(int p, int k);
  int encode(int p) const;
};

using VelocityField2D =
    std::function<std::array<double, 2>(double x, double y, double t)>;

// Strong-form divergence E^{2,1}: dim_Q x dim_U, entries in {-1,0,+1},
// four nonzeros per row.
SparseMat incidence2d(const PeriodicMesh2D& mesh);

struct PlaneMatrices {
  SparseMat M_U;  // dim_U x dim_U, block diagonal over components
  SparseMat M_Q;  // dim_Q x dim_Q, block diagonal over elements
  SparseMat R;    // dim_U x dim_Q, <beta^u . u, gamma>
};

// Galerkin matrices at time t; dt_shift > 0 evaluates the C0 direction of
// each test component at downstream displacements.
PlaneMatrices assemble2d(const PeriodicMesh2D& mesh, const VelocityField2D& vel,
                         double t, double dt_shift = 0.0, int quad_points = -1);

struct Field2D {
  const PeriodicMesh2D* mesh;
  Eigen::VectorXd coeffs;  // Q_h
};

Field2D project_to_Q2d(const PeriodicMesh2D& mesh,
                       const std::function<double(double, double)>& f,
                       int quad_points = -1);
double sample2d(const Field2D& q, double x, double y);

struct Diagnostics2D {
  double mass;
  double energy;
  double total_variation;
  double max_abs;
};
Diagnostics2D diagnostics2d(const Field2D& q);

double l2_error2d(const Field2D& q,
                  const std::function<double(double, double)>& ref,
                  int quad_points = -1);

// RK3 flux-form advection stepper; rebuilds and caches the stage operators
// per velocity time level. upwind_dt > 0 enables the Petrov-Galerkin shift.
class PlaneAdvection {
 public:
  PlaneAdvection(const PeriodicMesh2D& mesh, VelocityField2D vel,
                 double upwind_dt, bool steady, int quad_points = -1);

  Eigen::VectorXd tendency(double t, const Eigen::VectorXd& q) const;
  Eigen::VectorXd step_rk3(const Eigen::VectorXd& q, double t, double dt) const;

 private:
  struct StageOps;
  std::shared_ptr<const StageOps> stage(double t) const;

  const PeriodicMesh2D& mesh_;
  VelocityField2D vel_;
  double upwind_dt_;
  bool steady_;
  int quad_points_;
  SparseMat E_;
  mutable std::map<double, std::shared_ptr<const StageOps>> cache_;
};

struct Report2D {
  std::shared_ptr<const PeriodicMesh2D> mesh;  // keeps final_state's mesh alive
  std::vector<double> times;
  std::vector<double> mass_error;  // relative to initial mass
  double l2_error_final = 0.0;
  double max_step_mass_error = 0.0;
  Diagnostics2D final_diag{};
  Field2D final_state;
};

Report2D run_translation2d(int n_e, int p, double ux, double uy, double dt,
                           double T, bool upwind);
// Reversing-swirl test with a fixed reversal period of 1.5; running to
// T = 1.5 returns the tracer to its initial position, T = 0.75 stops at
// maximum deformation.
Report2D run_deformational2d(int n_e, int p, double dt, double T, bool upwind);

}  // namespace mmadv

#endif  // MMADV_PLANE2D_HPP
