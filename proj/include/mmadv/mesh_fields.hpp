#ifndef MMADV_MESH_FIELDS_HPP
#define MMADV_MESH_FIELDS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mmadv/polybasis.hpp"

namespace mmadv {

enum class Space { U, Q };

// Uniform periodic partition of [0,L) into n_e spectral elements of degree p.
// Nodal (U) DOFs share element-boundary nodes with periodic wrap; edge (Q)
// DOFs are fully discontinuous. Both spaces have dimension n_e*p.
class PeriodicMesh1D {
 public:
  PeriodicMesh1D(int n_e, double L, int p);

  int n_elements() const { return n_e_; }
  double length() const { return L_; }
  int degree() const { return p_; }
  double jacobian() const { return jac_; }  // |J| = L/(2 n_e)
  double element_width() const { return 2.0 * jac_; }
  const NodalEdgeBasis& basis() const { return basis_; }

  int dim_U() const { return n_e_ * p_; }
  int dim_Q() const { return n_e_ * p_; }

  // local (element, node/edge) -> global DOF index
  int global_U(int element, int local_node) const;
  int global_Q(int element, int local_edge) const;

  // physical <-> local element coordinates
  double x_of(int element, double xi) const;
  int element_of(double x, double* xi) const;

 private:
  int n_e_;
  double L_;
  int p_;
  double jac_;
  NodalEdgeBasis basis_;
};

// Coefficient vector tagged with its space and mesh.
struct Field {
  Space space;
  const PeriodicMesh1D* mesh;
  Eigen::VectorXd coeffs;
};

struct Diagnostics {
  double mass;
  double energy;
  double total_variation;
};

Field project_to_Q(const PeriodicMesh1D& mesh,
                   const std::function<double(double)>& f,
                   int quad_points = -1);

double sample_one(const Field& field, double x);
Eigen::VectorXd sample(const Field& field, const std::vector<double>& xs);

// mass = sum of edge DOFs; energy = q^T M_Q q; TV on a uniform 8*n_e*p grid.
Diagnostics diagnostics(const Field& q);

// L2 norm of (field - ref) over [0,L), high-order per-element quadrature.
double l2_error(const Field& field, const std::function<double(double)>& ref,
                int quad_points = -1);
double l2_norm(const PeriodicMesh1D& mesh, const std::function<double(double)>& f,
               int quad_points = -1);

// Velocity usable inside assembly: analytic u(x) or a discrete U_h field.
class VelocityModel {
 public:
  static VelocityModel analytic(std::function<double(double)> u);
  static VelocityModel discrete(Field u_field);

  double eval(double x) const;
  bool is_discrete() const { return discrete_.has_value(); }

 private:
  VelocityModel() = default;
  std::function<double(double)> analytic_;
  std::optional<Field> discrete_;
};

}  // namespace mmadv

#endif  // MMADV_MESH_FIELDS_HPP
