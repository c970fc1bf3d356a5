#ifndef MMADV_POLYBASIS_HPP
#define MMADV_POLYBASIS_HPP

#include <vector>

#include <Eigen/Dense>

namespace mmadv {

// Gauss-Legendre rule on [-1,1], exact for polynomials of degree <= 2q-1.
struct QuadratureRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(points.size()); }
};

QuadratureRule gauss_rule(int q);

// Degree-p GLL Lagrange basis together with the edge-function basis
// e_i = -sum_{k<=i} dl_k/dxi, i = 0..p-1, on the canonical domain [-1,1].
// Evaluation uses the second barycentric form and so remains stable for
// arguments outside [-1,1].
class NodalEdgeBasis {
 public:
  explicit NodalEdgeBasis(int p);

  int degree() const { return p_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& node_weights() const { return weights_; }
  // derivative_matrix()(j,i) = dl_i/dxi evaluated at node xi_j.
  const Eigen::MatrixXd& derivative_matrix() const { return deriv_; }

  double eval_nodal(int i, double xi) const;
  double eval_nodal_deriv(int i, double xi) const;
  double eval_edge(int i, double xi) const;

  // All nodal (resp. edge) values at a point; cheaper than p+1 scalar calls.
  Eigen::VectorXd eval_all_nodal(double xi) const;
  Eigen::VectorXd eval_all_edge(double xi) const;

 private:
  void check_nodal_index(int i) const;

  int p_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;     // GLL quadrature weights
  Eigen::VectorXd bary_;        // barycentric weights
  Eigen::MatrixXd deriv_;      // (p+1)x(p+1), deriv_(j,i) = l_i'(xi_j)
  Eigen::MatrixXd edge_coeff_;  // (p+1)xp, e_i = sum_j edge_coeff_(j,i) l_j
};

}  // namespace mmadv

#endif  // MMADV_POLYBASIS_HPP
