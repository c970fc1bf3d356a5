#include "mmadv/assembly.hpp"

#include <cstdio>
#include <stdexcept>

namespace mmadv {

namespace {
int default_quad(const PeriodicMesh1D& mesh, int quad_points) {
  return quad_points > 0 ? quad_points : mesh.degree() + 3;
}
}  // namespace

Eigen::MatrixXd incidence(const PeriodicMesh1D& mesh) {
  const int n = mesh.dim_Q();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    E(j, j) = -1.0;
    E(j, (j + 1) % n) = 1.0;
  }
  return E;
}

Eigen::MatrixXd mass_U(const PeriodicMesh1D& mesh, int quad_points) {
  const int p = mesh.degree();
  const QuadratureRule rule = gauss_rule(default_quad(mesh, quad_points));

  Eigen::MatrixXd local = Eigen::MatrixXd::Zero(p + 1, p + 1);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd l = mesh.basis().eval_all_nodal(rule.points[q]);
    local += rule.weights[q] * mesh.jacobian() * l * l.transpose();
  }

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(mesh.dim_U(), mesh.dim_U());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int i = 0; i <= p; ++i) {
      for (int j = 0; j <= p; ++j) {
        M(mesh.global_U(e, i), mesh.global_U(e, j)) += local(i, j);
      }
    }
  }
  return M;
}

Eigen::MatrixXd mass_Q(const PeriodicMesh1D& mesh, int quad_points) {
  const int p = mesh.degree();
  const QuadratureRule rule = gauss_rule(default_quad(mesh, quad_points));

  Eigen::MatrixXd local = Eigen::MatrixXd::Zero(p, p);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd ev = mesh.basis().eval_all_edge(rule.points[q]);
    local += rule.weights[q] * ev * ev.transpose();
  }
  local /= mesh.jacobian();

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(mesh.dim_Q(), mesh.dim_Q());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    M.block(e * p, e * p, p, p) = local;
  }
  return M;
}

Eigen::MatrixXd mixed_flux(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                           const std::optional<DisplacementField>& shift,
                           int quad_points) {
  const int p = mesh.degree();
  const QuadratureRule rule = gauss_rule(default_quad(mesh, quad_points));

  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(mesh.dim_U(), mesh.dim_Q());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double x = mesh.x_of(e, xi);
      const double u = vel.eval(x);
      const double xi_test = shift ? shift->displace(mesh, e, xi) : xi;
      // the 1/|J| edge scaling cancels the |J| measure
      const Eigen::VectorXd l = mesh.basis().eval_all_nodal(xi_test);
      const Eigen::VectorXd ev = mesh.basis().eval_all_edge(xi);
      for (int i = 0; i <= p; ++i) {
        const int gi = mesh.global_U(e, i);
        for (int k = 0; k < p; ++k) {
          R(gi, mesh.global_Q(e, k)) += rule.weights[q] * l[i] * u * ev[k];
        }
      }
    }
  }
  return R;
}

Eigen::MatrixXd mass_U_shifted(const PeriodicMesh1D& mesh,
                               const DisplacementField& shift,
                               int quad_points) {
  const int p = mesh.degree();
  const QuadratureRule rule = gauss_rule(default_quad(mesh, quad_points));

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(mesh.dim_U(), mesh.dim_U());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.points[q];
      const double xi_test = shift.displace(mesh, e, xi);
      const Eigen::VectorXd lt = mesh.basis().eval_all_nodal(xi_test);
      const Eigen::VectorXd l = mesh.basis().eval_all_nodal(xi);
      for (int i = 0; i <= p; ++i) {
        const int gi = mesh.global_U(e, i);
        for (int j = 0; j <= p; ++j) {
          M(gi, mesh.global_U(e, j)) +=
              rule.weights[q] * mesh.jacobian() * lt[i] * l[j];
        }
      }
    }
  }
  return M;
}

void export_triplets(const Eigen::MatrixXd& m, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("export_triplets: cannot open " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0)
        std::fprintf(f, "%ld,%ld,%.17g\n", static_cast<long>(i),
                     static_cast<long>(j), m(i, j));
    }
  }
  std::fclose(f);
}

}  // namespace mmadv
