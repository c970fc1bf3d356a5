#include "mmadv/mesh_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace mmadv {

PeriodicMesh1D::PeriodicMesh1D(int n_e, double L, int p)
    : n_e_(n_e), L_(L), p_(p), jac_(L / (2.0 * n_e)), basis_(p) {
  if (n_e < 2) throw std::invalid_argument("PeriodicMesh1D: n_e must be >= 2");
  if (L <= 0.0) throw std::invalid_argument("PeriodicMesh1D: L must be > 0");
}

int PeriodicMesh1D::global_U(int element, int local_node) const {
  return (element * p_ + local_node) % (n_e_ * p_);
}

int PeriodicMesh1D::global_Q(int element, int local_edge) const {
  return element * p_ + local_edge;
}

double PeriodicMesh1D::x_of(int element, double xi) const {
  return element * element_width() + jac_ * (xi + 1.0);
}

int PeriodicMesh1D::element_of(double x, double* xi) const {
  double xm = std::fmod(x, L_);
  if (xm < 0.0) xm += L_;
  int e = static_cast<int>(xm / element_width());
  if (e >= n_e_) e = n_e_ - 1;
  if (xi) *xi = (xm - e * element_width()) / jac_ - 1.0;
  return e;
}

namespace {

// per-element Q mass block, (1/|J|) int e_i e_j dxi
Eigen::MatrixXd q_mass_block(const PeriodicMesh1D& mesh, int quad_points) {
  const int p = mesh.degree();
  const QuadratureRule rule = gauss_rule(quad_points);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(p, p);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd e = mesh.basis().eval_all_edge(rule.points[q]);
    block += rule.weights[q] * e * e.transpose();
  }
  return block / mesh.jacobian();
}

int default_quad(const PeriodicMesh1D& mesh, int quad_points) {
  return quad_points > 0 ? quad_points : mesh.degree() + 3;
}

}  // namespace

Field project_to_Q(const PeriodicMesh1D& mesh,
                   const std::function<double(double)>& f, int quad_points) {
  const int p = mesh.degree();
  const int nq = default_quad(mesh, quad_points);
  const QuadratureRule rule = gauss_rule(nq);

  const Eigen::MatrixXd block = q_mass_block(mesh, nq);
  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("project_to_Q: singular Q mass block");

  Field out{Space::Q, &mesh, Eigen::VectorXd::Zero(mesh.dim_Q())};
  for (int e = 0; e < mesh.n_elements(); ++e) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(p);
    for (int q = 0; q < rule.size(); ++q) {
      // <e_i, f>: the 1/|J| basis scaling cancels the |J| measure
      const double x = mesh.x_of(e, rule.points[q]);
      r += rule.weights[q] * f(x) * mesh.basis().eval_all_edge(rule.points[q]);
    }
    out.coeffs.segment(e * p, p) = llt.solve(r);
  }
  return out;
}

double sample_one(const Field& field, double x) {
  const PeriodicMesh1D& mesh = *field.mesh;
  double xi;
  const int e = mesh.element_of(x, &xi);
  const int p = mesh.degree();
  double v = 0.0;
  if (field.space == Space::Q) {
    const Eigen::VectorXd ev = mesh.basis().eval_all_edge(xi);
    v = ev.dot(field.coeffs.segment(e * p, p)) / mesh.jacobian();
  } else {
    const Eigen::VectorXd lv = mesh.basis().eval_all_nodal(xi);
    for (int m = 0; m <= p; ++m) v += lv[m] * field.coeffs[mesh.global_U(e, m)];
  }
  return v;
}

Eigen::VectorXd sample(const Field& field, const std::vector<double>& xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  for (size_t i = 0; i < xs.size(); ++i) out[i] = sample_one(field, xs[i]);
  return out;
}

Diagnostics diagnostics(const Field& q) {
  if (q.space != Space::Q)
    throw std::invalid_argument("diagnostics: expects a Q-space field");
  const PeriodicMesh1D& mesh = *q.mesh;
  const int p = mesh.degree();

  Diagnostics d{};
  d.mass = q.coeffs.sum();

  const Eigen::MatrixXd block = q_mass_block(mesh, p + 3);
  d.energy = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Eigen::VectorXd qe = q.coeffs.segment(e * p, p);
    d.energy += qe.dot(block * qe);
  }

  const int ns = 8 * mesh.dim_Q();
  double prev = 0.0;
  d.total_variation = 0.0;
  for (int i = 0; i <= ns; ++i) {
    const double x = (i % ns) * mesh.length() / ns;
    const double v = sample_one(q, x);
    if (i > 0) d.total_variation += std::abs(v - prev);
    prev = v;
  }
  return d;
}

double l2_error(const Field& field, const std::function<double(double)>& ref,
                int quad_points) {
  const PeriodicMesh1D& mesh = *field.mesh;
  const int nq = quad_points > 0 ? quad_points : mesh.degree() + 5;
  const QuadratureRule rule = gauss_rule(nq);
  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mesh.x_of(e, rule.points[q]);
      const double diff = sample_one(field, x) - ref(x);
      acc += rule.weights[q] * mesh.jacobian() * diff * diff;
    }
  }
  return std::sqrt(acc);
}

double l2_norm(const PeriodicMesh1D& mesh,
               const std::function<double(double)>& f, int quad_points) {
  const int nq = quad_points > 0 ? quad_points : mesh.degree() + 5;
  const QuadratureRule rule = gauss_rule(nq);
  double acc = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mesh.x_of(e, rule.points[q]);
      const double v = f(x);
      acc += rule.weights[q] * mesh.jacobian() * v * v;
    }
  }
  return std::sqrt(acc);
}

VelocityModel VelocityModel::analytic(std::function<double(double)> u) {
  VelocityModel m;
  m.analytic_ = std::move(u);
  return m;
}

VelocityModel VelocityModel::discrete(Field u_field) {
  if (u_field.space != Space::U)
    throw std::invalid_argument("VelocityModel: discrete velocity must live in U_h");
  VelocityModel m;
  m.discrete_ = std::move(u_field);
  return m;
}

double VelocityModel::eval(double x) const {
  if (discrete_) return sample_one(*discrete_, x);
  return analytic_(x);
}

}  // namespace mmadv
