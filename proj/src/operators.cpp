#include "mmadv/operators.hpp"

#include <stdexcept>

namespace mmadv {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::A: return "A";
    case OperatorKind::B: return "B";
    case OperatorKind::A_PG: return "A_PG";
    case OperatorKind::B_PG: return "B_PG";
    case OperatorKind::S: return "S";
    case OperatorKind::S_PG: return "S_PG";
  }
  return "?";
}

OperatorKind operator_kind_from_string(const std::string& s) {
  if (s == "A") return OperatorKind::A;
  if (s == "B") return OperatorKind::B;
  if (s == "A_PG") return OperatorKind::A_PG;
  if (s == "B_PG") return OperatorKind::B_PG;
  if (s == "S") return OperatorKind::S;
  if (s == "S_PG") return OperatorKind::S_PG;
  throw std::invalid_argument("unknown operator kind: " + s);
}

namespace {

Eigen::MatrixXd solve_checked(const Eigen::MatrixXd& M,
                              const Eigen::MatrixXd& rhs, const char* what) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const Eigen::MatrixXd X = lu.solve(rhs);
  const double resid = (M * X - rhs).norm();
  if (!(resid <= 1e-8 * (rhs.norm() + 1.0))) {
    throw std::runtime_error(std::string(what) +
                             ": factorization failed (residual " +
                             std::to_string(resid) + ", rcond " +
                             std::to_string(lu.rcond()) + ")");
  }
  return X;
}

// A = M_Q E M_U^-1 R, with optionally shifted test functions in both
// M_U and R.
Eigen::MatrixXd flux_form_matrix(const PeriodicMesh1D& mesh,
                                 const VelocityModel& vel,
                                 const std::optional<DisplacementField>& shift,
                                 int quad_points) {
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad_points);
  const Eigen::MatrixXd E = incidence(mesh);
  const Eigen::MatrixXd MU = shift ? mass_U_shifted(mesh, *shift, quad_points)
                                   : mass_U(mesh, quad_points);
  const Eigen::MatrixXd R = mixed_flux(mesh, vel, shift, quad_points);
  return MQ * E * solve_checked(MU, R, "flux_form_matrix");
}

}  // namespace

AdvectionOperator build_A(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points) {
  return {OperatorKind::A, flux_form_matrix(mesh, vel, {}, quad_points), 0.0};
}

AdvectionOperator build_A_PG(const PeriodicMesh1D& mesh,
                             const VelocityModel& vel, double dt,
                             int quad_points, double tuning) {
  if (dt < 0.0) throw std::invalid_argument("build_A_PG: dt must be >= 0");
  DisplacementField shift(Direction::Downstream, dt, vel, tuning);
  return {OperatorKind::A_PG, flux_form_matrix(mesh, vel, shift, quad_points),
          dt};
}

AdvectionOperator build_B(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points) {
  // B = -<e_i, u l_k> M_U^-1 E^T M_Q, assembled directly;
  // <e_i, u l_k> is the transpose of the mixed flux matrix.
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad_points);
  const Eigen::MatrixXd E = incidence(mesh);
  const Eigen::MatrixXd MU = mass_U(mesh, quad_points);
  const Eigen::MatrixXd R = mixed_flux(mesh, vel, {}, quad_points);
  const Eigen::MatrixXd G =
      solve_checked(MU, E.transpose() * MQ, "build_B");
  return {OperatorKind::B, -R.transpose() * G, 0.0};
}

AdvectionOperator build_B_PG(const PeriodicMesh1D& mesh,
                             const VelocityModel& vel, double dt,
                             int quad_points, double tuning) {
  if (dt < 0.0) throw std::invalid_argument("build_B_PG: dt must be >= 0");
  // downwinded trial functions l^d at xi^u; equals -A_PG(-dt)^T
  DisplacementField shift(Direction::Upstream, dt, vel, tuning);
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad_points);
  const Eigen::MatrixXd E = incidence(mesh);
  const Eigen::MatrixXd MUs = mass_U_shifted(mesh, shift, quad_points);
  const Eigen::MatrixXd Rs = mixed_flux(mesh, vel, shift, quad_points);
  // <l_m, l_k^d> = MUs^T; B_PG = -Rs^T (MUs^T)^-T E^T MQ = -Rs^T MUs^-1 ...
  // solve MUs^T X = E^T MQ with X = <l_m,l_k^d>^-1 E^T MQ
  const Eigen::MatrixXd G = solve_checked(
      Eigen::MatrixXd(MUs.transpose()), E.transpose() * MQ, "build_B_PG");
  return {OperatorKind::B_PG, -Rs.transpose() * G, dt};
}

AdvectionOperator build_S(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points) {
  const Eigen::MatrixXd A = flux_form_matrix(mesh, vel, {}, quad_points);
  return {OperatorKind::S, 0.5 * (A - A.transpose()).eval(), 0.0};
}

AdvectionOperator build_S_PG(const PeriodicMesh1D& mesh,
                             const VelocityModel& vel, double dt,
                             int quad_points, double tuning) {
  // skew part of the upwinded flux operator: exactly skew-symmetric by
  // construction and reduces to S as dt -> 0
  DisplacementField down(Direction::Downstream, dt, vel, tuning);
  const Eigen::MatrixXd Apg = flux_form_matrix(mesh, vel, down, quad_points);
  return {OperatorKind::S_PG, 0.5 * (Apg - Apg.transpose()).eval(), dt};
}

AdvectionOperator build_operator(OperatorKind kind, const PeriodicMesh1D& mesh,
                                 const VelocityModel& vel, double dt,
                                 int quad_points, double tuning) {
  switch (kind) {
    case OperatorKind::A: return build_A(mesh, vel, quad_points);
    case OperatorKind::B: return build_B(mesh, vel, quad_points);
    case OperatorKind::A_PG: return build_A_PG(mesh, vel, dt, quad_points, tuning);
    case OperatorKind::B_PG: return build_B_PG(mesh, vel, dt, quad_points, tuning);
    case OperatorKind::S: return build_S(mesh, vel, quad_points);
    case OperatorKind::S_PG: return build_S_PG(mesh, vel, dt, quad_points, tuning);
  }
  throw std::invalid_argument("build_operator: bad kind");
}

Field solve_flux(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                 const Field& q, const std::optional<DisplacementField>& shift,
                 int quad_points) {
  const Eigen::MatrixXd MU = shift ? mass_U_shifted(mesh, *shift, quad_points)
                                   : mass_U(mesh, quad_points);
  const Eigen::MatrixXd R = mixed_flux(mesh, vel, shift, quad_points);
  return {Space::U, &mesh, solve_checked(MU, R * q.coeffs, "solve_flux")};
}

Field solve_grad(const PeriodicMesh1D& mesh, const Field& q, int quad_points) {
  const Eigen::MatrixXd MU = mass_U(mesh, quad_points);
  const Eigen::MatrixXd E = incidence(mesh);
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad_points);
  return {Space::U, &mesh,
          -solve_checked(MU, E.transpose() * (MQ * q.coeffs), "solve_grad")};
}

Field apply_tendency(const PeriodicMesh1D& mesh, const AdvectionOperator& op,
                     const Field& q, int quad_points) {
  const Eigen::MatrixXd MQ = mass_Q(mesh, quad_points);
  return {Space::Q, &mesh,
          -solve_checked(MQ, op.matrix * q.coeffs, "apply_tendency")};
}

}  // namespace mmadv
