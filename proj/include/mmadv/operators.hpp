#ifndef MMADV_OPERATORS_HPP
#define MMADV_OPERATORS_HPP

#include <string>

#include "mmadv/assembly.hpp"

namespace mmadv {

enum class OperatorKind { A, B, A_PG, B_PG, S, S_PG };

std::string to_string(OperatorKind k);
OperatorKind operator_kind_from_string(const std::string& s);

// Assembled global advection operator acting on Q_h coefficients
// (dense, dim_Q x dim_Q).
struct AdvectionOperator {
  OperatorKind kind;
  Eigen::MatrixXd matrix;
  double dt_used = 0.0;
};

AdvectionOperator build_A(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points = -1);
AdvectionOperator build_A_PG(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                             double dt, int quad_points = -1,
                             double tuning = 1.0);
AdvectionOperator build_B(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points = -1);
AdvectionOperator build_B_PG(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                             double dt, int quad_points = -1,
                             double tuning = 1.0);
AdvectionOperator build_S(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                          int quad_points = -1);
AdvectionOperator build_S_PG(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                             double dt, int quad_points = -1,
                             double tuning = 1.0);

AdvectionOperator build_operator(OperatorKind kind, const PeriodicMesh1D& mesh,
                                 const VelocityModel& vel, double dt,
                                 int quad_points = -1, double tuning = 1.0);

// F = (M_U or M_U^u)^-1 R q
Field solve_flux(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                 const Field& q,
                 const std::optional<DisplacementField>& shift = {},
                 int quad_points = -1);

// G = -M_U^-1 E^T M_Q q
Field solve_grad(const PeriodicMesh1D& mesh, const Field& q,
                 int quad_points = -1);

// Tendency dq/dt = -M_Q^-1 K q for a material-form operator comparison.
Field apply_tendency(const PeriodicMesh1D& mesh, const AdvectionOperator& op,
                     const Field& q, int quad_points = -1);

}  // namespace mmadv

#endif  // MMADV_OPERATORS_HPP
