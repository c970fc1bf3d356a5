#ifndef MMADV_ASSEMBLY_HPP
#define MMADV_ASSEMBLY_HPP

#include <optional>
#include <string>

#include "mmadv/departure.hpp"
#include "mmadv/mesh_fields.hpp"

namespace mmadv {

// Incidence matrix E: n x n circulant with rows (-1 at j, +1 at j+1 mod n),
// mapping U_h DOFs to Q_h DOFs.
Eigen::MatrixXd incidence(const PeriodicMesh1D& mesh);

// Galerkin mass matrices. Nodal bases carry unit transformation, edge bases
// carry 1/|J|.
Eigen::MatrixXd mass_U(const PeriodicMesh1D& mesh, int quad_points = -1);
Eigen::MatrixXd mass_Q(const PeriodicMesh1D& mesh, int quad_points = -1);

// R_ik = <l_i^u . u, e_k>_Omega: test functions at shifted quadrature images
// when a displacement is given, trial edge functions at the original points.
Eigen::MatrixXd mixed_flux(const PeriodicMesh1D& mesh, const VelocityModel& vel,
                           const std::optional<DisplacementField>& shift = {},
                           int quad_points = -1);

// Nonsymmetric <l_i^u, l_j>_Omega with shifted test functions.
Eigen::MatrixXd mass_U_shifted(const PeriodicMesh1D& mesh,
                               const DisplacementField& shift,
                               int quad_points = -1);

// Plain-text triplet export, one "row,col,value" line per nonzero.
void export_triplets(const Eigen::MatrixXd& m, const std::string& path);

}  // namespace mmadv

#endif  // MMADV_ASSEMBLY_HPP
