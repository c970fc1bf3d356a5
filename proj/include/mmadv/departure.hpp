#ifndef MMADV_DEPARTURE_HPP
#define MMADV_DEPARTURE_HPP

#include "mmadv/mesh_fields.hpp"

namespace mmadv {

enum class Direction { Downstream, Upstream };

// Characteristic displacement of a local coordinate over one time step,
// xi^d = xi +/- dt |J|^-1 u(x(xi)), using a single Euler step. The result
// may leave [-1,1]; displacements beyond |xi| = 2 are counted as a
// conditioning diagnostic.
class DisplacementField {
 public:
  DisplacementField(Direction direction, double dt, VelocityModel velocity,
                    double tuning = 1.0);

  double displace(const PeriodicMesh1D& mesh, int element, double xi) const;

  Direction direction() const { return direction_; }
  double dt() const { return dt_; }
  const VelocityModel& velocity() const { return velocity_; }
  long warnings() const { return warnings_; }

 private:
  Direction direction_;
  double dt_;
  VelocityModel velocity_;
  double tuning_;
  mutable long warnings_ = 0;
};

}  // namespace mmadv

#endif  // MMADV_DEPARTURE_HPP
