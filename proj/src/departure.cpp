#include "mmadv/departure.hpp"

#include <cmath>
#include <cstdio>

namespace mmadv {

DisplacementField::DisplacementField(Direction direction, double dt,
                                     VelocityModel velocity, double tuning)
    : direction_(direction),
      dt_(dt),
      velocity_(std::move(velocity)),
      tuning_(tuning) {}

double DisplacementField::displace(const PeriodicMesh1D& mesh, int element,
                                   double xi) const {
  const double sign = direction_ == Direction::Downstream ? 1.0 : -1.0;
  const double x = mesh.x_of(element, xi);
  const double d =
      xi + sign * tuning_ * dt_ * velocity_.eval(x) / mesh.jacobian();
  if (std::abs(d) > 2.0) {
    if (warnings_++ == 0) {
      std::fprintf(stderr,
                   "mmadv: warning: displaced coordinate |%g| > 2; "
                   "shifted mass matrices may be badly conditioned\n",
                   d);
    }
  }
  return d;
}

}  // namespace mmadv
