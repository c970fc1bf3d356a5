#ifndef MMADV_TIMESTEP_HPP
#define MMADV_TIMESTEP_HPP

#include <functional>
#include <vector>

#include "mmadv/operators.hpp"

namespace mmadv {

// One step of the trapezoidal (centered) scheme:
// q^{n+1} = (M + dt/2 K)^-1 (M - dt/2 K) q^n.
// Precomputes both factor matrices once for a whole run.
class CenteredStepper {
 public:
  CenteredStepper(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K,
                  double dt);
  Eigen::VectorXd step(const Eigen::VectorXd& q) const;

 private:
  Eigen::MatrixXd rhs_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

Eigen::VectorXd step_centered(const Eigen::MatrixXd& M,
                              const Eigen::MatrixXd& K,
                              const Eigen::VectorXd& q, double dt);

// Explicit third-order Runge-Kutta update. `tendency(t, q)` returns
// y(u(t), q), the M_Q^-1-premultiplied advection term, so the update is
// q <- q - dt * (combination of stages) with velocities sampled at
// t, t+dt and t+dt/2.
using TendencyFn =
    std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& q)>;

Eigen::VectorXd step_rk3(const TendencyFn& tendency, const Eigen::VectorXd& q,
                         double t, double dt);

enum class Scheme { Centered, Rk3 };

struct TimeLoopConfig {
  double dt = 0.0;
  int n_steps = 0;
  Scheme scheme = Scheme::Centered;
  int record_every = 1;
};

struct HistoryEntry {
  int step;
  double time;
  double mass;
  double energy;
  double total_variation;
};

struct RunResult {
  std::vector<HistoryEntry> history;
  Field final_state;
};

// Time loop over an assembled 1D operator, recording diagnostics.
RunResult run(const TimeLoopConfig& config, const AdvectionOperator& op,
              const Field& q0);

void write_history_csv(const std::vector<HistoryEntry>& history,
                       const std::string& path);

}  // namespace mmadv

#endif  // MMADV_TIMESTEP_HPP
