#include "mmadv/timestep.hpp"

#include <cstdio>
#include <stdexcept>

namespace mmadv {

CenteredStepper::CenteredStepper(const Eigen::MatrixXd& M,
                                 const Eigen::MatrixXd& K, double dt)
    : rhs_(M - 0.5 * dt * K), lu_(M + 0.5 * dt * K) {
  // reject a singular system up front
  const Eigen::MatrixXd lhs = M + 0.5 * dt * K;
  const Eigen::VectorXd probe = Eigen::VectorXd::Ones(M.rows());
  const Eigen::VectorXd x = lu_.solve(probe);
  if (!((lhs * x - probe).norm() <= 1e-10 * probe.norm()))
    throw std::runtime_error("step_centered: singular system");
}

Eigen::VectorXd CenteredStepper::step(const Eigen::VectorXd& q) const {
  return lu_.solve(rhs_ * q);
}

Eigen::VectorXd step_centered(const Eigen::MatrixXd& M,
                              const Eigen::MatrixXd& K,
                              const Eigen::VectorXd& q, double dt) {
  return CenteredStepper(M, K, dt).step(q);
}

Eigen::VectorXd step_rk3(const TendencyFn& tendency, const Eigen::VectorXd& q,
                         double t, double dt) {
  const Eigen::VectorXd y0 = tendency(t, q);
  const Eigen::VectorXd q1 = q - dt * y0;
  const Eigen::VectorXd y1 = tendency(t + dt, q1);
  const Eigen::VectorXd q2 = q - dt / 4.0 * (y0 + y1);
  const Eigen::VectorXd y2 = tendency(t + dt / 2.0, q2);
  return q - dt / 6.0 * (y0 + y1 + 4.0 * y2);
}

RunResult run(const TimeLoopConfig& config, const AdvectionOperator& op,
              const Field& q0) {
  if (config.dt <= 0.0 || config.n_steps < 1)
    throw std::invalid_argument("run: dt must be > 0 and n_steps >= 1");
  const PeriodicMesh1D& mesh = *q0.mesh;
  const Eigen::MatrixXd MQ = mass_Q(mesh);

  Field q = q0;
  RunResult out;
  auto record = [&](int step) {
    const Diagnostics d = diagnostics(q);
    out.history.push_back(
        {step, step * config.dt, d.mass, d.energy, d.total_variation});
  };
  record(0);

  if (config.scheme == Scheme::Centered) {
    CenteredStepper stepper(MQ, op.matrix, config.dt);
    for (int s = 1; s <= config.n_steps; ++s) {
      q.coeffs = stepper.step(q.coeffs);
      if (s % config.record_every == 0 || s == config.n_steps) record(s);
    }
  } else {
    // dq/dt = -M_Q^-1 K q with a steady operator
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(MQ);
    TendencyFn tendency = [&](double, const Eigen::VectorXd& v) {
      return Eigen::VectorXd(lu.solve(op.matrix * v));
    };
    for (int s = 1; s <= config.n_steps; ++s) {
      q.coeffs = step_rk3(tendency, q.coeffs, (s - 1) * config.dt, config.dt);
      if (s % config.record_every == 0 || s == config.n_steps) record(s);
    }
  }
  out.final_state = std::move(q);
  return out;
}

void write_history_csv(const std::vector<HistoryEntry>& history,
                       const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_history_csv: cannot open " + path);
  std::fprintf(f, "step,time,mass,energy,total_variation\n");
  for (const auto& h : history) {
    std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g\n", h.step, h.time, h.mass,
                 h.energy, h.total_variation);
  }
  std::fclose(f);
}

}  // namespace mmadv
