#include "mmadv/mmadv.h"

#include <cstring>
#include <string>

#include "mmadv/experiments.hpp"

namespace {

thread_local std::string g_last_error;

mmadv_status fail(mmadv_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
mmadv_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(MMADV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(MMADV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(MMADV_ERR_NUMERIC, e.what());
  }
}

}  // namespace

struct mmadv_basis {
  mmadv::NodalEdgeBasis basis;
};

struct mmadv_mesh {
  mmadv::PeriodicMesh1D mesh;
};

struct mmadv_operator {
  mmadv::AdvectionOperator op;
};

struct mmadv_config {
  mmadv::ConfigMap map;
};

extern "C" {

const char* mmadv_last_error(void) { return g_last_error.c_str(); }

mmadv_status mmadv_basis_create(int degree, mmadv_basis** out) {
  if (!out) return fail(MMADV_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new mmadv_basis{mmadv::NodalEdgeBasis(degree)};
    return MMADV_OK;
  });
}

void mmadv_basis_destroy(mmadv_basis* basis) { delete basis; }

int mmadv_basis_degree(const mmadv_basis* basis) {
  return basis ? basis->basis.degree() : -1;
}

mmadv_status mmadv_basis_nodes(const mmadv_basis* basis, double* nodes) {
  if (!basis || !nodes) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  const Eigen::VectorXd& n = basis->basis.nodes();
  std::memcpy(nodes, n.data(), sizeof(double) * n.size());
  return MMADV_OK;
}

mmadv_status mmadv_basis_eval_nodal(const mmadv_basis* basis, int i, double xi,
                                    double* out) {
  if (!basis || !out) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = basis->basis.eval_nodal(i, xi);
    return MMADV_OK;
  });
}

mmadv_status mmadv_basis_eval_edge(const mmadv_basis* basis, int i, double xi,
                                   double* out) {
  if (!basis || !out) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = basis->basis.eval_edge(i, xi);
    return MMADV_OK;
  });
}

mmadv_status mmadv_mesh_create(int n_elements, double length, int degree,
                               mmadv_mesh** out) {
  if (!out) return fail(MMADV_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = new mmadv_mesh{mmadv::PeriodicMesh1D(n_elements, length, degree)};
    return MMADV_OK;
  });
}

void mmadv_mesh_destroy(mmadv_mesh* mesh) { delete mesh; }

int mmadv_mesh_dim_u(const mmadv_mesh* mesh) {
  return mesh ? mesh->mesh.dim_U() : -1;
}

int mmadv_mesh_dim_q(const mmadv_mesh* mesh) {
  return mesh ? mesh->mesh.dim_Q() : -1;
}

mmadv_status mmadv_operator_build(const mmadv_mesh* mesh, const char* kind,
                                  double u, double dt, mmadv_operator** out) {
  if (!mesh || !kind || !out)
    return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const mmadv::VelocityModel vel =
        mmadv::VelocityModel::analytic([u](double) { return u; });
    *out = new mmadv_operator{mmadv::build_operator(
        mmadv::operator_kind_from_string(kind), mesh->mesh, vel, dt)};
    return MMADV_OK;
  });
}

void mmadv_operator_destroy(mmadv_operator* op) { delete op; }

int mmadv_operator_dim(const mmadv_operator* op) {
  return op ? static_cast<int>(op->op.matrix.rows()) : -1;
}

mmadv_status mmadv_operator_apply(const mmadv_operator* op, const double* q,
                                  double* y) {
  if (!op || !q || !y) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  const Eigen::Index n = op->op.matrix.rows();
  Eigen::Map<const Eigen::VectorXd> qv(q, n);
  Eigen::Map<Eigen::VectorXd>(y, n) = op->op.matrix * qv;
  return MMADV_OK;
}

mmadv_status mmadv_operator_dense(const mmadv_operator* op, double* out) {
  if (!op || !out) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  const Eigen::Index n = op->op.matrix.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out[i * n + j] = op->op.matrix(i, j);
  return MMADV_OK;
}

mmadv_status mmadv_mesh_project_q(const mmadv_mesh* mesh, const double* values,
                                  int count, double* out) {
  if (!mesh || !values || !out || count < 2)
    return fail(MMADV_ERR_INVALID_ARGUMENT, "bad projection input");
  return guarded([&] {
    const double L = mesh->mesh.length();
    auto f = [&](double x) {
      // periodic piecewise-linear interpolation of the samples
      const double s = x / L * count;
      const int i0 = static_cast<int>(s) % count;
      const double a = s - static_cast<int>(s);
      return (1.0 - a) * values[i0] + a * values[(i0 + 1) % count];
    };
    const mmadv::Field q = mmadv::project_to_Q(mesh->mesh, f);
    std::memcpy(out, q.coeffs.data(), sizeof(double) * q.coeffs.size());
    return MMADV_OK;
  });
}

mmadv_status mmadv_mesh_diagnostics(const mmadv_mesh* mesh, const double* q,
                                    double* mass, double* energy,
                                    double* total_variation) {
  if (!mesh || !q) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    mmadv::Field field{mmadv::Space::Q, &mesh->mesh,
                       Eigen::Map<const Eigen::VectorXd>(q, mesh->mesh.dim_Q())};
    const mmadv::Diagnostics d = mmadv::diagnostics(field);
    if (mass) *mass = d.mass;
    if (energy) *energy = d.energy;
    if (total_variation) *total_variation = d.total_variation;
    return MMADV_OK;
  });
}

mmadv_config* mmadv_config_create(void) { return new mmadv_config; }

void mmadv_config_destroy(mmadv_config* config) { delete config; }

mmadv_status mmadv_config_set(mmadv_config* config, const char* key,
                              const char* value) {
  if (!config || !key || !value)
    return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  config->map[key] = value;
  return MMADV_OK;
}

mmadv_status mmadv_run_experiment(const char* name, const mmadv_config* config,
                                  const char* out_dir) {
  if (!name || !out_dir) return fail(MMADV_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    mmadv::run_experiment(name, config ? config->map : mmadv::ConfigMap{},
                          out_dir);
    return MMADV_OK;
  });
}

}  // extern "C"
