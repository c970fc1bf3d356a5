/* C interface to the mixed mimetic spectral element advection library.
 *
 * All functions return an mmadv_status; out-parameters are only written on
 * MMADV_OK. mmadv_last_error() describes the most recent failure on the
 * calling thread. Handles are opaque and must be released with the matching
 * _destroy call.
 */
#ifndef MMADV_MMADV_H
#define MMADV_MMADV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MMADV_OK = 0,
  MMADV_ERR_INVALID_ARGUMENT = 1,
  MMADV_ERR_NUMERIC = 2,
  MMADV_ERR_IO = 3
} mmadv_status;

const char* mmadv_last_error(void);

/* ---- canonical-element basis ---- */

typedef struct mmadv_basis mmadv_basis;

mmadv_status mmadv_basis_create(int degree, mmadv_basis** out);
void mmadv_basis_destroy(mmadv_basis* basis);
int mmadv_basis_degree(const mmadv_basis* basis);
/* nodes: caller-provided array of degree+1 doubles */
mmadv_status mmadv_basis_nodes(const mmadv_basis* basis, double* nodes);
mmadv_status mmadv_basis_eval_nodal(const mmadv_basis* basis, int i, double xi,
                                    double* out);
mmadv_status mmadv_basis_eval_edge(const mmadv_basis* basis, int i, double xi,
                                   double* out);

/* ---- 1D periodic mesh and advection operators ---- */

typedef struct mmadv_mesh mmadv_mesh;

mmadv_status mmadv_mesh_create(int n_elements, double length, int degree,
                               mmadv_mesh** out);
void mmadv_mesh_destroy(mmadv_mesh* mesh);
int mmadv_mesh_dim_u(const mmadv_mesh* mesh);
int mmadv_mesh_dim_q(const mmadv_mesh* mesh);

typedef struct mmadv_operator mmadv_operator;

/* kind: "A", "B", "A_PG", "B_PG", "S", "S_PG"; constant velocity u;
 * dt is the upwinding time step for the _PG kinds (ignored otherwise). */
mmadv_status mmadv_operator_build(const mmadv_mesh* mesh, const char* kind,
                                  double u, double dt, mmadv_operator** out);
void mmadv_operator_destroy(mmadv_operator* op);
int mmadv_operator_dim(const mmadv_operator* op);
/* y = K q; q and y are dim_q-length arrays */
mmadv_status mmadv_operator_apply(const mmadv_operator* op, const double* q,
                                  double* y);
/* row-major dense copy into a dim*dim array */
mmadv_status mmadv_operator_dense(const mmadv_operator* op, double* out);

/* Project f sampled on a fine uniform grid (values, count) onto Q_h and
 * return the DOFs (dim_q-length out). Piecewise-linear in between samples. */
mmadv_status mmadv_mesh_project_q(const mmadv_mesh* mesh, const double* values,
                                  int count, double* out);
mmadv_status mmadv_mesh_diagnostics(const mmadv_mesh* mesh, const double* q,
                                    double* mass, double* energy,
                                    double* total_variation);

/* ---- experiment harness ---- */

typedef struct mmadv_config mmadv_config;

mmadv_config* mmadv_config_create(void);
void mmadv_config_destroy(mmadv_config* config);
mmadv_status mmadv_config_set(mmadv_config* config, const char* key,
                              const char* value);

/* name: converge-flux | converge-material | advect1d | dispersion |
 * stability | advect2d. Writes CSVs, plot scripts and manifest.json under
 * out_dir (created if missing). */
mmadv_status mmadv_run_experiment(const char* name, const mmadv_config* config,
                                  const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* MMADV_MMADV_H */
