/* C API for the stiefel-geo shared library: closed-form extremal curves on
 * Stiefel and Grassmann manifolds over R, C, H, with the verification suites
 * that certify them.
 *
 * All functions return stgeo_status; on failure stgeo_last_error() carries a
 * thread-local message valid until the next failing call on the same thread.
 * Strings returned through char** out parameters are heap-allocated and must
 * be released with stgeo_string_free().
 */
#ifndef STIEFEL_GEO_H
#define STIEFEL_GEO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stgeo_status {
  STGEO_OK = 0,
  STGEO_ERROR_INVALID_ARGUMENT = 1,
  STGEO_ERROR_PARSE = 2,
  STGEO_ERROR_UNKNOWN_SUITE = 3,
  STGEO_ERROR_INTERNAL = 4
} stgeo_status;

/* Opaque parsed curve; thread-safe for concurrent const use. */
typedef struct stgeo_curve stgeo_curve;

const char* stgeo_version(void);
const char* stgeo_last_error(void);

/* Parse a curve spec:
 * {"family":"sr|stiefel|quasi|ambient", "dist":"reduced|orthogonal|quasigeodesic",
 *  "n":4, "k":2, "algebra":"real|complex|quaternion",
 *  "blocks":{"A":m,"B":m,"C":m,"D":m,"E":m,"F":m}, "basepoint":{"r":m,"s":m},
 *  "normalized":false}
 * where m is {"algebra":...,"rows":...,"cols":...,"data":[[...],...]} with
 * real entries as numbers, complex as [re,im], quaternions as [q0,q1,q2,q3].
 */
stgeo_status stgeo_curve_create(const char* spec_json, stgeo_curve** out_curve);
void stgeo_curve_destroy(stgeo_curve* curve);

/* Point shape: rows x cols entries, reals_per_entry real components each
 * (1 real, 2 complex, 4 quaternion). */
stgeo_status stgeo_curve_dims(const stgeo_curve* curve, int32_t* rows, int32_t* cols,
                              int32_t* reals_per_entry);

/* Writes rows*cols*reals_per_entry doubles, row-major with entry components
 * expanded in place; *residual (optional) receives ||M* M - I||. */
stgeo_status stgeo_curve_eval(const stgeo_curve* curve, double t, double* point,
                              double* residual);

/* {"t":..., "point":matrix, "velocity":matrix?, "residual":...} */
stgeo_status stgeo_curve_eval_json(const stgeo_curve* curve, double t, int32_t with_velocity,
                                   char** out_json);

/* Geodesic curvature of the unit-speed reparametrization. */
stgeo_status stgeo_curve_curvature(const stgeo_curve* curve, double t, double* out_kappa);

/* Projection to the Grassmannian: reflection matrix JSON plus {"k":k}. */
stgeo_status stgeo_curve_grassmann_json(const stgeo_curve* curve, double t, char** out_json);

/* Run one verification suite ("structure", "horizontality", "isometry",
 * "curvature", "euler-lagrange", "grassmann", "ode-oracle",
 * "quaternion-embed") or "all". trials = 0 and tol = 0 select per-check
 * defaults. *out_all_pass is 1 iff every check passed; a failing check is
 * reported data, not an API error. */
stgeo_status stgeo_verify(const char* suite, uint64_t seed, int32_t trials, double tol,
                          char** out_report_json, int32_t* out_all_pass);

/* Per-trial norms of seeded random tangents under the four metrics.
 * config_json: {"algebra":"real","n":4,"k":2} (all fields optional). */
stgeo_status stgeo_compare_metrics(const char* config_json, uint64_t seed, int32_t trials,
                                   char** out_table_json);

void stgeo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* STIEFEL_GEO_H */
