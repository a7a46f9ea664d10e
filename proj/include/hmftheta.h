/* C interface to the mod-p Hilbert modular form operator engine.
 *
 * All objects are opaque handles created and destroyed through this
 * interface.  Functions return HMF_OK on success; on failure the
 * thread-local message from hmf_last_error() describes the problem.
 * Strings returned through char** outputs are owned by the caller and
 * must be released with hmf_string_free().
 */
#ifndef HMFTHETA_H
#define HMFTHETA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HMF_OK = 0,
  HMF_E_CONFIG = 1,
  HMF_E_CONTEXT = 2,
  HMF_E_DIVISION = 3,
  HMF_E_WEIGHT = 4,
  HMF_E_MODEL_MISMATCH = 5,
  HMF_E_MODEL_INCONSISTENT = 6,
  HMF_E_NONDIVISIBLE = 7,
  HMF_E_NOT_IN_KERNEL = 8,
  HMF_E_NOT_A_UNIT = 9,
  HMF_E_TRUNCATION = 10,
  HMF_E_INTERNAL = 100,
} hmf_status;

typedef struct hmf_model hmf_model; /* shape + coefficient field + lattice */
typedef struct hmf_qexp hmf_qexp;   /* one weighted q-expansion */

/* Message for the most recent failure on this thread. */
const char* hmf_last_error(void);

void hmf_string_free(char* s);

/* json_text: {"shape": ..., "field": ..., "model": ...} */
hmf_status hmf_model_create(const char* json_text, hmf_model** out);
void hmf_model_destroy(hmf_model* m);

hmf_status hmf_qexp_parse(const hmf_model* m, const char* json_text,
                          hmf_qexp** out);
hmf_status hmf_qexp_to_json(const hmf_qexp* f, char** out_text);
void hmf_qexp_destroy(hmf_qexp* f);

/* op: "theta" (arg "P:i"), "v" or "v0" (arg prime id), "hasse" or "g"
 * (arg "P:i:j"), "frob" (arg ignored, may be NULL). */
hmf_status hmf_qexp_apply(const hmf_model* m, const hmf_qexp* f,
                          const char* op, const char* arg, hmf_qexp** out);

/* Weight-lattice commands against a bare shape config.
 * subcommand: cone-check | shift-theta | shift-frob | rho | lambda-index
 *             | hbasis | leq-hasse | ptwt0
 * args_json carries the inputs ("k", "l", "kp", "tau", "prime", "p",
 * "e", "f", "grid" as needed); shape_json may be NULL for ptwt0.
 * The report is a JSON object; numbers are decimal strings. */
hmf_status hmf_weights_run(const char* shape_json, const char* subcommand,
                           const char* args_json, char** out_report);

/* Identity-verification suites over a model.
 * identity: derivation | theta-commute | theta-v-zero | ppower | theta-p
 *           | kernel-image | unit-invariance | exactness
 * options_json: {"random": N, "seed": S} (both optional).
 * *out_failed is set to 0 if every check passed, 1 otherwise. */
hmf_status hmf_verify_run(const hmf_model* m, const char* identity,
                          const char* options_json, char** out_report,
                          int* out_failed);

#ifdef __cplusplus
}
#endif

#endif
