/* hgpurify - entanglement purification of hypergraph states
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the hgpurify shared library. All functions return a status code;
 * results travel through out-parameters. Strings returned through `char**`
 * are heap-allocated and must be released with hgp_string_free().
 */
#ifndef HGPURIFY_H
#define HGPURIFY_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hgp_status {
  HGP_OK = 0,
  HGP_INVALID_ARGUMENT = 1,
  HGP_PARSE_ERROR = 2,
  HGP_NUMERIC_ERROR = 3,
  HGP_INTERNAL_ERROR = 4
} hgp_status;

/* Message describing the last failure on this thread; empty string if none. */
const char* hgp_last_error(void);

void hgp_string_free(char* s);

/* --- hypergraphs ------------------------------------------------------- */

typedef struct hgp_hypergraph hgp_hypergraph;

/* Text format: "n; {v,..},{v,..}", e.g. "3; {1,2,3},{3}". */
hgp_status hgp_hypergraph_parse(const char* text, hgp_hypergraph** out);
hgp_status hgp_hypergraph_format(const hgp_hypergraph* h, char** out);
void hgp_hypergraph_free(hgp_hypergraph* h);

hgp_status hgp_hypergraph_n_vertices(const hgp_hypergraph* h, int* out);
/* Local gate rewrites; `out` is a fresh handle. */
hgp_status hgp_hypergraph_apply_z(const hgp_hypergraph* h, int v, hgp_hypergraph** out);
hgp_status hgp_hypergraph_apply_x(const hgp_hypergraph* h, int v, hgp_hypergraph** out);
hgp_status hgp_hypergraph_apply_cnot(const hgp_hypergraph* h, int control, int target, hgp_hypergraph** out);
hgp_status hgp_hypergraph_reduce(const hgp_hypergraph* h, int v1, int v2, hgp_hypergraph** out);

/* --- states ------------------------------------------------------------ */

typedef struct hgp_state hgp_state;

/* |H_0><H_0| of the given target hypergraph. */
hgp_status hgp_state_pure(const hgp_hypergraph* target, hgp_state** out);
/* kind: "white", "dephasing", "depolarizing"; p = 1 is the identity. */
hgp_status hgp_state_apply_noise(const hgp_state* s, const char* kind, double p, hgp_state** out);
hgp_status hgp_state_fidelity(const hgp_state* s, double* out);
/* JSON {n, edges, trace, fidelity, c_matrix: [[re,im],...]}. */
hgp_status hgp_state_snapshot_json(const hgp_state* s, char** out);
/* One purification sub-protocol (keep branch) on two copies of `s`. */
hgp_status hgp_state_subprotocol(const hgp_state* s, const char* coloring, char color, hgp_state** out_state,
                                 double* out_p_pattern, double* out_p_keep);
void hgp_state_free(hgp_state* s);

/* --- experiments -------------------------------------------------------- */

/* Runs one JSON experiment config (commands run, threshold, search,
 * adaptive, yield, recycle_compare). `out_filename` suggests an output file
 * name; `out_content` is the document. `has_seed` != 0 makes `seed` override
 * the config's seed. */
hgp_status hgp_run_experiment(const char* config_json, uint64_t seed, int has_seed, int workers,
                              char** out_filename, char** out_content);

/* Cross-checks the graphical rules and protocol maps against the dense
 * simulator; mismatch counts land in the out-parameters. */
hgp_status hgp_verify(uint64_t seed, int* out_mismatches, char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* HGPURIFY_H */
