/* Copyright 2026 The stin developers
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

/* C interface to the stin library. Inputs and results cross the boundary as
 * JSON text; problem instances and atom layouts travel as opaque handles.
 * Every function returns 0 on success or one of the STIN_E_* codes, with a
 * human-readable message left in stin_last_error() for the calling thread.
 * Strings the library hands out are owned by the caller and released with
 * stin_string_free().
 */

#ifndef STIN_H
#define STIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    STIN_OK = 0,
    STIN_E_PARSE = 1,      /* malformed input text */
    STIN_E_SCHEMA = 2,     /* well-formed but off-schema */
    STIN_E_INVALID = 3,    /* bad argument values */
    STIN_E_CONTRACT = 4,   /* precondition violated */
    STIN_E_SIZE_LIMIT = 5, /* documented size bound exceeded */
    STIN_E_INFEASIBLE = 6, /* no solution under the given resources */
    STIN_E_NUMERIC = 7,    /* integration or optimization failure */
    STIN_E_IO = 8,         /* filesystem trouble */
    STIN_E_INTERNAL = 9
};

typedef struct stin_instance stin_instance; /* ssp | gsp | sap problem */
typedef struct stin_layout stin_layout;     /* atom coordinates in the hardware frame */

const char* stin_version(void);

/* Message for the most recent failure on this thread; "" when none. The
 * pointer stays valid until the next library call on the same thread. */
const char* stin_last_error(void);

void stin_string_free(char* s);

/* ---------- problem instances ---------- */

int stin_instance_parse(const char* json_text, stin_instance** out);
int stin_instance_read(const char* path, stin_instance** out);
int stin_instance_to_json(const stin_instance* inst, char** out_json);
/* "ssp", "gsp", or "sap". */
int stin_instance_kind(const stin_instance* inst, char** out_kind);
void stin_instance_free(stin_instance* inst);

/* ---------- solvers ---------- */

/* Dispatches on the instance kind. Methods: ssp accepts "exact", "greedy",
 * "bruteforce"; gsp accepts "flow", "bruteforce"; sap accepts "exact",
 * "dsatur". NULL or "" picks the kind's default ("exact", "flow", "exact").
 * budget_s caps the ssp exact search; <= 0 means unbounded. The result
 * report is returned as JSON. */
int stin_solve(const stin_instance* inst, const char* method, double budget_s,
               char** out_json);

/* ---------- layouts and embedding ---------- */

int stin_layout_parse(const char* json_text, stin_layout** out);
int stin_layout_read(const char* path, stin_layout** out);
int stin_layout_to_json(const stin_layout* l, char** out_json);
void stin_layout_free(stin_layout* l);

/* Trains a hardware-feasible layout for a selection instance. config_json
 * may carry {"geometry": {...}} overrides; NULL or "" keeps defaults.
 * On success *out_layout holds the trained coordinates and *out_report_json
 * the run report (violations, adjacency gap, loss trace summary). */
int stin_embed(const stin_instance* ssp, uint64_t seed, const char* config_json,
               stin_layout** out_layout, char** out_report_json);

/* Checks a layout against an instance and the hardware frame; the report
 * lists violations and the unit-disk verdict. */
int stin_validate_layout(const stin_instance* ssp, const stin_layout* l,
                         char** out_json);

/* ---------- pulses and simulation ---------- */

/* Annealing schedule for a selection instance mapped at blockade radius
 * r_b_um. config_json may carry {"physics": {...}}. */
int stin_build_schedule(const stin_instance* ssp, double r_b_um,
                        const char* config_json, char** out_json);

/* Full annealing run: schedule synthesis, state-vector evolution, sampling,
 * then shot refinement and bootstrap resampling. Returns one JSON object
 * with "qaa", "refinement", and "bootstrap_objectives" sections. */
int stin_simulate(const stin_instance* ssp, const stin_layout* l, int shots,
                  uint64_t seed, const char* config_json, char** out_json);

/* ---------- instance generation ---------- */

/* Writes coupled instance triples under out_dir and returns a summary with
 * the generated ids. request_json selects the mode:
 *   {"mode": "synth", "seed": 1, "count": 10, "n_min": 4, "n_max": 12}
 *   {"mode": "orbital", "tle": "sats.tle", "sites": "sites.csv",
 *    "region": "region.json", "duration_s": 5400, "step_s": 60, ...}
 * Optional orbital keys: id, t0_s, half_angle_deg, overlap_threshold,
 * min_elevation_deg, num_bands, mc_samples. */
int stin_generate(const char* request_json, const char* out_dir, char** out_json);

/* ---------- pipeline and benchmarking ---------- */

/* Runs selection -> gateway assignment -> band assignment on the triple
 * stored under dir as <id>.{ssp,gsp,sap,topo}.json. solver is "qaa",
 * "exact", or "greedy". The report JSON carries every stage artifact. */
int stin_run_pipeline(const char* dir, const char* id, const char* solver,
                      uint64_t seed, const char* config_json, char** out_json);

/* Three-arm comparison over a stored suite. ids_json is a JSON array of
 * triple ids; NULL or "" scans dir for *.topo.json. The result object holds
 * "summary", "csv", "m_hist_csv", and "bands_hist_csv". */
int stin_bench(const char* dir, const char* ids_json, uint64_t seed,
               const char* config_json, char** out_json);

/* ---------- metrics ---------- */

/* (a - b) / b; fails unless b > 0. */
int stin_relative_improvement(double a, double b, double* out);

/* Jensen-Shannon divergence in nats between two length-len distributions
 * over the same support; each must sum to 1 within 1e-9. */
int stin_js_divergence(const double* p, const double* q, size_t len, double* out);

/* ---------- orbital utilities ---------- */

/* Parses two-line element text into a JSON array of records. */
int stin_tle_to_json(const char* tle_text, char** out_json);

/* Ground track of record `index` in the TLE text, sampled every step_s
 * seconds over [t0_s, t1_s] past epoch. */
int stin_ground_track(const char* tle_text, int index, double t0_s, double t1_s,
                      double step_s, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* STIN_H */
