#ifndef NAVIER_NORMS_H
#define NAVIER_NORMS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NN_API __declspec(dllexport)
#else
#define NN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nn_status {
    NN_OK = 0,
    NN_INVALID_ARGUMENT = 1,
    NN_OUT_OF_RANGE = 2,
    NN_DEGENERATE = 3,
    NN_NO_BRANCH = 4,
    NN_POLE = 5,
    NN_ALPHA_OUT_OF_RANGE = 6,
    NN_UNDEFINED_ARITHMETIC = 7,
    NN_NON_INTEGRABLE = 8,
    NN_EXPONENT_INADMISSIBLE = 9,
    NN_HYPOTHESIS_FAILED = 10,
    NN_NO_CONVERGENCE = 11,
    NN_GRID_MISMATCH = 12,
    NN_MISSING_SAMPLES = 13,
    NN_NON_FINITE = 14,
    NN_SINGULARITY_AT_ENDPOINT = 15,
    NN_BRANCH_DISAGREEMENT = 16,
    NN_PARSE = 17,
    NN_IO = 18,
    NN_INTERNAL = 99
} nn_status;

typedef enum nn_verdict {
    NN_VERDICT_ON_THEOREM1 = 0,
    NN_VERDICT_ON_COROLLARY = 1,
    NN_VERDICT_OFF_CURVE = 2,
    NN_VERDICT_INADMISSIBLE = 3
} nn_verdict;

NN_API const char* nn_version(void);
NN_API const char* nn_status_name(nn_status status);
/* Message of the last failed call on this thread; "" after a success. */
NN_API const char* nn_last_error(void);

/* Exact rationals travel as strings: "a/b", integers, exact decimals, "inf". */
NN_API nn_status nn_rational_compare(const char* a, const char* b, int* sign);

/* ---- exponent curves ------------------------------------------------------
 * Curve names: "k0", "k1", "k2" (main estimate), "grad2", "grad1", "velocity". */
typedef struct nn_curve_table nn_curve_table;

NN_API nn_status nn_curve_sample(const char* curve, const char* r_min, const char* r_max, int samples,
                                 nn_curve_table** out);
NN_API size_t nn_curve_table_size(const nn_curve_table* table);
NN_API size_t nn_curve_table_admissible(const nn_curve_table* table);
NN_API nn_status nn_curve_table_write_csv(const nn_curve_table* table, const char* path);
NN_API nn_status nn_curve_table_write_json(const nn_curve_table* table, const char* path);
NN_API void nn_curve_table_free(nn_curve_table* table);

/* Writes r~ ("" when undefined) into buf. */
NN_API nn_status nn_curve_eval(const char* curve, const char* r, char* buf, size_t cap, int* admissible);
NN_API nn_status nn_classify_pair(int k, const char* r, const char* r_tilde, nn_verdict* verdict, char* text,
                                  size_t cap);

/* ---- Bihari-LaSalle batches ---------------------------------------------- */
typedef struct nn_bihari_config nn_bihari_config;
typedef struct nn_bihari_report nn_bihari_report;

NN_API nn_status nn_bihari_config_default(nn_bihari_config** out);
NN_API nn_status nn_bihari_config_parse(const char* text, nn_bihari_config** out);
NN_API nn_status nn_bihari_config_set_seed(nn_bihari_config* config, uint64_t seed);
NN_API uint64_t nn_bihari_config_seed(const nn_bihari_config* config);
/* Canonical text; parsing it gives back the same configuration. Owned by the handle. */
NN_API const char* nn_bihari_config_text(const nn_bihari_config* config);
NN_API void nn_bihari_config_free(nn_bihari_config* config);

/* threads = 0 uses the default worker count. */
NN_API nn_status nn_bihari_run(const nn_bihari_config* config, unsigned threads, nn_bihari_report** out);
NN_API size_t nn_bihari_report_trials(const nn_bihari_report* report);
NN_API size_t nn_bihari_report_violations(const nn_bihari_report* report);
NN_API double nn_bihari_report_worst_violation(const nn_bihari_report* report);
NN_API nn_status nn_bihari_report_write_json(const nn_bihari_report* report, const char* path);
NN_API void nn_bihari_report_free(nn_bihari_report* report);

/* ---- Navier-Stokes runs --------------------------------------------------- */
typedef struct nn_sim_config nn_sim_config;
typedef struct nn_sim_result nn_sim_result;
typedef struct nn_trajectory nn_trajectory;

NN_API nn_status nn_sim_config_default(nn_sim_config** out);
NN_API nn_status nn_sim_config_parse(const char* text, nn_sim_config** out);
NN_API uint64_t nn_sim_config_seed(const nn_sim_config* config);
NN_API const char* nn_sim_config_text(const nn_sim_config* config);
NN_API void nn_sim_config_free(nn_sim_config* config);

/* NN_NON_FINITE on blow-up, with the failing step in nn_last_error(). */
NN_API nn_status nn_simulate(const nn_sim_config* config, nn_sim_result** out);
NN_API int nn_sim_result_steps(const nn_sim_result* result);
NN_API double nn_sim_result_max_divergence(const nn_sim_result* result);
NN_API double nn_sim_result_balance_residual(const nn_sim_result* result);
NN_API void nn_sim_result_leray_residuals(const nn_sim_result* result, double* velocity, double* dissipation);
NN_API int nn_sim_result_cfl_warnings(const nn_sim_result* result);
NN_API size_t nn_sim_result_snapshot_count(const nn_sim_result* result);
NN_API nn_status nn_sim_result_write_norms_csv(const nn_sim_result* result, const char* path);
NN_API nn_status nn_sim_result_write_energy_json(const nn_sim_result* result, const char* path);
NN_API nn_status nn_sim_result_write_summary_json(const nn_sim_result* result, const char* path);
NN_API nn_status nn_sim_result_write_snapshot(const nn_sim_result* result, size_t index, const char* path);
NN_API void nn_sim_result_free(nn_sim_result* result);

NN_API nn_status nn_trajectory_load_csv(const char* path, nn_trajectory** out);
NN_API double nn_trajectory_final_time(const nn_trajectory* traj);
/* r_tilde may be INFINITY. */
NN_API nn_status nn_trajectory_mixed_norm(const nn_trajectory* traj, int k, double r, double r_tilde, double* out);
NN_API nn_status nn_trajectory_weighted_integral(const nn_trajectory* traj, int k, double r, double theta, double T,
                                                 double* out);
NN_API void nn_trajectory_free(nn_trajectory* traj);

#ifdef __cplusplus
}
#endif

#endif
