#ifndef CHEMOSTAB_H
#define CHEMOSTAB_H

/* C interface to libchemostab. Every function returns a cs_status; on
 * failure the message (and, for parse errors, the position) is kept per
 * thread and can be read with cs_last_error_*. Strings handed out through
 * char** parameters are owned by the caller and released with
 * cs_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#define CS_API __declspec(dllexport)
#else
#define CS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
    CS_OK = 0,
    CS_ERR_INVALID_ARGUMENT = 1,
    CS_ERR_PARSE = 2,
    CS_ERR_VALIDATION = 3,
    CS_ERR_STEADY_STATE = 4,
    CS_ERR_PRECONDITION = 5,
    CS_ERR_TIME_STEP = 6,
    CS_ERR_DIMENSION = 7,
    CS_ERR_NUMERICAL = 8,
    CS_ERR_IO = 9,
    CS_ERR_INTERNAL = 10
} cs_status;

typedef enum cs_threshold_status {
    CS_THRESHOLD_NONE = 0,
    CS_THRESHOLD_FOUND = 1,
    CS_THRESHOLD_UNSTABLE_AT_MINIMUM = 2
} cs_threshold_status;

typedef struct cs_model cs_model;
typedef struct cs_steady_state cs_steady_state;
typedef struct cs_report cs_report;
typedef struct cs_trajectory cs_trajectory;

typedef struct cs_pin {
    size_t species;
    double value;
} cs_pin;

typedef struct cs_threshold {
    cs_threshold_status status;
    double value;
} cs_threshold;

typedef struct cs_trimolecular {
    double det;
    double C;
    double slope;
    double K0;
    double b2, b1, b0;
} cs_trimolecular;

typedef struct cs_sim_options {
    size_t n;            /* cells, >= 8 */
    double dt;
    double t_end;
    size_t sample_every; /* steps between samples */
    double amplitude;    /* cosine perturbation added to u */
    int mode;            /* perturbed and tracked mode, >= 1 */
    int keep_snapshots;
} cs_sim_options;

CS_API const char* cs_version(void);
CS_API const char* cs_status_name(cs_status status);

CS_API const char* cs_last_error_message(void);
/* 0 when the last error carried no position. */
CS_API int cs_last_error_line(void);
CS_API int cs_last_error_column(void);
/* Maximal admissible dt of the last CS_ERR_TIME_STEP, 0 otherwise. */
CS_API double cs_last_error_dt_bound(void);

CS_API void cs_string_free(char* s);

/* model */
CS_API cs_status cs_model_load(const char* path, cs_model** out);
CS_API cs_status cs_model_parse(const char* text, const char* base_dir, cs_model** out);
CS_API void cs_model_free(cs_model* m);
CS_API cs_status cs_model_species_count(const cs_model* m, size_t* out);
CS_API cs_status cs_model_reaction_count(const cs_model* m, size_t* out);
/* Pointer valid while the model lives. */
CS_API cs_status cs_model_species_name(const cs_model* m, size_t index, const char** out);
CS_API cs_status cs_model_species_index(const cs_model* m, const char* name, size_t* out);
CS_API cs_status cs_model_chemoattractant(const cs_model* m, size_t* out);
CS_API cs_status cs_model_get_chi(const cs_model* m, double* out);
CS_API cs_status cs_model_set_chi(cs_model* m, double chi);
CS_API cs_status cs_model_get_alpha(const cs_model* m, size_t species, double* out);
/* Rejects values that leave alpha without a positive entry. */
CS_API cs_status cs_model_set_alpha(cs_model* m, size_t species, double value);
CS_API cs_status cs_model_is_linear(const cs_model* m, int* out);
/* Row-major N x N matrix A with g(v) = -A v; CS_ERR_PRECONDITION for
 * nonlinear networks. */
CS_API cs_status cs_model_linear_part(const cs_model* m, double* A, size_t len, int* is_m_matrix);
/* JSON: species, reactions, linearity, linear part. */
CS_API cs_status cs_model_describe(const cs_model* m, char** json);
CS_API cs_status cs_model_crn(const cs_model* m, char** text);
/* k-th Neumann eigenvalue of the model's domain (k = 0 gives 0). */
CS_API cs_status cs_model_neumann_mu(const cs_model* m, size_t k, double* mu, int* i, int* j);

/* steady states */
CS_API cs_status cs_steady_state_solve(const cs_model* m, double u_star, const cs_pin* pins, size_t pin_count,
                                       cs_steady_state** out);
CS_API void cs_steady_state_free(cs_steady_state* ss);
CS_API cs_status cs_steady_state_u_star(const cs_steady_state* ss, double* out);
CS_API cs_status cs_steady_state_v(const cs_steady_state* ss, double* v, size_t len);
CS_API cs_status cs_steady_state_residual(const cs_steady_state* ss, double* out);
CS_API cs_status cs_steady_state_iterations(const cs_steady_state* ss, int* out);

/* spectra and thresholds */
CS_API cs_status cs_mode_max_re(const cs_model* m, const cs_steady_state* ss, double mu, double* out);
CS_API cs_status cs_critical_chi(const cs_model* m, const cs_steady_state* ss, double mu, cs_threshold* out);
CS_API cs_status cs_critical_alpha(const cs_model* m, double u_star, const cs_pin* pins, size_t pin_count, double mu,
                                   size_t species, cs_threshold* out);
CS_API cs_status cs_model_is_trimolecular(const cs_model* m, int* out);
CS_API cs_status cs_trimolecular_determinant(const cs_model* m, const cs_steady_state* ss, double mu, double K,
                                             cs_trimolecular* out);

/* stability reports */
CS_API cs_status cs_analyze(const cs_model* m, const cs_steady_state* ss, size_t mode_count,
                            int include_homogeneous_mode, cs_report** out);
CS_API void cs_report_free(cs_report* r);
CS_API cs_status cs_report_unstable(const cs_report* r, int* out);
CS_API cs_status cs_report_marginal(const cs_report* r, int* out);
CS_API cs_status cs_report_max_re(const cs_report* r, double* out);
CS_API cs_status cs_report_dominant(const cs_report* r, int* i, int* j, double* mu);
CS_API cs_status cs_report_mode_count(const cs_report* r, size_t* out);
CS_API cs_status cs_report_mode(const cs_report* r, size_t k, double* mu, double* max_re, double* abs_im);
/* which = 1 or 2 selects the sufficient condition. */
CS_API cs_status cs_report_condition(const cs_report* r, int which, int* applicable);
CS_API cs_status cs_report_tail(const cs_report* r, int* certified, double* cutoff_mu);
CS_API cs_status cs_report_to_json(const cs_report* r, char** out);
CS_API cs_status cs_report_to_csv(const cs_report* r, char** out);

/* simulation */
CS_API cs_status cs_max_stable_dt(const cs_model* m, size_t n, double* out);
/* A diverged run is CS_OK; query cs_trajectory_diverged. */
CS_API cs_status cs_simulate(const cs_model* m, const cs_steady_state* ss, const cs_sim_options* options,
                             cs_trajectory** out);
CS_API void cs_trajectory_free(cs_trajectory* t);
CS_API cs_status cs_trajectory_diverged(const cs_trajectory* t, int* diverged, double* at);
CS_API cs_status cs_trajectory_sample_count(const cs_trajectory* t, size_t* out);
CS_API cs_status cs_trajectory_sample(const cs_trajectory* t, size_t k, double* time, double* mass,
                                      double* amplitude, double* max_deviation);
CS_API cs_status cs_trajectory_min_u(const cs_trajectory* t, double* out);
CS_API cs_status cs_trajectory_growth_rate(const cs_trajectory* t, double t0, double t1, double* out);
CS_API cs_status cs_trajectory_to_csv(const cs_trajectory* t, char** out);
CS_API cs_status cs_trajectory_write_snapshots(const cs_trajectory* t, const char* path);

/* Hausdorff distance between the discretized operator spectrum and the
 * union of mode spectra; n <= 128. */
CS_API cs_status cs_crosscheck(const cs_model* m, const cs_steady_state* ss, size_t n, double* distance);

#ifdef __cplusplus
}
#endif

#endif
