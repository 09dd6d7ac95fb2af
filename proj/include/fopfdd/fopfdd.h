/*
 * fopfdd - fractional diffusive delay modeling library.
 *
 * C interface over the C++ core: opaque handles, status codes, caller-owned
 * buffers.  Every function that can fail returns a fopfdd_status; on failure
 * fopfdd_last_error() carries a thread-local description of what went wrong.
 * Handles are released with their matching *_free function.
 */

#ifndef FOPFDD_H
#define FOPFDD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FOPFDD_API __declspec(dllexport)
#else
#define FOPFDD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fopfdd_status {
    FOPFDD_OK = 0,
    FOPFDD_ERR_INVALID_ARGUMENT = 1,
    FOPFDD_ERR_NON_CONVERGENT = 2,
    FOPFDD_ERR_CONFIG = 3,
    FOPFDD_ERR_SINGULAR_SYSTEM = 4,
    FOPFDD_ERR_NO_CROSSING = 5,
    FOPFDD_ERR_NOT_REACHED = 6,
    FOPFDD_ERR_CONTOUR_FAILURE = 7,
    FOPFDD_ERR_OPTIMIZER_STALL = 8,
    FOPFDD_ERR_GRID_MISMATCH = 9,
    FOPFDD_ERR_INTERNAL = 10
} fopfdd_status;

FOPFDD_API const char* fopfdd_version(void);

/* Thread-local message describing the most recent failure on this thread. */
FOPFDD_API const char* fopfdd_last_error(void);

/* ---------------------------------------------------------------- signals */

/* Samples on the uniform grid t_k = k * t_s, k = 1..size. */
typedef struct fopfdd_signal fopfdd_signal;

FOPFDD_API void fopfdd_signal_free(fopfdd_signal* signal);
FOPFDD_API size_t fopfdd_signal_size(const fopfdd_signal* signal);
FOPFDD_API double fopfdd_signal_ts(const fopfdd_signal* signal);

/* Copy times/values into caller buffers of at least fopfdd_signal_size slots. */
FOPFDD_API fopfdd_status fopfdd_signal_times(const fopfdd_signal* signal, double* out);
FOPFDD_API fopfdd_status fopfdd_signal_values(const fopfdd_signal* signal, double* out);

/* Trapezoidal integral / energy over (0, t_max], signal treated as 0 at t=0. */
FOPFDD_API fopfdd_status fopfdd_signal_area(const fopfdd_signal* signal, double* out);
FOPFDD_API fopfdd_status fopfdd_signal_energy(const fopfdd_signal* signal, double* out);

/* First time the signal reaches eta * (its final value). */
FOPFDD_API fopfdd_status fopfdd_signal_reach_time(const fopfdd_signal* signal, double eta,
                                                  double* out);

/* Mean squared difference over t in [0, t_eta] with t_eta from y_true. */
FOPFDD_API fopfdd_status fopfdd_step_error(const fopfdd_signal* y_true,
                                           const fopfdd_signal* y_model, double eta, double* out);

/* --------------------------------------------------------------- FDD term */

/* Zero-initialize or pass NULL for the defaults {200, 10, 1e-9, 200}. */
typedef struct fopfdd_series_options {
    int n_terms;
    double peak_threshold;
    double integer_tol;
    int precision_digits;
} fopfdd_series_options;

/* exp(-(L j w)^alpha) sampled on an omega array (entries >= 0). */
FOPFDD_API fopfdd_status fopfdd_fdd_frequency_response(double L, double alpha,
                                                       const double* omegas, size_t count,
                                                       double* out_re, double* out_im);

/* Truncated-series impulse response with the two post-filter passes. */
FOPFDD_API fopfdd_status fopfdd_fdd_impulse(double L, double alpha, double t_s, double t_max,
                                            const fopfdd_series_options* options,
                                            fopfdd_signal** out);

/* Same series at options->precision_digits significant digits (slow). */
FOPFDD_API fopfdd_status fopfdd_fdd_impulse_vpa(double L, double alpha, double t_s, double t_max,
                                                const fopfdd_series_options* options,
                                                fopfdd_signal** out);

/* Closed form for alpha = 1/2: inverse transform of exp(-sqrt(L) sqrt(s)). */
FOPFDD_API fopfdd_status fopfdd_fdd_impulse_exact_half(double L, double t_s, double t_max,
                                                       fopfdd_signal** out);

/* Adaptive quadrature of the impulse response over (0, inf); the unit-area
 * certificate of the truncation quality. */
FOPFDD_API fopfdd_status fopfdd_fdd_area_certificate(double L, double alpha,
                                                     const fopfdd_series_options* options,
                                                     double* out);

/* Same machinery for the energy integral of f^2. */
FOPFDD_API fopfdd_status fopfdd_fdd_energy_certificate(double L, double alpha,
                                                       const fopfdd_series_options* options,
                                                       double* out);

/* Parseval closed form of the energy. */
FOPFDD_API fopfdd_status fopfdd_fdd_energy_spectral(double L, double alpha, double* out);

/* Rigorous upper bound on the impulse-response amplitude. */
FOPFDD_API fopfdd_status fopfdd_fdd_peak_bound(double L, double alpha, double* out);

/* ----------------------------------------------------------------- models */

typedef enum fopfdd_family {
    FOPFDD_FAMILY_FOPDT = 0,  /* K e^{-Ls} / (tau s + 1)            */
    FOPFDD_FAMILY_FO2PDT = 1, /* K e^{-Ls} / (tau s^alpha + 1)      */
    FOPFDD_FAMILY_FOPFDD = 2  /* K e^{-(Ls)^alpha} / (tau s + 1)    */
} fopfdd_family;

typedef struct fopfdd_model {
    fopfdd_family family;
    double K;
    double tau;
    double L;
    double alpha; /* ignored for FOPFDD_FAMILY_FOPDT */
} fopfdd_model;

FOPFDD_API fopfdd_status fopfdd_model_frequency_response(const fopfdd_model* model,
                                                         const double* omegas, size_t count,
                                                         double* out_re, double* out_im);

FOPFDD_API fopfdd_status fopfdd_model_step(const fopfdd_model* model, double t_s, double t_max,
                                           fopfdd_signal** out);

/* ----------------------------------------------------------------- ladder */

typedef struct fopfdd_ladder fopfdd_ladder;

FOPFDD_API fopfdd_status fopfdd_ladder_create(const double* resistances,
                                              const double* capacitances, size_t n,
                                              fopfdd_ladder** out);
FOPFDD_API fopfdd_status fopfdd_ladder_create_uniform(size_t n, fopfdd_ladder** out);
FOPFDD_API void fopfdd_ladder_free(fopfdd_ladder* ladder);
FOPFDD_API size_t fopfdd_ladder_size(const fopfdd_ladder* ladder);

FOPFDD_API fopfdd_status fopfdd_ladder_frequency_response(const fopfdd_ladder* ladder,
                                                          const double* omegas, size_t count,
                                                          double* out_re, double* out_im);

/* Exact zero-order-hold unit-step response on t_k = k t_s. */
FOPFDD_API fopfdd_status fopfdd_ladder_step(const fopfdd_ladder* ladder, double t_s, double t_max,
                                            fopfdd_signal** out);

/* |G| = 2^{-1/2} crossing of the magnitude plot. */
FOPFDD_API fopfdd_status fopfdd_ladder_break_frequency(const fopfdd_ladder* ladder, double* out);

FOPFDD_API fopfdd_status fopfdd_ladder_dc_gain(const fopfdd_ladder* ladder, double* out);

/* Time for the unit step to first reach 90% of its final value. */
FOPFDD_API fopfdd_status fopfdd_ladder_t90(const fopfdd_ladder* ladder, double* out);

/* Eigenvalues of A_hat; both buffers take fopfdd_ladder_size entries. */
FOPFDD_API fopfdd_status fopfdd_ladder_poles(const fopfdd_ladder* ladder, double* out_re,
                                             double* out_im);

/* Row-major copies of the state-space matrices (n*n for E, A, A_hat; n for
 * B, C, B_hat).  Any output pointer may be NULL to skip that matrix. */
FOPFDD_API fopfdd_status fopfdd_ladder_matrices(const fopfdd_ladder* ladder, double* E, double* A,
                                                double* B, double* C, double* A_hat,
                                                double* B_hat);

/* ---------------------------------------------------------------- fitting */

/* Zero-initialize or pass NULL for the defaults
 * {seed 0, 8 restarts, 2000 iterations, 1e-10 tolerance, 21 weights}. */
typedef struct fopfdd_fit_options {
    uint64_t seed;
    int restarts;
    int max_iterations;
    double tolerance;
    int weight_count;
} fopfdd_fit_options;

typedef struct fopfdd_fit_result fopfdd_fit_result;

/* Fit a family to arbitrary frequency-response samples (strictly increasing
 * omegas).  Pass omega_break <= 0 to locate the -3 dB crossing in the samples. */
FOPFDD_API fopfdd_status fopfdd_fit_target(const double* omegas, const double* re,
                                           const double* im, size_t count, fopfdd_family family,
                                           double omega_break,
                                           const fopfdd_fit_options* options,
                                           fopfdd_fit_result** out);

/* Fit against a ladder: 200 log-spaced points one decade either side of the
 * ladder break frequency. */
FOPFDD_API fopfdd_status fopfdd_fit_ladder(const fopfdd_ladder* ladder, fopfdd_family family,
                                           const fopfdd_fit_options* options,
                                           fopfdd_fit_result** out);

FOPFDD_API void fopfdd_fit_result_free(fopfdd_fit_result* result);
FOPFDD_API size_t fopfdd_fit_result_front_size(const fopfdd_fit_result* result);

/* Nondominated front point by index (sorted by ascending q1). */
FOPFDD_API fopfdd_status fopfdd_fit_result_front_point(const fopfdd_fit_result* result,
                                                       size_t index, double* q1, double* e_mag,
                                                       double* e_phase, fopfdd_model* params);

/* The normalized-optimal selection from the front. */
FOPFDD_API fopfdd_status fopfdd_fit_result_selected(const fopfdd_fit_result* result, double* q1,
                                                    double* e_mag, double* e_phase,
                                                    fopfdd_model* params);

/* ----------------------------------------------------------------- tables */

typedef struct fopfdd_table_row {
    int n;
    fopfdd_family family;
    int ok; /* 0 means the row failed; see error */
    fopfdd_model params;
    double q1;
    double e_mag;
    double e_phase;
    double t30, t63, t90;
    double j30, j63, j90;
    char error[240];
} fopfdd_table_row;

typedef struct fopfdd_table_report fopfdd_table_report;

/* Full parameter/error table pipeline over uniform unit ladders. */
FOPFDD_API fopfdd_status fopfdd_tables_run(const int* ns, size_t n_count,
                                           const fopfdd_family* families, size_t family_count,
                                           uint64_t seed, fopfdd_table_report** out);

FOPFDD_API void fopfdd_table_report_free(fopfdd_table_report* report);
FOPFDD_API size_t fopfdd_table_report_size(const fopfdd_table_report* report);
FOPFDD_API fopfdd_status fopfdd_table_report_row(const fopfdd_table_report* report, size_t index,
                                                 fopfdd_table_row* out);

/* ------------------------------------------------------------- ILT oracle */

/* Caller-supplied F(s); must be analytic right of the imaginary axis and use
 * the principal branch for fractional powers. */
typedef void (*fopfdd_laplace_fn)(double s_re, double s_im, double* f_re, double* f_im,
                                  void* user_data);

/* Fixed-Talbot inversion at each time in t (> 0, ascending).  nodes <= 0
 * selects the default 32; every point is cross-checked at doubled node count. */
FOPFDD_API fopfdd_status fopfdd_ilt(fopfdd_laplace_fn fn, void* user_data, const double* t,
                                    size_t count, int nodes, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FOPFDD_H */
