/*
 * gupbell: CHSH / Bell-inequality laboratory with first-order generalized
 * uncertainty principle (GUP) corrections.
 *
 * Plain C interface. Every fallible call returns a gb_status; on failure the
 * message is available from gb_last_error() on the same thread. Opaque
 * handles are created by *_create / computing calls and released by the
 * matching *_destroy. Matrices are dense, row-major arrays of gb_complex:
 * 2x2 single-qubit operators take 4 entries, 4x4 two-qubit operators 16.
 * Two-qubit vectors use the basis |00>, |01>, |10>, |11> (Alice first).
 */
#ifndef GUPBELL_GUPBELL_H
#define GUPBELL_GUPBELL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GUPBELL_BUILDING_LIBRARY)
#    define GUPBELL_API __declspec(dllexport)
#  else
#    define GUPBELL_API __declspec(dllimport)
#  endif
#else
#  define GUPBELL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* Status and diagnostics                                              */

typedef enum gb_status {
  GB_OK = 0,
  GB_ERR_INVALID_ARGUMENT = 1,
  GB_ERR_DIMENSION = 2,
  GB_ERR_NOT_HERMITIAN = 3,
  GB_ERR_NUMERIC = 4,
  GB_ERR_DEGENERATE = 5,
  GB_ERR_AMBIGUOUS = 6,
  GB_ERR_NOT_DICHOTOMIC = 7,
  GB_ERR_UNDEFINED = 8,
  GB_ERR_ALLOC = 9,
  GB_ERR_INTERNAL = 10
} gb_status;

GUPBELL_API const char* gb_status_string(gb_status status);
/* Message of the last failed call on this thread; "" if none. */
GUPBELL_API const char* gb_last_error(void);
GUPBELL_API const char* gb_version(void);

/* ------------------------------------------------------------------ */
/* Value types                                                         */

typedef struct gb_complex {
  double re;
  double im;
} gb_complex;

/* Polar angle theta and azimuth phi, radians. */
typedef struct gb_direction {
  double theta;
  double phi;
} gb_direction;

typedef struct gb_settings {
  gb_direction a;
  gb_direction a_prime;
  gb_direction b;
  gb_direction b_prime;
} gb_settings;

/* ------------------------------------------------------------------ */
/* Dense linear algebra                                                */

/* out receives (dim_a*dim_b)^2 entries. */
GUPBELL_API gb_status gb_kron(const gb_complex* a, size_t dim_a, const gb_complex* b,
                              size_t dim_b, gb_complex* out);
/* Ascending eigenvalues (dim entries) and eigenvectors as columns of a
 * row-major dim x dim matrix. Largest-magnitude component of every
 * eigenvector is real and positive. */
GUPBELL_API gb_status gb_eig_hermitian(const gb_complex* m, size_t dim, double* eigenvalues,
                                       gb_complex* eigenvectors);
GUPBELL_API gb_status gb_expect(const gb_complex* psi, const gb_complex* op, size_t dim,
                                double* out);

/* ------------------------------------------------------------------ */
/* Two-qubit model                                                     */

typedef enum gb_bell_kind {
  GB_PHI_PLUS = 0,
  GB_PHI_MINUS = 1,
  GB_PSI_PLUS = 2,
  GB_PSI_MINUS = 3
} gb_bell_kind;

GUPBELL_API gb_status gb_bell_state(gb_bell_kind kind, gb_complex out[4]);
/* a=0, a'=pi/2, b=pi/4, b'=-pi/4, all azimuths 0. */
GUPBELL_API gb_status gb_canonical_settings(gb_settings* out);
GUPBELL_API gb_status gb_spin_observable(gb_direction n, gb_complex out[4]);
GUPBELL_API gb_status gb_bell_operator(const gb_settings* s, gb_complex out[16]);
GUPBELL_API gb_status gb_chsh_value(const gb_complex state[4], const gb_settings* s,
                                    double* out);

/* ------------------------------------------------------------------ */
/* GUP corrections                                                     */

typedef struct gb_model gb_model;

/* J_p = J^3. */
GUPBELL_API gb_status gb_model_create_self_cubic(double beta, gb_model** out);
/* J_p = m.sigma; m must be a unit vector within 1e-12. */
GUPBELL_API gb_status gb_model_create_tilt(double beta, const double m[3], gb_model** out);
/* J_p = jp for every direction; jp Hermitian 2x2. */
GUPBELL_API gb_status gb_model_create_custom(double beta, const gb_complex jp[4],
                                             gb_model** out);
GUPBELL_API void gb_model_destroy(gb_model* model);
GUPBELL_API double gb_model_beta(const gb_model* model);

typedef struct gb_gup_observable {
  gb_complex j_qm[4];
  gb_complex j_p[4];
  gb_complex j_gup_unnorm[4];
  gb_complex j_gup[4];
  double lambda_abs;
  double lambda_p_plus;
  double lambda_p_minus;
  double lambda_gup_abs;
  double lambda_gup_abs_minus;
  double lambda_gup_first_order;
  double beta_prime;
  double beta_dprime;
  int perturbative_warning;
} gb_gup_observable;

GUPBELL_API gb_status gb_gup_correct_observable(gb_direction n, const gb_model* model,
                                                gb_gup_observable* out);

typedef struct gb_perturbed_state {
  gb_complex xi[4];
  gb_complex xi_p[4];
  double beta;
} gb_perturbed_state;

GUPBELL_API gb_status gb_perturb_state(const gb_complex h0[16], const gb_complex hp[16],
                                       int level, double beta, gb_perturbed_state* out);
/* -(sx sx + sz sz). */
GUPBELL_API gb_status gb_default_h0(gb_complex out[16]);
/* First-order change of the default H0 under the model's correction rule. */
GUPBELL_API gb_status gb_default_hp(const gb_model* model, gb_complex out[16]);

typedef enum gb_scenario_kind {
  GB_SCENARIO_QM = 0,
  GB_SCENARIO_S1 = 1, /* corrected operators, QM state */
  GB_SCENARIO_S2 = 2, /* QM operators, perturbed state */
  GB_SCENARIO_S3 = 3  /* both corrected */
} gb_scenario_kind;

#define GB_MAX_TERMS 4
#define GB_TERM_LABEL_SIZE 24

typedef struct gb_chsh_term {
  char label[GB_TERM_LABEL_SIZE];
  double value;
} gb_chsh_term;

typedef struct gb_chsh_result {
  gb_scenario_kind scenario;
  double value;
  double bound;
  double beta;
  double norm_deviation;
  size_t term_count;
  gb_chsh_term terms[GB_MAX_TERMS];
} gb_chsh_result;

GUPBELL_API gb_status gb_scenario1_chsh(const gb_complex state[4], const gb_settings* s,
                                        const gb_model* model, gb_chsh_result* out);
GUPBELL_API gb_status gb_scenario2_chsh(const gb_perturbed_state* ps, const gb_settings* s,
                                        gb_chsh_result* out);
GUPBELL_API gb_status gb_scenario3_chsh(const gb_perturbed_state* ps, const gb_settings* s,
                                        const gb_model* model, gb_chsh_result* out);

/* A scenario bundles kind, model and state sources; it is immutable once
 * created and may be shared between threads. NULL state selects PhiPlus,
 * NULL h0/hp select the defaults. model may be NULL for GB_SCENARIO_QM. */
typedef struct gb_scenario_desc {
  gb_scenario_kind kind;
  const gb_model* model;
  const gb_complex* state; /* 4 amplitudes, QM and S1 */
  const gb_complex* h0;    /* 16 entries, S2 and S3 */
  const gb_complex* hp;    /* 16 entries, S2 and S3 */
  int level;
} gb_scenario_desc;

typedef struct gb_scenario gb_scenario;

GUPBELL_API gb_status gb_scenario_create(const gb_scenario_desc* desc, gb_scenario** out);
GUPBELL_API void gb_scenario_destroy(gb_scenario* scenario);
GUPBELL_API gb_status gb_scenario_evaluate(const gb_scenario* scenario, const gb_settings* s,
                                           gb_chsh_result* out);
/* Fails with GB_ERR_INVALID_ARGUMENT for QM / S1 scenarios. */
GUPBELL_API gb_status gb_scenario_perturbed(const gb_scenario* scenario,
                                            gb_perturbed_state* out);

/* ------------------------------------------------------------------ */
/* Parameter-space exploration                                         */

typedef struct gb_axis {
  double min;
  double max;
  size_t steps;
} gb_axis;

/* a=0, a'=t1, b=t2, b'=-t2. */
GUPBELL_API gb_status gb_two_angle_settings(double theta1, double theta2, gb_settings* out);
/* a=0, a'=2t, b=t, b'=3t. */
GUPBELL_API gb_status gb_sweep_settings(double theta, gb_settings* out);

typedef struct gb_scan gb_scan;

/* threads = 0 uses the hardware concurrency; output never depends on it. */
GUPBELL_API gb_status gb_grid_scan(const gb_scenario* scenario, const gb_axis* theta1,
                                   const gb_axis* theta2, unsigned threads, gb_scan** out);
GUPBELL_API void gb_scan_destroy(gb_scan* scan);
GUPBELL_API size_t gb_scan_rows(const gb_scan* scan);
GUPBELL_API size_t gb_scan_cols(const gb_scan* scan);
GUPBELL_API const double* gb_scan_theta1(const gb_scan* scan);
GUPBELL_API const double* gb_scan_theta2(const gb_scan* scan);
/* rows*cols values, theta1 outer. */
GUPBELL_API const double* gb_scan_values(const gb_scan* scan);
GUPBELL_API size_t gb_scan_count_regions(const gb_scan* scan, double threshold);

typedef struct gb_sweep gb_sweep;

/* base supplies rule, state and Hamiltonian sources; its kind is ignored. */
GUPBELL_API gb_status gb_beta_sweep(const gb_scenario* base, const double* betas,
                                    size_t n_betas, const gb_axis* theta,
                                    const gb_scenario_kind* kinds, size_t n_kinds,
                                    unsigned threads, gb_sweep** out);
GUPBELL_API void gb_sweep_destroy(gb_sweep* sweep);
GUPBELL_API size_t gb_sweep_curve_count(const gb_sweep* sweep);
GUPBELL_API size_t gb_sweep_theta_count(const gb_sweep* sweep);
GUPBELL_API const double* gb_sweep_theta(const gb_sweep* sweep);
GUPBELL_API double gb_sweep_beta(const gb_sweep* sweep, size_t curve);
/* NULL if the curve index is out of range or the kind was not requested. */
GUPBELL_API const double* gb_sweep_series(const gb_sweep* sweep, size_t curve,
                                          gb_scenario_kind kind);

typedef struct gb_optimize_options {
  int restarts;
  uint64_t seed;
  int full_sphere;
  size_t coarse_points;
  size_t max_evaluations;
  double tolerance;
} gb_optimize_options;

typedef struct gb_optimum {
  gb_settings settings;
  double value;
  double coarse_value;
  size_t evaluations;
  int best_restart;
  int budget_exhausted;
} gb_optimum;

GUPBELL_API void gb_optimize_options_default(gb_optimize_options* out);
GUPBELL_API gb_status gb_optimize_angles(const gb_scenario* scenario,
                                         const gb_optimize_options* options, unsigned threads,
                                         gb_optimum* out);

typedef enum gb_region {
  GB_REGION_CLASSICAL = 0,
  GB_REGION_QUANTUM = 1,
  GB_REGION_SUPERQUANTUM = 2,
  GB_REGION_UNPHYSICAL = 3
} gb_region;

GUPBELL_API gb_status gb_classify(double s, gb_region* out);
GUPBELL_API const char* gb_region_name(gb_region region);

/* ------------------------------------------------------------------ */
/* Finite-shot simulation                                              */

typedef struct gb_shot_plan {
  uint64_t shots_per_pair;
  uint64_t seed;
  double noise_p;
} gb_shot_plan;

/* Counts for one setting pair: n = (+,+), (+,-), (-,+), (-,-); values_* are
 * the eigenvalues reported for "+" and "-". */
typedef struct gb_pair_counts {
  uint64_t n[4];
  double values_a[2];
  double values_b[2];
} gb_pair_counts;

/* Pairs in the order (a,b), (a,b'), (a',b), (a',b'). */
typedef struct gb_estimate {
  double s_hat;
  double std_error;
  double correlators[4];
  gb_pair_counts counts[4];
} gb_estimate;

GUPBELL_API gb_status gb_depolarize(const gb_complex state[4], double p, gb_complex rho[16]);
GUPBELL_API gb_status gb_measure_pair(const gb_complex rho[16], const gb_complex obs_a[4],
                                      const gb_complex obs_b[4], double draw, double* out_a,
                                      double* out_b);
/* Samples the scenario's state with its observables (GUP-normalized for S1
 * and S3, or the unnormalized J_GUP when raw_eigenvalues is non-zero). */
GUPBELL_API gb_status gb_estimate_chsh(const gb_scenario* scenario, const gb_settings* s,
                                       const gb_shot_plan* plan, int raw_eigenvalues,
                                       unsigned threads, gb_estimate* out);
/* observables: 16 entries, a, a', b, b' as consecutive 2x2 blocks. */
GUPBELL_API gb_status gb_estimate_chsh_observables(const gb_complex state[4],
                                                   const gb_complex observables[16],
                                                   const gb_shot_plan* plan, unsigned threads,
                                                   gb_estimate* out);
GUPBELL_API gb_status gb_estimate_from_counts(const gb_pair_counts counts[4], gb_estimate* out);

typedef struct gb_lhv_strategy {
  int assignment[4]; /* a, a', b, b' */
  int s;
} gb_lhv_strategy;

GUPBELL_API gb_status gb_lhv_max(int* max_s, int* min_s, gb_lhv_strategy table[16]);

/* ------------------------------------------------------------------ */
/* Device-independent security metrics                                */

typedef struct gb_security_report {
  double s_observed;
  double s_baseline;
  double margin;
  double minentropy_bits;
  int beyond_quantum;
  int alarm;
  double alarm_sigma;
  double k_sigma;
} gb_security_report;

GUPBELL_API gb_status gb_violation_margin(double s, double* out);
GUPBELL_API gb_status gb_minentropy_bound(double s, double* bits, int* beyond_quantum);
GUPBELL_API gb_status gb_eavesdrop_test(const gb_estimate* baseline, const gb_estimate* observed,
                                        double k_sigma, int* alarm, double* drop_sigma);
GUPBELL_API gb_status gb_security_report_build(const gb_estimate* baseline,
                                               const gb_estimate* observed, double k_sigma,
                                               gb_security_report* out);

#ifdef __cplusplus
}
#endif

#endif /* GUPBELL_GUPBELL_H */
