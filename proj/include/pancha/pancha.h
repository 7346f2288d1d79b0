#ifndef PANCHA_PANCHA_H
#define PANCHA_PANCHA_H

/* C interface of libpancha. All functions return a pancha_status; on failure
 * pancha_last_error() holds a message for the calling thread. Objects are
 * opaque handles released with the matching *_free function. Angles are
 * radians. */

#include <stddef.h>
#include <stdint.h>

#if defined(PANCHA_BUILDING_LIBRARY)
#define PANCHA_API __attribute__((visibility("default")))
#else
#define PANCHA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pancha_status {
  PANCHA_OK = 0,
  PANCHA_INVALID_ARGUMENT,
  PANCHA_DIMENSION_MISMATCH,
  PANCHA_ORTHOGONAL_STATES,
  PANCHA_VANISHING_TRACE,
  PANCHA_VANISHING_ENDPOINT_OVERLAP,
  PANCHA_ILL_CONDITIONED,
  PANCHA_DECOMPOSITION_FAILURE,
  PANCHA_DEGENERATE_TRIANGLE,
  PANCHA_ANTIPODAL_POINTS,
  PANCHA_ANTIPODAL_ENDPOINTS,
  PANCHA_ZERO_AXIS,
  PANCHA_DEGENERATE_SPECTRUM,
  PANCHA_BRANCH_AMBIGUITY,
  PANCHA_BASIS_MISALIGNED,
  PANCHA_UNDEFINED_RATIO,
  PANCHA_CONFIG_ERROR,
  PANCHA_MULTIPLE_SWEPT_PARAMETERS,
  PANCHA_IO_ERROR,
  PANCHA_INTERNAL
} pancha_status;

/* "OrthogonalStates", "ConfigError", ... ("Ok" for PANCHA_OK). */
PANCHA_API const char* pancha_status_name(pancha_status status);
/* Nonzero for failures of the physics itself (undefined phase, degenerate
 * geometry) as opposed to bad input. */
PANCHA_API int pancha_status_is_domain(pancha_status status);
PANCHA_API const char* pancha_last_error(void);
PANCHA_API const char* pancha_version(void);

typedef struct pancha_phase_result {
  double phase;
  double visibility;
  int defined;
} pancha_phase_result;

/* States */

typedef struct pancha_state pancha_state;

/* Amplitudes must already be normalised. */
PANCHA_API pancha_status pancha_state_create(const double* re, const double* im, size_t dim,
                                             pancha_state** out);
PANCHA_API pancha_status pancha_state_from_bloch(double theta, double phi, pancha_state** out);
PANCHA_API pancha_status pancha_state_random(uint64_t seed, size_t dim, pancha_state** out);
PANCHA_API size_t pancha_state_dim(const pancha_state* state);
PANCHA_API pancha_status pancha_state_amplitude(const pancha_state* state, size_t index, double* re,
                                                double* im);
PANCHA_API pancha_status pancha_state_to_bloch(const pancha_state* state, double* theta, double* phi);
PANCHA_API void pancha_state_free(pancha_state* state);

/* Phases. A triangle is six numbers: theta_a, phi_a, theta_b, phi_b, theta_c, phi_c. */

PANCHA_API pancha_status pancha_pancharatnam_phase(const pancha_state* a, const pancha_state* b,
                                                   pancha_phase_result* out);
PANCHA_API pancha_status pancha_bargmann_invariant(const pancha_state* a, const pancha_state* b,
                                                   const pancha_state* c, double* out);
PANCHA_API pancha_status pancha_solid_angle(const double triangle[6], double* out);
PANCHA_API pancha_status pancha_mixed_bargmann_qubit(double r, const double triangle[6], double* out);
PANCHA_API pancha_status pancha_mixed_solid_angle_phase(double r, double omega, double* out);
PANCHA_API pancha_status pancha_entangled_phase(double lambda, double omega, double omega_prime,
                                                pancha_phase_result* out);
PANCHA_API pancha_status pancha_precession_phase(double theta, double phi, double* out);
PANCHA_API pancha_status pancha_precession_chain_phase(double theta, double phi, size_t subdivisions,
                                                       double* out);
PANCHA_API pancha_status pancha_mixed_noncyclic_phase(double theta, double phi, double r, double* out);
PANCHA_API pancha_status pancha_dual_phase(double theta, double delta_phi, pancha_phase_result* out);
PANCHA_API pancha_status pancha_fit_fringe(const double* chi, const double* intensity, size_t count,
                                           pancha_phase_result* out);

/* Experiment configs */

typedef struct pancha_config pancha_config;

PANCHA_API pancha_status pancha_config_parse(const char* yaml, pancha_config** out);
PANCHA_API pancha_status pancha_config_load(const char* path, pancha_config** out);
PANCHA_API pancha_status pancha_config_set_seed(pancha_config* config, uint64_t seed);
PANCHA_API int pancha_config_has_seed(const pancha_config* config);
PANCHA_API pancha_status pancha_config_set_subdivisions(pancha_config* config, size_t subdivisions);
PANCHA_API pancha_status pancha_config_set_jobs(pancha_config* config, size_t jobs);
/* "csv" or "json". */
PANCHA_API pancha_status pancha_config_set_format(pancha_config* config, const char* format);
PANCHA_API pancha_status pancha_config_set_output(pancha_config* config, const char* path);
/* NULL when the config does not name one. */
PANCHA_API const char* pancha_config_format(const pancha_config* config);
PANCHA_API const char* pancha_config_output(const pancha_config* config);
PANCHA_API void pancha_config_free(pancha_config* config);

/* Run records */

typedef struct pancha_record pancha_record;

PANCHA_API pancha_status pancha_run(const pancha_config* config, pancha_record** out);
PANCHA_API pancha_status pancha_sweep(const pancha_config* config, pancha_record** out);
/* *text is allocated; release it with pancha_string_free. */
PANCHA_API pancha_status pancha_record_render(const pancha_record* record, const char* format, char** text);
PANCHA_API pancha_status pancha_record_write(const pancha_record* record, const char* path, const char* format);
PANCHA_API size_t pancha_record_result_count(const pancha_record* record);
PANCHA_API pancha_status pancha_record_result(const pancha_record* record, size_t index, const char** name,
                                              double* value);
PANCHA_API size_t pancha_record_delta_count(const pancha_record* record);
PANCHA_API pancha_status pancha_record_delta(const pancha_record* record, size_t index, const char** name,
                                             double* value);
/* PANCHA_INVALID_ARGUMENT when no result has that name. */
PANCHA_API pancha_status pancha_record_find_result(const pancha_record* record, const char* name, double* value);
PANCHA_API double pancha_record_max_oracle_delta(const pancha_record* record);
PANCHA_API size_t pancha_record_row_count(const pancha_record* record);
/* error is "" when the row's phase is defined. */
PANCHA_API pancha_status pancha_record_row(const pancha_record* record, size_t index, double* value,
                                           pancha_phase_result* result, double* phase_unwrapped,
                                           const char** error);
PANCHA_API const char* pancha_record_timestamp(const pancha_record* record);
PANCHA_API void pancha_record_free(pancha_record* record);
PANCHA_API void pancha_string_free(char* text);

/* Property batteries. suite: geometry, mixed, two-photon, geometric-phase,
 * dual or all. The callback receives one formatted line per property. */

typedef void (*pancha_check_callback)(const char* line, int pass, void* user);

PANCHA_API pancha_status pancha_verify(const char* suite, double tolerance_scale, pancha_check_callback callback,
                                       void* user, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
