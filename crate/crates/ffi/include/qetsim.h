#ifndef QETSIM_H
#define QETSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QetStatus {
  QET_STATUS_OK = 0,
  QET_STATUS_NULL_POINTER = 1,
  QET_STATUS_VALIDATION = 2,
  QET_STATUS_NON_FINITE = 3,
  QET_STATUS_IO = 4,
  QET_STATUS_CONFIG = 5,
  QET_STATUS_PANIC = 6,
} QetStatus;

typedef enum QetUnits {
  QET_UNITS_SI = 0,
  QET_UNITS_NATURAL = 1,
} QetUnits;

typedef enum QetSign {
  QET_SIGN_DIP_NEGATIVE = 0,
  QET_SIGN_LITERAL_EQ_NINE = 1,
} QetSign;

typedef enum QetArchitecture {
  QET_ARCHITECTURE_SINGLE_PAIR = 0,
  QET_ARCHITECTURE_UNCOORDINATED = 1,
  QET_ARCHITECTURE_SYNCHRONIZED = 2,
} QetArchitecture;

// Opaque sampled field (line or space-time).
typedef struct QetField QetField;

// Opaque dip track.
typedef struct QetTrack QetTrack;

// Inputs of the parametric SNR model; see `qet_snr_params_default`.
typedef struct QetSnrParams {
  double n_units;
  double spacing;
  double finesse;
  double rep_rate;
  double squeeze;
  double g_ent;
  double g_shape;
  double g_multi;
  double g_noise;
  double ref_n;
  double ref_d;
} QetSnrParams;

typedef struct QetNoiseFloors {
  double detector_floor;
  double technical_floor;
  double gap_coeff;
} QetNoiseFloors;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *qet_version(void);

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next qetsim call on the same thread.
const char *qet_last_error(void);

// Reference-point parameter set (N = 1e3, d = 0.05 m, F = 1e4, ...).
struct QetSnrParams qet_snr_params_default(void);

struct QetNoiseFloors qet_noise_floors_default(void);

// Gaussian energy density `-eps*exp(...)` at `(x, t)`.
//
// # Safety
// `out` must be valid for writes.
enum QetStatus qet_gaussian_t00(double epsilon,
                                double x0,
                                double t0,
                                double sigma,
                                double tau,
                                double x,
                                double t,
                                double *out);

// Parametric SNR. `noise` may be NULL to disable the noise floors.
//
// # Safety
// `params` must be valid; `noise` null or valid; `out` valid for writes.
enum QetStatus qet_snr_parametric(const struct QetSnrParams *params,
                                  const struct QetNoiseFloors *noise,
                                  double *out);

// SNR relative to the reference point `(ref_n, ref_d)`.
//
// # Safety
// As for `qet_snr_parametric`.
enum QetStatus qet_snr_normalized(const struct QetSnrParams *params,
                                  const struct QetNoiseFloors *noise,
                                  double *out);

// `N*dR0/sigma_R`.
//
// # Safety
// `out` must be valid for writes.
enum QetStatus qet_snr_curvature(double n_units, double delta_r0, double sigma_r, double *out);

// Array size at which the curvature SNR reaches 1.
//
// # Safety
// `out` must be valid for writes.
enum QetStatus qet_threshold_units(double delta_r0, double sigma_r, double *out);

// # Safety
// `out` must be valid for writes.
enum QetStatus qet_phase_shift(double delta_r, double arm_length, double wavelength, double *out);

// # Safety
// `out` must be valid for writes.
enum QetStatus qet_clock_drift(double delta_r, double extent, double duration, double *out);

// # Safety
// `out` must be valid for writes.
enum QetStatus qet_clock_freq_shift(double delta_r,
                                    double length,
                                    enum QetUnits units,
                                    double *out);

// # Safety
// `out` must be valid for writes.
enum QetStatus qet_strain(double delta_r, double length, double *out);

// Time-gated pulse `-s*N*dR0*exp(-(t-t0)^2/2 sigma_t^2)`.
//
// # Safety
// `out` must be valid for writes.
enum QetStatus qet_gated_pulse(size_t n_units,
                               double delta_r0,
                               double t0,
                               double sigma_t,
                               enum QetSign sign_convention,
                               double t,
                               double *out);

// Static curvature profile of a source array on `[x_min, x_max]`.
//
// # Safety
// `out` must be valid for writes; the handle is released with `qet_field_free`.
enum QetStatus qet_array_profile(enum QetArchitecture architecture,
                                 size_t n_units,
                                 double spacing,
                                 double epsilon,
                                 double sigma,
                                 uint64_t seed,
                                 double x_min,
                                 double x_max,
                                 size_t n_x,
                                 enum QetUnits units,
                                 enum QetSign sign_convention,
                                 struct QetField **out);

// Retarded curvature of a timed event chain in natural units. Grid rows are
// time levels.
//
// # Safety
// `out` must be valid for writes; the handle is released with `qet_field_free`.
enum QetStatus qet_qix_chain(size_t n_events,
                             double spacing,
                             double sigma,
                             double gate_interval,
                             double epsilon,
                             double x_min,
                             double x_max,
                             size_t n_x,
                             double t_min,
                             double t_max,
                             size_t n_t,
                             struct QetField **out);

// Number of time rows (1 for a line field) and spatial columns.
//
// # Safety
// `field` must be a live handle; `n_t` and `n_x` valid for writes.
enum QetStatus qet_field_shape(const struct QetField *field, size_t *n_t, size_t *n_x);

// Copies the row-major values into `buf`, which must hold exactly
// `n_t * n_x` doubles (`len`).
//
// # Safety
// `field` must be a live handle and `buf` valid for `len` writes.
enum QetStatus qet_field_values(const struct QetField *field, double *buf, size_t len);

// Smallest value of the field.
//
// # Safety
// `field` must be a live handle and `out` valid for writes.
enum QetStatus qet_field_min(const struct QetField *field, double *out);

// Releases a field handle. NULL is ignored.
//
// # Safety
// `field` must be null or a handle not yet freed.
void qet_field_free(struct QetField *field);

// Tracks the per-slice minimum of a space-time field.
//
// # Safety
// `field` must be a live handle; `out` valid for writes. Release the track
// with `qet_track_free`.
enum QetStatus qet_track_dip(const struct QetField *field,
                             double edge_fraction,
                             struct QetTrack **out);

// Fitted dip velocity; `has_velocity` is set to 0 when the fit is degenerate.
//
// # Safety
// `track` must be a live handle; out-pointers valid for writes.
enum QetStatus qet_track_velocity(const struct QetTrack *track,
                                  double *velocity,
                                  int32_t *has_velocity);

// # Safety
// `track` must be a live handle; `out` valid for writes.
enum QetStatus qet_track_len(const struct QetTrack *track, size_t *out);

// Copies the tracked points; each buffer must hold `len` doubles.
//
// # Safety
// `track` must be a live handle and each buffer valid for `len` writes.
enum QetStatus qet_track_points(const struct QetTrack *track,
                                double *t,
                                double *x_min,
                                double *value_min,
                                size_t len);

// Releases a track handle. NULL is ignored.
//
// # Safety
// `track` must be null or a handle not yet freed.
void qet_track_free(struct QetTrack *track);

// Runs a figure recipe, writing into `out_dir/<name>/`.
//
// # Safety
// Both arguments must be NUL-terminated UTF-8 strings.
enum QetStatus qet_recipe_run(const char *name, const char *out_dir);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QETSIM_H */
