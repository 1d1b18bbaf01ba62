#ifndef SOMMERFELD_H
#define SOMMERFELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Values accepted wherever a `method` argument is taken.
 */
typedef enum SfActionMethod {
  SF_ACTION_METHOD_DIRECT = 0,
  SF_ACTION_METHOD_THETA = 1,
  SF_ACTION_METHOD_TIME = 2,
  SF_ACTION_METHOD_RESIDUE = 3,
  SF_ACTION_METHOD_CLOSED = 4,
} SfActionMethod;

/**
 * Values accepted wherever a residue `mode` is taken.
 */
typedef enum SfResidueMode {
  SF_RESIDUE_MODE_NUMERIC = 0,
  SF_RESIDUE_MODE_ANALYTIC = 1,
} SfResidueMode;

typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_ARGUMENT = 2,
  SF_STATUS_UNBOUND_ORBIT = 3,
  SF_STATUS_NO_REAL_ORBIT = 4,
  SF_STATUS_DOMAIN = 5,
  SF_STATUS_CONVERGENCE = 6,
  SF_STATUS_KEPLER_NON_CONVERGENCE = 7,
  SF_STATUS_DEGENERATE_CUT = 8,
  SF_STATUS_NUMERICAL_INCONSISTENCY = 9,
  SF_STATUS_BRACKET = 10,
  SF_STATUS_CONSTANTS_FILE = 11,
  SF_STATUS_PANIC = 12,
} SfStatus;

/**
 * Values accepted wherever a `base` unit system is taken.
 */
typedef enum SfUnitSystem {
  SF_UNIT_SYSTEM_ATOMIC = 0,
  SF_UNIT_SYSTEM_SI = 1,
  SF_UNIT_SYSTEM_CUSTOM = 2,
} SfUnitSystem;

/**
 * Opaque set of physical constants.
 */
typedef struct SfConstants SfConstants;

/**
 * Opaque bound Kepler orbit together with the constants it was built with.
 */
typedef struct SfOrbit SfOrbit;

typedef struct SfConstantValues {
  double hbar;
  double mass_electron;
  double e_squared;
  double speed_of_light;
  double planck_h;
} SfConstantValues;

typedef struct SfActionResult {
  double value;
  double error_estimate;
  /**
   * `value / h`.
   */
  double in_planck_units;
} SfActionResult;

typedef struct SfGeometry {
  double energy;
  double angular_momentum;
  double r_min;
  double r_max;
  double semi_major;
  double semi_minor;
  double eccentricity;
  double period;
  uint32_t z;
} SfGeometry;

typedef struct SfTimeSample {
  double t;
  double r;
  double theta;
  double r_dot;
  double theta_dot;
  double kinetic;
  double potential;
} SfTimeSample;

typedef struct SfResidueReport {
  double res_zero_re;
  double res_zero_im;
  double res_infinity_re;
  double res_infinity_im;
  double cut_integral;
} SfResidueReport;

typedef struct SfSpectralLine {
  uint32_t n_upper;
  uint32_t n_lower;
  uint32_t z;
  double delta_energy;
  double frequency;
  double wavelength;
} SfSpectralLine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Atomic-unit constants. Never null; release with [`sf_constants_free`].
 */
struct SfConstants *sf_constants_atomic(void);

/**
 * Bundled SI constants. Never null; release with [`sf_constants_free`].
 */
struct SfConstants *sf_constants_si(void);

/**
 * A fully specified custom unit system.
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum SfStatus sf_constants_custom(double hbar,
                                  double mass_electron,
                                  double e_squared,
                                  double speed_of_light,
                                  struct SfConstants **out);

/**
 * Reads a constants file and applies it over `base` (an [`SfUnitSystem`] value).
 *
 * # Safety
 * `path` must be a nul-terminated string; `out` must be valid for writing one pointer.
 */
enum SfStatus sf_constants_from_file(const char *path, uint32_t base, struct SfConstants **out);

/**
 * # Safety
 * `c` must be null or a handle from this library that has not been freed.
 */
void sf_constants_free(struct SfConstants *c);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_constants_values(const struct SfConstants *c, struct SfConstantValues *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_fine_structure_constant(const struct SfConstants *c, double *out);

/**
 * Closed-form level energy for quantum numbers `(n_r, n_theta)`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_energy_closed(const struct SfConstants *c,
                               uint32_t n_r,
                               uint32_t n_theta,
                               uint32_t z,
                               double *out);

/**
 * Level energy found by inverting the numeric radial action of `method`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_energy_numeric(const struct SfConstants *c,
                                uint32_t n_r,
                                uint32_t n_theta,
                                uint32_t z,
                                double rel_tol,
                                uint32_t method,
                                double *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_radial_action(const struct SfConstants *c,
                               uint32_t method,
                               double energy,
                               double angular_momentum,
                               uint32_t z,
                               double rel_tol,
                               struct SfActionResult *out);

/**
 * # Safety
 * `c` must be a live handle; `r_min` and `r_max` must be valid for writing.
 */
enum SfStatus sf_turning_points(const struct SfConstants *c,
                                double energy,
                                double angular_momentum,
                                uint32_t z,
                                double *r_min,
                                double *r_max);

/**
 * Orbit with the given energy and angular momentum.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing one pointer.
 */
enum SfStatus sf_orbit_new(const struct SfConstants *c,
                           double energy,
                           double angular_momentum,
                           uint32_t z,
                           struct SfOrbit **out);

/**
 * Orbit of the quantized state `(n_r, n_theta)`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing one pointer.
 */
enum SfStatus sf_orbit_from_quantum(const struct SfConstants *c,
                                    uint32_t n_r,
                                    uint32_t n_theta,
                                    uint32_t z,
                                    struct SfOrbit **out);

/**
 * # Safety
 * `orbit` must be null or a handle from this library that has not been freed.
 */
void sf_orbit_free(struct SfOrbit *orbit);

/**
 * # Safety
 * `orbit` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_orbit_geometry(const struct SfOrbit *orbit, struct SfGeometry *out);

/**
 * State at time `t` after pericenter passage.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_orbit_sample(const struct SfOrbit *orbit, double t, struct SfTimeSample *out);

/**
 * Residues of the branch function with cut `[r_min, r_max]` and the cut integral.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum SfStatus sf_cut_integral(double r_min,
                              double r_max,
                              uint32_t mode,
                              struct SfResidueReport *out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be valid for writing.
 */
enum SfStatus sf_transition(const struct SfConstants *c,
                            uint32_t n_upper,
                            uint32_t n_lower,
                            uint32_t z,
                            struct SfSpectralLine *out);

/**
 * Message for the last call on this thread; empty after a success.
 * Valid until the next library call on the same thread.
 */
const char *sf_last_error_message(void);

/**
 * Static description of a status code.
 */
const char *sf_status_str(enum SfStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOMMERFELD_H */
