/* C interface for the femtorelay two-tier uplink simulator. */

#ifndef FEMTORELAY_H
#define FEMTORELAY_H

/* Generated by cbindgen from the femtorelay-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Decode-and-forward scheme identifier.
 */
#define FR_SCHEME_DF 0

/**
 * Quantize-and-forward with the elementary quantizer.
 */
#define FR_SCHEME_QF_EQ 1

/**
 * Quantize-and-forward with the Wyner-Ziv quantizer.
 */
#define FR_SCHEME_QF_WZQ 2

/**
 * Decode-and-forward with quantized side information.
 */
#define FR_SCHEME_DFQSI 3

/**
 * Decoding order: the macro user first, then the femto user.
 */
#define FR_ORDER_UV 0

/**
 * Decoding order: the femto user first, then the macro user.
 */
#define FR_ORDER_VU 1

/**
 * Result of every fallible call. `FR_OK` is zero so results can be tested
 * with `if (status) ...`.
 */
typedef enum fr_status {
  FR_OK = 0,
  FR_NULL_POINTER = 1,
  FR_INVALID_PARAMETER = 2,
  FR_INVALID_CONFIGURATION = 3,
  FR_UNKNOWN_SCHEME = 4,
  FR_UNKNOWN_ORDER = 5,
  FR_INDEX_OUT_OF_BOUNDS = 6,
} fr_status;

/**
 * Opaque Monte Carlo scenario builder. Create with one of the
 * `fr_scenario_new_*` constructors, adjust with the setters, execute with
 * [`fr_scenario_run`], release with [`fr_scenario_free`].
 */
typedef struct fr_scenario fr_scenario;

/**
 * Opaque finished sweep. Read rows with [`fr_summary_get_row`], render
 * with [`fr_summary_csv`], release with [`fr_summary_free`].
 */
typedef struct fr_summary fr_summary;

/**
 * Received SNR triplet of one realization, all linear.
 */
typedef struct fr_snr {
  /**
   * Macro user heard at the femto station.
   */
  double gamma_uf;
  /**
   * Femto user at its own station.
   */
  double gamma_vf;
  /**
   * Macro user at the macro station.
   */
  double gamma_ub;
} fr_snr;

/**
 * Backhaul pipe capacities in b/s/Hz.
 */
typedef struct fr_backhaul {
  /**
   * Femto-to-macro (forward) capacity.
   */
  double c_up;
  /**
   * Macro-to-femto (reverse) capacity.
   */
  double c_down;
} fr_backhaul;

/**
 * One corner of a rate region: simultaneously achievable user rates.
 */
typedef struct fr_rate_point {
  /**
   * Macro user rate, b/s/Hz.
   */
  double r_u;
  /**
   * Femto user rate, b/s/Hz.
   */
  double r_v;
} fr_rate_point;

/**
 * A point on the time-sharing hull of the two decoding-order corners.
 * `lambda_uv` is the time fraction spent at the UV corner.
 */
typedef struct fr_operating_point {
  double r_u;
  double r_v;
  double lambda_uv;
} fr_operating_point;

/**
 * Everything one scheme achieves on one realization: both decoding-order
 * corners and the two optimized operating points.
 */
typedef struct fr_scheme_report {
  struct fr_rate_point uv;
  struct fr_rate_point vu;
  struct fr_operating_point max_sum;
  struct fr_operating_point max_min;
} fr_scheme_report;

/**
 * Monte Carlo aggregates for one (sweep value, scheme) cell.
 */
typedef struct fr_summary_row {
  /**
   * The swept quantity's value: forward capacity (b/s/Hz) or station
   * distance (meters), depending on the scenario.
   */
  double sweep_value;
  double mean_max_sum;
  double se_max_sum;
  double mean_max_min;
  double se_max_min;
  /**
   * Mean per-user rates at the max-min operating point.
   */
  double mean_ru_maxmin;
  double mean_rv_maxmin;
  /**
   * Mean per-user rates at the max-sum operating point.
   */
  double mean_ru_maxsum;
  double mean_rv_maxsum;
  /**
   * Trials behind the means.
   */
  uint64_t trials;
  /**
   * One of the `FR_SCHEME_*` identifiers.
   */
  uint32_t scheme;
} fr_summary_row;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *fr_version(void);

/**
 * Human-readable description of an `fr_status` value, as a static
 * NUL-terminated string; never freed. Unknown codes get a fallback string.
 */
const char *fr_status_message(uint32_t status);

/**
 * Shannon rate `log2(1 + snr)` of a Gaussian link at linear SNR `snr`;
 * NaN when `snr` is negative or not finite.
 */
double fr_capacity(double snr);

/**
 * Elementary quantization noise level for the given SNRs and forward
 * capacity. Infinite when `c_up` is zero.
 *
 * # Safety
 * `out_beta` must be a valid writable pointer.
 */
enum fr_status fr_beta_eq(struct fr_snr snr, double c_up, double *out_beta);

/**
 * Wyner-Ziv quantization noise level; never exceeds the elementary one.
 * Infinite when `c_up` is zero.
 *
 * # Safety
 * `out_beta` must be a valid writable pointer.
 */
enum fr_status fr_beta_wzq(struct fr_snr snr, double c_up, double *out_beta);

/**
 * Side-information SNR delivered over the reverse pipe: `2^c_down - 1`.
 *
 * # Safety
 * `out_gamma` must be a valid writable pointer.
 */
enum fr_status fr_gamma_qu(double c_down, double *out_gamma);

/**
 * Residual of the Wyner-Ziv budget identity: how far the conditional
 * description rate at the computed noise level lands from `c_up`. A
 * correct implementation keeps this at rounding noise. `c_up` must be
 * strictly positive.
 *
 * # Safety
 * `out_residual` must be a valid writable pointer.
 */
enum fr_status fr_wzq_identity_residual(struct fr_snr snr, double c_up, double *out_residual);

/**
 * Rate-region corner of one scheme under one decoding order.
 *
 * # Safety
 * `out_point` must be a valid writable pointer.
 */
enum fr_status fr_scheme_rates(uint32_t scheme,
                               uint32_t order,
                               struct fr_snr snr,
                               struct fr_backhaul backhaul,
                               struct fr_rate_point *out_point);

/**
 * Both corners of one scheme plus its max-sum and max-min operating
 * points over the time-sharing hull.
 *
 * # Safety
 * `out_report` must be a valid writable pointer.
 */
enum fr_status fr_evaluate_scheme(uint32_t scheme,
                                  struct fr_snr snr,
                                  struct fr_backhaul backhaul,
                                  struct fr_scheme_report *out_report);

/**
 * Max-min rate over time sharing between two rate points, and the winning
 * time fraction on the first point.
 *
 * # Safety
 * `out_value` must be a valid writable pointer; `out_lambda` may be null
 * if the time fraction is not needed.
 */
enum fr_status fr_max_min_two(struct fr_rate_point p1,
                              struct fr_rate_point p2,
                              double *out_value,
                              double *out_lambda);

/**
 * Creates a sweep over the forward backhaul capacity with the reverse
 * capacity tracking at `c_down_ratio`. Defaults: 200 m / 20 m cells with
 * the femto station 150 m out, path-loss exponent 3, 8 dB shadowing,
 * 10 dB power-control target, 10000 trials, master seed 42, every scheme.
 *
 * # Safety
 * `values` must point to `n_values` readable doubles; `out_scenario` must
 * be a valid writable pointer. The returned handle must be released with
 * `fr_scenario_free`.
 */
enum fr_status fr_scenario_new_backhaul_sweep(const double *values,
                                              size_t n_values,
                                              double c_down_ratio,
                                              struct fr_scenario **out_scenario);

/**
 * Creates a sweep over the macro-to-femto station distance at fixed pipe
 * capacities. Same defaults as the backhaul sweep.
 *
 * # Safety
 * `values` must point to `n_values` readable doubles; `out_scenario` must
 * be a valid writable pointer. The returned handle must be released with
 * `fr_scenario_free`.
 */
enum fr_status fr_scenario_new_position_sweep(const double *values,
                                              size_t n_values,
                                              double c_up,
                                              double c_down,
                                              struct fr_scenario **out_scenario);

/**
 * Sets the cell layout: station distance and the two cell radii, meters.
 * Values are validated when the scenario runs.
 *
 * # Safety
 * `scenario` must be a live handle from a constructor.
 */
enum fr_status fr_scenario_set_geometry(struct fr_scenario *scenario,
                                        double s_o,
                                        double r_m,
                                        double r_f);

/**
 * Sets propagation and power control: path-loss exponent, shadowing
 * standard deviation in dB (0 disables shadowing), distance floor in
 * meters, and the power-control target SNR in dB. Values are validated
 * when the scenario runs.
 *
 * # Safety
 * `scenario` must be a live handle from a constructor.
 */
enum fr_status fr_scenario_set_propagation(struct fr_scenario *scenario,
                                           double alpha,
                                           double shadow_sigma_db,
                                           double d_min,
                                           double rx_snr_db);

/**
 * Sets the number of Monte Carlo trials per sweep value.
 *
 * # Safety
 * `scenario` must be a live handle from a constructor.
 */
enum fr_status fr_scenario_set_trials(struct fr_scenario *scenario, uint64_t trials);

/**
 * Sets the master seed. Every trial derives its own stream from it, so
 * results are reproducible for any worker count.
 *
 * # Safety
 * `scenario` must be a live handle from a constructor.
 */
enum fr_status fr_scenario_set_seed(struct fr_scenario *scenario, uint64_t seed);

/**
 * Replaces the evaluated scheme set with the given `FR_SCHEME_*` values.
 *
 * # Safety
 * `scenario` must be a live handle; `schemes` must point to `n_schemes`
 * readable identifiers.
 */
enum fr_status fr_scenario_set_schemes(struct fr_scenario *scenario,
                                       const uint32_t *schemes,
                                       size_t n_schemes);

/**
 * Validates the scenario and runs the full sweep. On success the new
 * summary handle is written to `out_summary`.
 *
 * # Safety
 * `scenario` must be a live handle; `out_summary` must be a valid
 * writable pointer. The returned handle must be released with
 * `fr_summary_free`.
 */
enum fr_status fr_scenario_run(const struct fr_scenario *scenario, struct fr_summary **out_summary);

/**
 * Releases a scenario handle. Passing null is a no-op.
 *
 * # Safety
 * `scenario` must be null or a live handle, and must not be used again.
 */
void fr_scenario_free(struct fr_scenario *scenario);

/**
 * Number of rows in a summary: sweep values times schemes. Zero for null.
 *
 * # Safety
 * `summary` must be null or a live handle.
 */
size_t fr_summary_len(const struct fr_summary *summary);

/**
 * Copies one summary row. Rows are ordered by sweep value, then by scheme
 * in the configured order.
 *
 * # Safety
 * `summary` must be a live handle; `out_row` must be a valid writable
 * pointer.
 */
enum fr_status fr_summary_get_row(const struct fr_summary *summary,
                                  size_t index,
                                  struct fr_summary_row *out_row);

/**
 * Renders the summary as CSV with a `#` metadata preamble — the same
 * bytes the command-line tool writes. The string is heap-owned and must
 * be released with `fr_string_free`.
 *
 * # Safety
 * `summary` must be a live handle; `out_csv` must be a valid writable
 * pointer.
 */
enum fr_status fr_summary_csv(const struct fr_summary *summary, char **out_csv);

/**
 * Releases a summary handle. Passing null is a no-op.
 *
 * # Safety
 * `summary` must be null or a live handle, and must not be used again.
 */
void fr_summary_free(struct fr_summary *summary);

/**
 * Releases a string returned by this library. Passing null is a no-op.
 *
 * # Safety
 * `string` must be null or a string obtained from this library, and must
 * not be used again.
 */
void fr_string_free(char *string);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FEMTORELAY_H */
