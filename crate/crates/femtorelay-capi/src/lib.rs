//! C interface for the two-tier uplink simulator.
//!
//! The surface follows the usual C conventions: plain structs for rate
//! points and summary rows, `u32` identifier constants for schemes and
//! decoding orders (invalid values are rejected with a status code instead
//! of being undefined behavior), opaque handles for the scenario builder
//! and the finished summary, and an `fr_status` result on every fallible
//! call. Strings returned by the library are NUL-terminated, heap-owned,
//! and must be released with [`fr_string_free`].

#![allow(non_camel_case_types)]

use std::ffi::{c_char, CString};

use femtorelay::channel::{NetworkGeometry, PropagationParams, SnrTriplet};
use femtorelay::cli::render_csv;
use femtorelay::montecarlo::{evaluate_snr, run_sweep, ConfigError, ScenarioConfig, SweepSummary};
use femtorelay::region::{max_min_two_detailed, OperatingPoint};
use femtorelay::schemes::{
    beta_eq, beta_wzq, capacity, gamma_qu, scheme_rates, verify_wzq_identity, BackhaulCapacities,
    DecodingOrder, Scheme,
};

/// Result of every fallible call. `FR_OK` is zero so results can be tested
/// with `if (status) ...`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum fr_status {
    FR_OK = 0,
    FR_NULL_POINTER = 1,
    FR_INVALID_PARAMETER = 2,
    FR_INVALID_CONFIGURATION = 3,
    FR_UNKNOWN_SCHEME = 4,
    FR_UNKNOWN_ORDER = 5,
    FR_INDEX_OUT_OF_BOUNDS = 6,
}

/// Decode-and-forward scheme identifier.
pub const FR_SCHEME_DF: u32 = 0;
/// Quantize-and-forward with the elementary quantizer.
pub const FR_SCHEME_QF_EQ: u32 = 1;
/// Quantize-and-forward with the Wyner-Ziv quantizer.
pub const FR_SCHEME_QF_WZQ: u32 = 2;
/// Decode-and-forward with quantized side information.
pub const FR_SCHEME_DFQSI: u32 = 3;

/// Decoding order: the macro user first, then the femto user.
pub const FR_ORDER_UV: u32 = 0;
/// Decoding order: the femto user first, then the macro user.
pub const FR_ORDER_VU: u32 = 1;

/// Received SNR triplet of one realization, all linear.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_snr {
    /// Macro user heard at the femto station.
    pub gamma_uf: f64,
    /// Femto user at its own station.
    pub gamma_vf: f64,
    /// Macro user at the macro station.
    pub gamma_ub: f64,
}

/// Backhaul pipe capacities in b/s/Hz.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_backhaul {
    /// Femto-to-macro (forward) capacity.
    pub c_up: f64,
    /// Macro-to-femto (reverse) capacity.
    pub c_down: f64,
}

/// One corner of a rate region: simultaneously achievable user rates.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_rate_point {
    /// Macro user rate, b/s/Hz.
    pub r_u: f64,
    /// Femto user rate, b/s/Hz.
    pub r_v: f64,
}

/// A point on the time-sharing hull of the two decoding-order corners.
/// `lambda_uv` is the time fraction spent at the UV corner.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_operating_point {
    pub r_u: f64,
    pub r_v: f64,
    pub lambda_uv: f64,
}

/// Everything one scheme achieves on one realization: both decoding-order
/// corners and the two optimized operating points.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_scheme_report {
    pub uv: fr_rate_point,
    pub vu: fr_rate_point,
    pub max_sum: fr_operating_point,
    pub max_min: fr_operating_point,
}

/// Monte Carlo aggregates for one (sweep value, scheme) cell.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct fr_summary_row {
    /// The swept quantity's value: forward capacity (b/s/Hz) or station
    /// distance (meters), depending on the scenario.
    pub sweep_value: f64,
    pub mean_max_sum: f64,
    pub se_max_sum: f64,
    pub mean_max_min: f64,
    pub se_max_min: f64,
    /// Mean per-user rates at the max-min operating point.
    pub mean_ru_maxmin: f64,
    pub mean_rv_maxmin: f64,
    /// Mean per-user rates at the max-sum operating point.
    pub mean_ru_maxsum: f64,
    pub mean_rv_maxsum: f64,
    /// Trials behind the means.
    pub trials: u64,
    /// One of the `FR_SCHEME_*` identifiers.
    pub scheme: u32,
}

/// Opaque Monte Carlo scenario builder. Create with one of the
/// `fr_scenario_new_*` constructors, adjust with the setters, execute with
/// [`fr_scenario_run`], release with [`fr_scenario_free`].
pub struct fr_scenario {
    config: ScenarioConfig,
}

/// Opaque finished sweep. Read rows with [`fr_summary_get_row`], render
/// with [`fr_summary_csv`], release with [`fr_summary_free`].
pub struct fr_summary {
    config: ScenarioConfig,
    summary: SweepSummary,
}

fn scheme_from_raw(raw: u32) -> Option<Scheme> {
    match raw {
        FR_SCHEME_DF => Some(Scheme::Df),
        FR_SCHEME_QF_EQ => Some(Scheme::QfEq),
        FR_SCHEME_QF_WZQ => Some(Scheme::QfWzq),
        FR_SCHEME_DFQSI => Some(Scheme::Dfqsi),
        _ => None,
    }
}

fn scheme_to_raw(scheme: Scheme) -> u32 {
    match scheme {
        Scheme::Df => FR_SCHEME_DF,
        Scheme::QfEq => FR_SCHEME_QF_EQ,
        Scheme::QfWzq => FR_SCHEME_QF_WZQ,
        Scheme::Dfqsi => FR_SCHEME_DFQSI,
    }
}

fn order_from_raw(raw: u32) -> Option<DecodingOrder> {
    match raw {
        FR_ORDER_UV => Some(DecodingOrder::Uv),
        FR_ORDER_VU => Some(DecodingOrder::Vu),
        _ => None,
    }
}

fn snr_from(raw: fr_snr) -> Result<SnrTriplet, fr_status> {
    SnrTriplet::new(raw.gamma_uf, raw.gamma_vf, raw.gamma_ub).map_err(|_| fr_status::FR_INVALID_PARAMETER)
}

fn backhaul_from(raw: fr_backhaul) -> Result<BackhaulCapacities, fr_status> {
    BackhaulCapacities::new(raw.c_up, raw.c_down).map_err(|_| fr_status::FR_INVALID_PARAMETER)
}

/// Time fraction an operating point spends on the first-listed corner.
fn weight_on_first(op: &OperatingPoint) -> f64 {
    let (i, j) = op.corners;
    let mut w = 0.0;
    if i == 0 {
        w += op.lambda;
    }
    if j == 0 {
        w += 1.0 - op.lambda;
    }
    w
}

fn operating_point_from(op: &OperatingPoint) -> fr_operating_point {
    fr_operating_point { r_u: op.r_u, r_v: op.r_v, lambda_uv: weight_on_first(op) }
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn fr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Human-readable description of an `fr_status` value, as a static
/// NUL-terminated string; never freed. Unknown codes get a fallback string.
#[no_mangle]
pub extern "C" fn fr_status_message(status: u32) -> *const c_char {
    let message: &'static str = match status {
        x if x == fr_status::FR_OK as u32 => "ok\0",
        x if x == fr_status::FR_NULL_POINTER as u32 => "null pointer argument\0",
        x if x == fr_status::FR_INVALID_PARAMETER as u32 => "parameter out of range\0",
        x if x == fr_status::FR_INVALID_CONFIGURATION as u32 => "invalid scenario configuration\0",
        x if x == fr_status::FR_UNKNOWN_SCHEME as u32 => "unknown scheme identifier\0",
        x if x == fr_status::FR_UNKNOWN_ORDER as u32 => "unknown decoding order identifier\0",
        x if x == fr_status::FR_INDEX_OUT_OF_BOUNDS as u32 => "index out of bounds\0",
        _ => "unrecognized status code\0",
    };
    message.as_ptr().cast()
}

/// Shannon rate `log2(1 + snr)` of a Gaussian link at linear SNR `snr`;
/// NaN when `snr` is negative or not finite.
#[no_mangle]
pub extern "C" fn fr_capacity(snr: f64) -> f64 {
    if snr.is_finite() && snr >= 0.0 {
        capacity(snr)
    } else {
        f64::NAN
    }
}

/// Elementary quantization noise level for the given SNRs and forward
/// capacity. Infinite when `c_up` is zero.
///
/// # Safety
/// `out_beta` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_beta_eq(snr: fr_snr, c_up: f64, out_beta: *mut f64) -> fr_status {
    if out_beta.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let (snr, caps) = match (snr_from(snr), backhaul_from(fr_backhaul { c_up, c_down: 0.0 })) {
        (Ok(s), Ok(c)) => (s, c),
        _ => return fr_status::FR_INVALID_PARAMETER,
    };
    unsafe { *out_beta = beta_eq(&snr, caps.c_up) };
    fr_status::FR_OK
}

/// Wyner-Ziv quantization noise level; never exceeds the elementary one.
/// Infinite when `c_up` is zero.
///
/// # Safety
/// `out_beta` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_beta_wzq(snr: fr_snr, c_up: f64, out_beta: *mut f64) -> fr_status {
    if out_beta.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let (snr, caps) = match (snr_from(snr), backhaul_from(fr_backhaul { c_up, c_down: 0.0 })) {
        (Ok(s), Ok(c)) => (s, c),
        _ => return fr_status::FR_INVALID_PARAMETER,
    };
    unsafe { *out_beta = beta_wzq(&snr, caps.c_up) };
    fr_status::FR_OK
}

/// Side-information SNR delivered over the reverse pipe: `2^c_down - 1`.
///
/// # Safety
/// `out_gamma` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_gamma_qu(c_down: f64, out_gamma: *mut f64) -> fr_status {
    if out_gamma.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    if !(c_down.is_finite() && c_down >= 0.0) {
        return fr_status::FR_INVALID_PARAMETER;
    }
    unsafe { *out_gamma = gamma_qu(c_down) };
    fr_status::FR_OK
}

/// Residual of the Wyner-Ziv budget identity: how far the conditional
/// description rate at the computed noise level lands from `c_up`. A
/// correct implementation keeps this at rounding noise. `c_up` must be
/// strictly positive.
///
/// # Safety
/// `out_residual` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_wzq_identity_residual(snr: fr_snr, c_up: f64, out_residual: *mut f64) -> fr_status {
    if out_residual.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let snr = match snr_from(snr) {
        Ok(s) => s,
        Err(status) => return status,
    };
    // the tolerance only drives the pass flag, which this call ignores
    match verify_wzq_identity(&snr, c_up, f64::MAX) {
        Ok(check) => {
            unsafe { *out_residual = check.residual };
            fr_status::FR_OK
        }
        Err(_) => fr_status::FR_INVALID_PARAMETER,
    }
}

/// Rate-region corner of one scheme under one decoding order.
///
/// # Safety
/// `out_point` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_scheme_rates(
    scheme: u32,
    order: u32,
    snr: fr_snr,
    backhaul: fr_backhaul,
    out_point: *mut fr_rate_point,
) -> fr_status {
    if out_point.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let Some(scheme) = scheme_from_raw(scheme) else {
        return fr_status::FR_UNKNOWN_SCHEME;
    };
    let Some(order) = order_from_raw(order) else {
        return fr_status::FR_UNKNOWN_ORDER;
    };
    let (snr, caps) = match (snr_from(snr), backhaul_from(backhaul)) {
        (Ok(s), Ok(c)) => (s, c),
        _ => return fr_status::FR_INVALID_PARAMETER,
    };
    let point = scheme_rates(scheme, order, &snr, &caps);
    unsafe { *out_point = fr_rate_point { r_u: point.r_u, r_v: point.r_v } };
    fr_status::FR_OK
}

/// Both corners of one scheme plus its max-sum and max-min operating
/// points over the time-sharing hull.
///
/// # Safety
/// `out_report` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_evaluate_scheme(
    scheme: u32,
    snr: fr_snr,
    backhaul: fr_backhaul,
    out_report: *mut fr_scheme_report,
) -> fr_status {
    if out_report.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let Some(scheme) = scheme_from_raw(scheme) else {
        return fr_status::FR_UNKNOWN_SCHEME;
    };
    let (snr, caps) = match (snr_from(snr), backhaul_from(backhaul)) {
        (Ok(s), Ok(c)) => (s, c),
        _ => return fr_status::FR_INVALID_PARAMETER,
    };
    let outcome = &evaluate_snr(&snr, &caps, &[scheme])[0];
    let report = fr_scheme_report {
        uv: fr_rate_point { r_u: outcome.uv.r_u, r_v: outcome.uv.r_v },
        vu: fr_rate_point { r_u: outcome.vu.r_u, r_v: outcome.vu.r_v },
        max_sum: operating_point_from(&outcome.max_sum),
        max_min: operating_point_from(&outcome.max_min),
    };
    unsafe { *out_report = report };
    fr_status::FR_OK
}

/// Max-min rate over time sharing between two rate points, and the winning
/// time fraction on the first point.
///
/// # Safety
/// `out_value` must be a valid writable pointer; `out_lambda` may be null
/// if the time fraction is not needed.
#[no_mangle]
pub unsafe extern "C" fn fr_max_min_two(
    p1: fr_rate_point,
    p2: fr_rate_point,
    out_value: *mut f64,
    out_lambda: *mut f64,
) -> fr_status {
    if out_value.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let finite = |p: fr_rate_point| p.r_u.is_finite() && p.r_u >= 0.0 && p.r_v.is_finite() && p.r_v >= 0.0;
    if !finite(p1) || !finite(p2) {
        return fr_status::FR_INVALID_PARAMETER;
    }
    let solution = max_min_two_detailed((p1.r_u, p1.r_v), (p2.r_u, p2.r_v));
    unsafe { *out_value = solution.value };
    if !out_lambda.is_null() {
        unsafe { *out_lambda = solution.lambda };
    }
    fr_status::FR_OK
}

/// Creates a sweep over the forward backhaul capacity with the reverse
/// capacity tracking at `c_down_ratio`. Defaults: 200 m / 20 m cells with
/// the femto station 150 m out, path-loss exponent 3, 8 dB shadowing,
/// 10 dB power-control target, 10000 trials, master seed 42, every scheme.
///
/// # Safety
/// `values` must point to `n_values` readable doubles; `out_scenario` must
/// be a valid writable pointer. The returned handle must be released with
/// `fr_scenario_free`.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_new_backhaul_sweep(
    values: *const f64,
    n_values: usize,
    c_down_ratio: f64,
    out_scenario: *mut *mut fr_scenario,
) -> fr_status {
    if out_scenario.is_null() || (values.is_null() && n_values > 0) {
        return fr_status::FR_NULL_POINTER;
    }
    let values = if n_values == 0 {
        Vec::new()
    } else {
        unsafe { std::slice::from_raw_parts(values, n_values) }.to_vec()
    };
    let config = ScenarioConfig::backhaul_sweep(values, c_down_ratio);
    let handle = Box::into_raw(Box::new(fr_scenario { config }));
    unsafe { *out_scenario = handle };
    fr_status::FR_OK
}

/// Creates a sweep over the macro-to-femto station distance at fixed pipe
/// capacities. Same defaults as the backhaul sweep.
///
/// # Safety
/// `values` must point to `n_values` readable doubles; `out_scenario` must
/// be a valid writable pointer. The returned handle must be released with
/// `fr_scenario_free`.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_new_position_sweep(
    values: *const f64,
    n_values: usize,
    c_up: f64,
    c_down: f64,
    out_scenario: *mut *mut fr_scenario,
) -> fr_status {
    if out_scenario.is_null() || (values.is_null() && n_values > 0) {
        return fr_status::FR_NULL_POINTER;
    }
    let values = if n_values == 0 {
        Vec::new()
    } else {
        unsafe { std::slice::from_raw_parts(values, n_values) }.to_vec()
    };
    let config = ScenarioConfig::position_sweep(values, BackhaulCapacities { c_up, c_down });
    let handle = Box::into_raw(Box::new(fr_scenario { config }));
    unsafe { *out_scenario = handle };
    fr_status::FR_OK
}

/// Sets the cell layout: station distance and the two cell radii, meters.
/// Values are validated when the scenario runs.
///
/// # Safety
/// `scenario` must be a live handle from a constructor.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_set_geometry(
    scenario: *mut fr_scenario,
    s_o: f64,
    r_m: f64,
    r_f: f64,
) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_mut() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    scenario.config.geometry = NetworkGeometry { s_o, r_m, r_f };
    fr_status::FR_OK
}

/// Sets propagation and power control: path-loss exponent, shadowing
/// standard deviation in dB (0 disables shadowing), distance floor in
/// meters, and the power-control target SNR in dB. Values are validated
/// when the scenario runs.
///
/// # Safety
/// `scenario` must be a live handle from a constructor.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_set_propagation(
    scenario: *mut fr_scenario,
    alpha: f64,
    shadow_sigma_db: f64,
    d_min: f64,
    rx_snr_db: f64,
) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_mut() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    scenario.config.propagation = PropagationParams { alpha, shadow_sigma_db, d_min, rx_snr_db };
    fr_status::FR_OK
}

/// Sets the number of Monte Carlo trials per sweep value.
///
/// # Safety
/// `scenario` must be a live handle from a constructor.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_set_trials(scenario: *mut fr_scenario, trials: u64) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_mut() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    scenario.config.trials = trials as usize;
    fr_status::FR_OK
}

/// Sets the master seed. Every trial derives its own stream from it, so
/// results are reproducible for any worker count.
///
/// # Safety
/// `scenario` must be a live handle from a constructor.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_set_seed(scenario: *mut fr_scenario, seed: u64) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_mut() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    scenario.config.master_seed = seed;
    fr_status::FR_OK
}

/// Replaces the evaluated scheme set with the given `FR_SCHEME_*` values.
///
/// # Safety
/// `scenario` must be a live handle; `schemes` must point to `n_schemes`
/// readable identifiers.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_set_schemes(
    scenario: *mut fr_scenario,
    schemes: *const u32,
    n_schemes: usize,
) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_mut() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    if schemes.is_null() && n_schemes > 0 {
        return fr_status::FR_NULL_POINTER;
    }
    let raw: &[u32] = if n_schemes == 0 {
        &[]
    } else {
        unsafe { std::slice::from_raw_parts(schemes, n_schemes) }
    };
    let mut parsed = Vec::with_capacity(raw.len());
    for &value in raw {
        match scheme_from_raw(value) {
            Some(scheme) => parsed.push(scheme),
            None => return fr_status::FR_UNKNOWN_SCHEME,
        }
    }
    scenario.config.schemes = parsed;
    fr_status::FR_OK
}

/// Validates the scenario and runs the full sweep. On success the new
/// summary handle is written to `out_summary`.
///
/// # Safety
/// `scenario` must be a live handle; `out_summary` must be a valid
/// writable pointer. The returned handle must be released with
/// `fr_summary_free`.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_run(scenario: *const fr_scenario, out_summary: *mut *mut fr_summary) -> fr_status {
    let Some(scenario) = (unsafe { scenario.as_ref() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    if out_summary.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    match run_sweep(&scenario.config) {
        Ok(summary) => {
            let handle = Box::into_raw(Box::new(fr_summary { config: scenario.config.clone(), summary }));
            unsafe { *out_summary = handle };
            fr_status::FR_OK
        }
        Err(ConfigError::Param(_)) => fr_status::FR_INVALID_PARAMETER,
        Err(_) => fr_status::FR_INVALID_CONFIGURATION,
    }
}

/// Releases a scenario handle. Passing null is a no-op.
///
/// # Safety
/// `scenario` must be null or a live handle, and must not be used again.
#[no_mangle]
pub unsafe extern "C" fn fr_scenario_free(scenario: *mut fr_scenario) {
    if !scenario.is_null() {
        drop(unsafe { Box::from_raw(scenario) });
    }
}

/// Number of rows in a summary: sweep values times schemes. Zero for null.
///
/// # Safety
/// `summary` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fr_summary_len(summary: *const fr_summary) -> usize {
    unsafe { summary.as_ref() }.map_or(0, |s| s.summary.rows.len())
}

/// Copies one summary row. Rows are ordered by sweep value, then by scheme
/// in the configured order.
///
/// # Safety
/// `summary` must be a live handle; `out_row` must be a valid writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_summary_get_row(
    summary: *const fr_summary,
    index: usize,
    out_row: *mut fr_summary_row,
) -> fr_status {
    let Some(summary) = (unsafe { summary.as_ref() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    if out_row.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let Some(row) = summary.summary.rows.get(index) else {
        return fr_status::FR_INDEX_OUT_OF_BOUNDS;
    };
    let out = fr_summary_row {
        sweep_value: row.sweep_value,
        mean_max_sum: row.mean_max_sum,
        se_max_sum: row.se_max_sum,
        mean_max_min: row.mean_max_min,
        se_max_min: row.se_max_min,
        mean_ru_maxmin: row.mean_ru_maxmin,
        mean_rv_maxmin: row.mean_rv_maxmin,
        mean_ru_maxsum: row.mean_ru_maxsum,
        mean_rv_maxsum: row.mean_rv_maxsum,
        trials: row.trials as u64,
        scheme: scheme_to_raw(row.scheme),
    };
    unsafe { *out_row = out };
    fr_status::FR_OK
}

/// Renders the summary as CSV with a `#` metadata preamble — the same
/// bytes the command-line tool writes. The string is heap-owned and must
/// be released with `fr_string_free`.
///
/// # Safety
/// `summary` must be a live handle; `out_csv` must be a valid writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn fr_summary_csv(summary: *const fr_summary, out_csv: *mut *mut c_char) -> fr_status {
    let Some(summary) = (unsafe { summary.as_ref() }) else {
        return fr_status::FR_NULL_POINTER;
    };
    if out_csv.is_null() {
        return fr_status::FR_NULL_POINTER;
    }
    let rendered = render_csv(&summary.config, &summary.summary);
    let c_string = CString::new(rendered).expect("CSV output never contains NUL bytes");
    unsafe { *out_csv = c_string.into_raw() };
    fr_status::FR_OK
}

/// Releases a summary handle. Passing null is a no-op.
///
/// # Safety
/// `summary` must be null or a live handle, and must not be used again.
#[no_mangle]
pub unsafe extern "C" fn fr_summary_free(summary: *mut fr_summary) {
    if !summary.is_null() {
        drop(unsafe { Box::from_raw(summary) });
    }
}

/// Releases a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `string` must be null or a string obtained from this library, and must
/// not be used again.
#[no_mangle]
pub unsafe extern "C" fn fr_string_free(string: *mut c_char) {
    if !string.is_null() {
        drop(unsafe { CString::from_raw(string) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    const SNR_REF: fr_snr = fr_snr { gamma_uf: 3.0, gamma_vf: 3.0, gamma_ub: 3.0 };
    const PIPES_REF: fr_backhaul = fr_backhaul { c_up: 2.0, c_down: 2.0 };

    #[test]
    fn version_and_status_messages_are_c_strings() {
        let version = unsafe { CStr::from_ptr(fr_version()) }.to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
        let ok = unsafe { CStr::from_ptr(fr_status_message(fr_status::FR_OK as u32)) };
        assert_eq!(ok.to_str().unwrap(), "ok");
        let unknown = unsafe { CStr::from_ptr(fr_status_message(999)) };
        assert_eq!(unknown.to_str().unwrap(), "unrecognized status code");
    }

    #[test]
    fn capacity_validates_its_input() {
        assert_eq!(fr_capacity(1.0), 1.0);
        assert_eq!(fr_capacity(3.0), 2.0);
        assert!(fr_capacity(-1.0).is_nan());
        assert!(fr_capacity(f64::NAN).is_nan());
    }

    #[test]
    fn reference_corners_round_trip_through_the_abi() {
        let mut point = fr_rate_point { r_u: 0.0, r_v: 0.0 };
        let status = unsafe { fr_scheme_rates(FR_SCHEME_DF, FR_ORDER_UV, SNR_REF, PIPES_REF, &mut point) };
        assert_eq!(status, fr_status::FR_OK);
        assert!((point.r_u - 0.8073549220576041).abs() < 1e-12);
        assert_eq!(point.r_v, 2.0);

        let mut beta = 0.0;
        assert_eq!(unsafe { fr_beta_eq(SNR_REF, 2.0, &mut beta) }, fr_status::FR_OK);
        assert!((beta - 7.0 / 3.0).abs() < 1e-12);
        assert_eq!(unsafe { fr_beta_wzq(SNR_REF, 2.0, &mut beta) }, fr_status::FR_OK);
        assert!((beta - 19.0 / 12.0).abs() < 1e-12);

        let mut gamma = 0.0;
        assert_eq!(unsafe { fr_gamma_qu(2.0, &mut gamma) }, fr_status::FR_OK);
        assert_eq!(gamma, 3.0);

        let mut residual = 1.0;
        assert_eq!(unsafe { fr_wzq_identity_residual(SNR_REF, 2.0, &mut residual) }, fr_status::FR_OK);
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn bad_identifiers_and_nulls_are_rejected() {
        let mut point = fr_rate_point { r_u: 0.0, r_v: 0.0 };
        assert_eq!(
            unsafe { fr_scheme_rates(99, FR_ORDER_UV, SNR_REF, PIPES_REF, &mut point) },
            fr_status::FR_UNKNOWN_SCHEME
        );
        assert_eq!(
            unsafe { fr_scheme_rates(FR_SCHEME_DF, 99, SNR_REF, PIPES_REF, &mut point) },
            fr_status::FR_UNKNOWN_ORDER
        );
        assert_eq!(
            unsafe { fr_scheme_rates(FR_SCHEME_DF, FR_ORDER_UV, SNR_REF, PIPES_REF, ptr::null_mut()) },
            fr_status::FR_NULL_POINTER
        );
        let bad = fr_snr { gamma_uf: -1.0, gamma_vf: 3.0, gamma_ub: 3.0 };
        assert_eq!(
            unsafe { fr_scheme_rates(FR_SCHEME_DF, FR_ORDER_UV, bad, PIPES_REF, &mut point) },
            fr_status::FR_INVALID_PARAMETER
        );
        let mut beta = 0.0;
        assert_eq!(unsafe { fr_beta_eq(bad, 2.0, &mut beta) }, fr_status::FR_INVALID_PARAMETER);
        assert_eq!(unsafe { fr_scenario_run(ptr::null(), &mut ptr::null_mut()) }, fr_status::FR_NULL_POINTER);
        assert_eq!(unsafe { fr_summary_len(ptr::null()) }, 0);
    }

    #[test]
    fn evaluate_scheme_reports_the_time_shared_optimum() {
        let mut report = fr_scheme_report {
            uv: fr_rate_point { r_u: 0.0, r_v: 0.0 },
            vu: fr_rate_point { r_u: 0.0, r_v: 0.0 },
            max_sum: fr_operating_point { r_u: 0.0, r_v: 0.0, lambda_uv: 0.0 },
            max_min: fr_operating_point { r_u: 0.0, r_v: 0.0, lambda_uv: 0.0 },
        };
        let status = unsafe { fr_evaluate_scheme(FR_SCHEME_DF, SNR_REF, PIPES_REF, &mut report) };
        assert_eq!(status, fr_status::FR_OK);
        // corners (log2(1.75), 2) and (2, log2(1.75)) are mirror images; the
        // equalizing mixture sits on the diagonal at their midpoint
        let expected = (0.8073549220576041 + 2.0) / 2.0;
        assert!((report.max_min.r_u - expected).abs() < 1e-12);
        assert!((report.max_min.r_v - expected).abs() < 1e-12);
        assert!((report.max_min.lambda_uv - 0.5).abs() < 1e-12);
        assert_eq!(report.max_sum.r_u + report.max_sum.r_v, report.uv.r_u + report.uv.r_v);
    }

    #[test]
    fn max_min_two_matches_the_closed_form() {
        let mut value = 0.0;
        let mut lambda = 0.0;
        let status = unsafe {
            fr_max_min_two(
                fr_rate_point { r_u: 2.0, r_v: 1.0 },
                fr_rate_point { r_u: 1.0, r_v: 2.0 },
                &mut value,
                &mut lambda,
            )
        };
        assert_eq!(status, fr_status::FR_OK);
        assert_eq!(value, 1.5);
        assert_eq!(lambda, 0.5);
        // the time fraction is optional
        let status = unsafe {
            fr_max_min_two(
                fr_rate_point { r_u: 2.0, r_v: 1.0 },
                fr_rate_point { r_u: 1.0, r_v: 2.0 },
                &mut value,
                ptr::null_mut(),
            )
        };
        assert_eq!(status, fr_status::FR_OK);
        let status = unsafe {
            fr_max_min_two(
                fr_rate_point { r_u: -2.0, r_v: 1.0 },
                fr_rate_point { r_u: 1.0, r_v: 2.0 },
                &mut value,
                ptr::null_mut(),
            )
        };
        assert_eq!(status, fr_status::FR_INVALID_PARAMETER);
    }

    /// Builds a small two-value sweep through the C API.
    unsafe fn small_scenario() -> *mut fr_scenario {
        let values = [0.5, 4.0];
        let mut scenario: *mut fr_scenario = ptr::null_mut();
        let status = fr_scenario_new_backhaul_sweep(values.as_ptr(), values.len(), 3.0, &mut scenario);
        assert_eq!(status, fr_status::FR_OK);
        assert_eq!(fr_scenario_set_trials(scenario, 128), fr_status::FR_OK);
        assert_eq!(fr_scenario_set_seed(scenario, 9), fr_status::FR_OK);
        assert_eq!(fr_scenario_set_propagation(scenario, 3.0, 0.0, 1.0, 10.0), fr_status::FR_OK);
        scenario
    }

    #[test]
    fn scenario_lifecycle_produces_the_native_results() {
        unsafe {
            let scenario = small_scenario();
            let mut summary: *mut fr_summary = ptr::null_mut();
            assert_eq!(fr_scenario_run(scenario, &mut summary), fr_status::FR_OK);
            assert_eq!(fr_summary_len(summary), 2 * 4);

            let mut row = std::mem::zeroed::<fr_summary_row>();
            assert_eq!(fr_summary_get_row(summary, 0, &mut row), fr_status::FR_OK);
            assert_eq!(row.sweep_value, 0.5);
            assert_eq!(row.scheme, FR_SCHEME_DF);
            assert_eq!(row.trials, 128);
            assert!(row.mean_max_sum > 0.0 && row.se_max_sum > 0.0);
            assert_eq!(fr_summary_get_row(summary, 8, &mut row), fr_status::FR_INDEX_OUT_OF_BOUNDS);

            // the CSV matches the native renderer byte for byte
            let mut csv: *mut c_char = ptr::null_mut();
            assert_eq!(fr_summary_csv(summary, &mut csv), fr_status::FR_OK);
            let through_c = CStr::from_ptr(csv).to_str().unwrap().to_owned();
            let mut config = ScenarioConfig::backhaul_sweep(vec![0.5, 4.0], 3.0);
            config.trials = 128;
            config.master_seed = 9;
            config.propagation.shadow_sigma_db = 0.0;
            let native = render_csv(&config, &run_sweep(&config).unwrap());
            assert_eq!(through_c, native);

            fr_string_free(csv);
            fr_summary_free(summary);
            fr_scenario_free(scenario);
        }
    }

    #[test]
    fn scenario_reruns_are_identical() {
        unsafe {
            let render = || {
                let scenario = small_scenario();
                let mut summary: *mut fr_summary = ptr::null_mut();
                assert_eq!(fr_scenario_run(scenario, &mut summary), fr_status::FR_OK);
                let mut csv: *mut c_char = ptr::null_mut();
                assert_eq!(fr_summary_csv(summary, &mut csv), fr_status::FR_OK);
                let text = CStr::from_ptr(csv).to_str().unwrap().to_owned();
                fr_string_free(csv);
                fr_summary_free(summary);
                fr_scenario_free(scenario);
                text
            };
            assert_eq!(render(), render());
        }
    }

    #[test]
    fn invalid_configurations_are_reported() {
        unsafe {
            let scenario = small_scenario();
            // geometry validated at run time
            assert_eq!(fr_scenario_set_geometry(scenario, 150.0, -1.0, 20.0), fr_status::FR_OK);
            let mut summary: *mut fr_summary = ptr::null_mut();
            assert_eq!(fr_scenario_run(scenario, &mut summary), fr_status::FR_INVALID_PARAMETER);
            fr_scenario_free(scenario);

            let scenario = small_scenario();
            let schemes = [FR_SCHEME_DF, FR_SCHEME_DF];
            assert_eq!(fr_scenario_set_schemes(scenario, schemes.as_ptr(), 2), fr_status::FR_OK);
            assert_eq!(fr_scenario_run(scenario, &mut summary), fr_status::FR_INVALID_CONFIGURATION);
            assert_eq!(fr_scenario_set_schemes(scenario, [42u32].as_ptr(), 1), fr_status::FR_UNKNOWN_SCHEME);
            fr_scenario_free(scenario);

            // empty sweeps are rejected when run
            let mut empty: *mut fr_scenario = ptr::null_mut();
            assert_eq!(
                fr_scenario_new_backhaul_sweep(ptr::null(), 0, 3.0, &mut empty),
                fr_status::FR_OK
            );
            assert_eq!(fr_scenario_run(empty, &mut summary), fr_status::FR_INVALID_CONFIGURATION);
            fr_scenario_free(empty);
        }
    }

    #[test]
    fn scheme_subsets_flow_through() {
        unsafe {
            let scenario = small_scenario();
            let schemes = [FR_SCHEME_QF_WZQ];
            assert_eq!(fr_scenario_set_schemes(scenario, schemes.as_ptr(), 1), fr_status::FR_OK);
            let mut summary: *mut fr_summary = ptr::null_mut();
            assert_eq!(fr_scenario_run(scenario, &mut summary), fr_status::FR_OK);
            assert_eq!(fr_summary_len(summary), 2);
            let mut row = std::mem::zeroed::<fr_summary_row>();
            assert_eq!(fr_summary_get_row(summary, 1, &mut row), fr_status::FR_OK);
            assert_eq!(row.scheme, FR_SCHEME_QF_WZQ);
            assert_eq!(row.sweep_value, 4.0);
            fr_summary_free(summary);
            fr_scenario_free(scenario);
        }
    }
}
