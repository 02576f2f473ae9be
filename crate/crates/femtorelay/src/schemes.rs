//! Achievable rate pairs for the four forwarding schemes.
//!
//! Macro user U is heard at both stations, femto user V only at the femto
//! station, and the femto station reaches the macro decoder through a
//! lossless pipe of `c_up` b/s/Hz. The schemes differ in what rides that
//! pipe:
//!
//! * DF: the femto station decodes V locally and forwards the re-encoded
//!   message; the macro station decodes U from its own antenna.
//! * QF: the femto station quantizes its received signal and forwards the
//!   index; the macro decoder combines it with its own antenna. The
//!   elementary quantizer spends `c_up` unconditionally, the Wyner-Ziv
//!   quantizer bins against the macro station's own observation and gets
//!   away with less quantization noise for the same budget.
//! * DFQSI: DF, plus a quantized description of U's signal sent back to the
//!   femto station over a reverse pipe of `c_down`, which helps the femto
//!   station strip U before decoding V.
//!
//! Decoding order `UV` means U is decoded first (under V's interference)
//! and then cancelled; `VU` the opposite. All rates are b/s/Hz.

use std::f64::consts::LN_2;

use crate::channel::SnrTriplet;
use crate::{check, ParamError};

/// Gaussian point-to-point capacity `log2(1 + snr)`.
#[inline]
pub fn capacity(snr: f64) -> f64 {
    (1.0 + snr).log2()
}

/// `2^c - 1`, the SNR needed to carry rate `c`. Exact zero at `c = 0`.
#[inline]
pub fn pow2m1(c: f64) -> f64 {
    (c * LN_2).exp_m1()
}

/// Forwarding scheme run by the femto station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Df,
    QfEq,
    QfWzq,
    Dfqsi,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Df, Scheme::QfEq, Scheme::QfWzq, Scheme::Dfqsi];

    /// Stable identifier used in CSV output and CLI flags.
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Df => "DF",
            Scheme::QfEq => "QF_EQ",
            Scheme::QfWzq => "QF_WZQ",
            Scheme::Dfqsi => "DFQSI",
        }
    }

    /// Inverse of [`Scheme::label`], case-insensitive.
    pub fn parse(s: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|scheme| scheme.label().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Successive cancellation order: which user is decoded first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodingOrder {
    Uv,
    Vu,
}

impl DecodingOrder {
    pub const BOTH: [DecodingOrder; 2] = [DecodingOrder::Uv, DecodingOrder::Vu];

    pub fn label(self) -> &'static str {
        match self {
            DecodingOrder::Uv => "UV",
            DecodingOrder::Vu => "VU",
        }
    }
}

impl std::fmt::Display for DecodingOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Backhaul capacities in b/s/Hz: `c_up` from the femto station to the
/// macro decoder, `c_down` the reverse direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackhaulCapacities {
    pub c_up: f64,
    pub c_down: f64,
}

impl BackhaulCapacities {
    pub fn new(c_up: f64, c_down: f64) -> Result<Self, ParamError> {
        let c = Self { c_up, c_down };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check("c_up", self.c_up, self.c_up.is_finite() && self.c_up >= 0.0)?;
        check("c_down", self.c_down, self.c_down.is_finite() && self.c_down >= 0.0)
    }
}

/// One corner of a scheme's rate region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub r_u: f64,
    pub r_v: f64,
    pub scheme: Scheme,
    pub order: DecodingOrder,
}

impl RatePoint {
    pub fn pair(&self) -> (f64, f64) {
        (self.r_u, self.r_v)
    }
}

/// Quantizer family used by QF.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantizer {
    Elementary,
    WynerZiv,
}

/// Quantization bookkeeping for one realization: forward-pipe noise `beta`
/// and reverse-pipe side-information SNR `gamma_qu`. `beta` is infinite
/// when `c_up` is 0 (the pipe carries nothing); `gamma_qu` is 0 when
/// `c_down` is 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationState {
    pub beta: f64,
    pub gamma_qu: f64,
}

pub fn quantization_state(quantizer: Quantizer, snr: &SnrTriplet, caps: &BackhaulCapacities) -> QuantizationState {
    let beta = match quantizer {
        Quantizer::Elementary => beta_eq(snr, caps.c_up),
        Quantizer::WynerZiv => beta_wzq(snr, caps.c_up),
    };
    QuantizationState { beta, gamma_qu: gamma_qu(caps.c_down) }
}

/// DF corner for the given order.
///
/// UV: the femto station decodes U under V's interference, strips it, then
/// decodes V interference-free; V's message rides the backhaul. VU: V is
/// decoded under U's interference and U's femto-side constraint disappears.
/// Either way the macro station decodes U from its own antenna.
pub fn df_rates(order: DecodingOrder, snr: &SnrTriplet, c_up: f64) -> RatePoint {
    let (r_u, r_v) = match order {
        DecodingOrder::Uv => (
            capacity(snr.gamma_uf / (snr.gamma_vf + 1.0)).min(capacity(snr.gamma_ub)),
            c_up.min(capacity(snr.gamma_vf)),
        ),
        DecodingOrder::Vu => (
            capacity(snr.gamma_ub),
            c_up.min(capacity(snr.gamma_vf / (snr.gamma_uf + 1.0))),
        ),
    };
    RatePoint { r_u, r_v, scheme: Scheme::Df, order }
}

/// Quantization noise of the elementary quantizer: the whole femto
/// observation is described at rate `c_up`, so the noise absorbs its full
/// power. Infinite when `c_up` is 0.
pub fn beta_eq(snr: &SnrTriplet, c_up: f64) -> f64 {
    if c_up == 0.0 {
        return f64::INFINITY;
    }
    (snr.gamma_uf + snr.gamma_vf + 1.0) / pow2m1(c_up)
}

/// Quantization noise of the Wyner-Ziv quantizer: binning against the macro
/// station's own observation discounts the part of U's signal the decoder
/// already sees, so this never exceeds `beta_eq`. Infinite when `c_up` is 0.
pub fn beta_wzq(snr: &SnrTriplet, c_up: f64) -> f64 {
    if c_up == 0.0 {
        return f64::INFINITY;
    }
    let budget = pow2m1(c_up);
    (snr.gamma_vf + 1.0) / budget + snr.gamma_uf / (budget * (snr.gamma_ub + 1.0))
}

/// QF corner for the given order at quantization noise `beta`.
///
/// The macro decoder works on its own antenna plus the quantized femto
/// observation, whose effective noise floor is `1 + beta`. `beta = inf` is
/// the dead-backhaul limit: U falls back to the direct link and V is lost.
pub fn qf_rates(quantizer: Quantizer, order: DecodingOrder, snr: &SnrTriplet, beta: f64) -> RatePoint {
    let scheme = match quantizer {
        Quantizer::Elementary => Scheme::QfEq,
        Quantizer::WynerZiv => Scheme::QfWzq,
    };
    if beta.is_infinite() {
        return RatePoint { r_u: capacity(snr.gamma_ub), r_v: 0.0, scheme, order };
    }
    let (r_u, r_v) = match order {
        DecodingOrder::Uv => (
            capacity(snr.gamma_ub + snr.gamma_uf / (snr.gamma_vf + 1.0 + beta)),
            capacity(snr.gamma_vf / (1.0 + beta)),
        ),
        DecodingOrder::Vu => (
            capacity(snr.gamma_ub + snr.gamma_uf / (1.0 + beta)),
            capacity(snr.gamma_vf / (snr.gamma_uf / (snr.gamma_ub + 1.0) + 1.0 + beta)),
        ),
    };
    RatePoint { r_u, r_v, scheme, order }
}

/// Side-information SNR delivered over the reverse pipe: `2^c_down - 1`.
pub fn gamma_qu(c_down: f64) -> f64 {
    pow2m1(c_down)
}

/// DFQSI corner: DF with a quantized description of U's signal pre-shared
/// to the femto station, which boosts U's femto-side decoding SNR by
/// `gamma_qu` in the UV order. The VU order never decodes U at the femto
/// station, so it coincides with DF.
pub fn dfqsi_rates(order: DecodingOrder, snr: &SnrTriplet, caps: &BackhaulCapacities) -> RatePoint {
    let (r_u, r_v) = match order {
        DecodingOrder::Uv => (
            capacity(gamma_qu(caps.c_down) + snr.gamma_uf / (snr.gamma_vf + 1.0)).min(capacity(snr.gamma_ub)),
            caps.c_up.min(capacity(snr.gamma_vf)),
        ),
        DecodingOrder::Vu => {
            let df = df_rates(DecodingOrder::Vu, snr, caps.c_up);
            (df.r_u, df.r_v)
        }
    };
    RatePoint { r_u, r_v, scheme: Scheme::Dfqsi, order }
}

/// Corner for any scheme, deriving the quantizer state from the capacities.
pub fn scheme_rates(scheme: Scheme, order: DecodingOrder, snr: &SnrTriplet, caps: &BackhaulCapacities) -> RatePoint {
    match scheme {
        Scheme::Df => df_rates(order, snr, caps.c_up),
        Scheme::QfEq => qf_rates(Quantizer::Elementary, order, snr, beta_eq(snr, caps.c_up)),
        Scheme::QfWzq => qf_rates(Quantizer::WynerZiv, order, snr, beta_wzq(snr, caps.c_up)),
        Scheme::Dfqsi => dfqsi_rates(order, snr, caps),
    }
}

/// Outcome of the Wyner-Ziv budget check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WzqIdentityCheck {
    pub beta: f64,
    pub mutual_information: f64,
    pub residual: f64,
    pub passed: bool,
}

/// Checks that the Wyner-Ziv noise level spends exactly the forward budget.
///
/// Builds the joint Gaussian of the macro observation `Y_B`, the femto
/// observation `Y_F`, and its quantized copy `Yhat = Y_F + Z_Q` with
/// `Var(Z_Q) = beta_wzq`, then evaluates the conditional description rate
/// `I(Y_F; Yhat | Y_B) = log2(Var(Yhat | Y_B) / beta)` from the covariance
/// entries alone. A correct noise level makes this equal `c_up`;
/// `residual` is the absolute gap.
pub fn verify_wzq_identity(snr: &SnrTriplet, c_up: f64, tolerance: f64) -> Result<WzqIdentityCheck, ParamError> {
    snr.validate()?;
    check("c_up", c_up, c_up.is_finite() && c_up > 0.0)?;
    check("tolerance", tolerance, tolerance.is_finite() && tolerance >= 0.0)?;

    let beta = beta_wzq(snr, c_up);
    // circularly symmetric signals with unit thermal noise: powers add
    let var_yb = snr.gamma_ub + 1.0;
    let var_yhat = snr.gamma_uf + snr.gamma_vf + 1.0 + beta;
    let cov = (snr.gamma_ub * snr.gamma_uf).sqrt(); // U's signal is the shared part
    let var_yhat_given_yb = var_yhat - cov * cov / var_yb;
    check("conditional_variance", var_yhat_given_yb, var_yhat_given_yb.is_finite() && var_yhat_given_yb > 0.0)?;

    let mutual_information = (var_yhat_given_yb / beta).log2();
    let residual = (mutual_information - c_up).abs();
    Ok(WzqIdentityCheck { beta, mutual_information, residual, passed: residual <= tolerance })
}
