//! Uplink channel model for the two-tier layout.
//!
//! The macro station sits at the origin, the femto station at `(s_o, 0)`.
//! Each trial drops the macro user U uniformly over a disk of radius `r_m`
//! around the macro station and the femto user V uniformly over a disk of
//! radius `r_f` around the femto station. Both users are power controlled
//! toward their serving station, so the received SNR there equals the
//! control target regardless of position; the only geometry-dependent
//! quantity left is the cross SNR of U heard at the femto station.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{check, ParamError};

/// Cell layout, distances in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkGeometry {
    /// Macro-to-femto station distance.
    pub s_o: f64,
    /// Macro cell radius.
    pub r_m: f64,
    /// Femto cell radius.
    pub r_f: f64,
}

impl NetworkGeometry {
    pub fn new(s_o: f64, r_m: f64, r_f: f64) -> Result<Self, ParamError> {
        let g = Self { s_o, r_m, r_f };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check("s_o", self.s_o, self.s_o.is_finite() && self.s_o >= 0.0)?;
        check("r_m", self.r_m, self.r_m.is_finite() && self.r_m > 0.0)?;
        check("r_f", self.r_f, self.r_f.is_finite() && self.r_f > 0.0)
    }
}

impl Default for NetworkGeometry {
    fn default() -> Self {
        Self { s_o: 150.0, r_m: 200.0, r_f: 20.0 }
    }
}

/// Propagation and power-control parameters.
///
/// The path-loss law is `gain = K * g / d^alpha` with log-normal shadowing
/// `g`; the reference constant `K` cancels out of every quantity this model
/// produces, so it never appears. Distances below `d_min` are clamped to
/// keep the near-field gain finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationParams {
    /// Path-loss exponent.
    pub alpha: f64,
    /// Shadowing standard deviation in dB; 0 disables shadowing.
    pub shadow_sigma_db: f64,
    /// Distance floor in meters.
    pub d_min: f64,
    /// Power-control target SNR at the serving station, in dB.
    pub rx_snr_db: f64,
}

impl PropagationParams {
    pub fn new(alpha: f64, shadow_sigma_db: f64, d_min: f64, rx_snr_db: f64) -> Result<Self, ParamError> {
        let p = Self { alpha, shadow_sigma_db, d_min, rx_snr_db };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check("alpha", self.alpha, self.alpha.is_finite() && self.alpha > 0.0)?;
        check(
            "shadow_sigma_db",
            self.shadow_sigma_db,
            self.shadow_sigma_db.is_finite() && self.shadow_sigma_db >= 0.0,
        )?;
        check("d_min", self.d_min, self.d_min.is_finite() && self.d_min > 0.0)?;
        check("rx_snr_db", self.rx_snr_db, self.rx_snr_db.is_finite())
    }

    /// Power-control target as a linear SNR.
    pub fn rx_snr(&self) -> f64 {
        10f64.powf(self.rx_snr_db / 10.0)
    }
}

impl Default for PropagationParams {
    fn default() -> Self {
        Self { alpha: 3.0, shadow_sigma_db: 8.0, d_min: 1.0, rx_snr_db: 10.0 }
    }
}

/// User positions for one trial, Cartesian meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub u_pos: (f64, f64),
    pub v_pos: (f64, f64),
}

/// Received SNRs of one realization, all linear.
///
/// `gamma_uf` is the macro user heard at the femto station, `gamma_vf` the
/// femto user at its own station, `gamma_ub` the macro user at the macro
/// station. Power control pins `gamma_vf` and `gamma_ub` to the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrTriplet {
    pub gamma_uf: f64,
    pub gamma_vf: f64,
    pub gamma_ub: f64,
}

impl SnrTriplet {
    pub fn new(gamma_uf: f64, gamma_vf: f64, gamma_ub: f64) -> Result<Self, ParamError> {
        let s = Self { gamma_uf, gamma_vf, gamma_ub };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check("gamma_uf", self.gamma_uf, self.gamma_uf.is_finite() && self.gamma_uf >= 0.0)?;
        check("gamma_vf", self.gamma_vf, self.gamma_vf.is_finite() && self.gamma_vf >= 0.0)?;
        check("gamma_ub", self.gamma_ub, self.gamma_ub.is_finite() && self.gamma_ub >= 0.0)
    }
}

/// Linear shadowing power gains on the two links that involve the macro
/// user. The femto user's own link gain cancels under power control, so it
/// is never drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowGains {
    pub uf: f64,
    pub ub: f64,
}

impl ShadowGains {
    pub const UNITY: ShadowGains = ShadowGains { uf: 1.0, ub: 1.0 };
}

/// Draws one uniform point per disk. Consumes exactly four uniforms from
/// `rng`, in the order U radius, U angle, V radius, V angle.
pub fn sample_placement<R: Rng + ?Sized>(rng: &mut R, geometry: &NetworkGeometry) -> Placement {
    let u_pos = disk_point(rng, (0.0, 0.0), geometry.r_m);
    let v_pos = disk_point(rng, (geometry.s_o, 0.0), geometry.r_f);
    Placement { u_pos, v_pos }
}

fn disk_point<R: Rng + ?Sized>(rng: &mut R, center: (f64, f64), radius: f64) -> (f64, f64) {
    // sqrt on the radial uniform makes the density uniform over area
    let r = radius * rng.gen::<f64>().sqrt();
    let phi = TAU * rng.gen::<f64>();
    (center.0 + r * phi.cos(), center.1 + r * phi.sin())
}

/// Draws the two log-normal gains (UF link first, then UB), or returns unit
/// gains without consuming the RNG when shadowing is disabled.
pub fn sample_shadow_gains<R: Rng + ?Sized>(rng: &mut R, params: &PropagationParams) -> ShadowGains {
    if params.shadow_sigma_db == 0.0 {
        return ShadowGains::UNITY;
    }
    let mut draw = || {
        let z: f64 = rng.sample(StandardNormal);
        10f64.powf(params.shadow_sigma_db * z / 10.0)
    };
    ShadowGains { uf: draw(), ub: draw() }
}

/// Received SNRs for one placement.
///
/// Power control makes `gamma_vf` and `gamma_ub` equal the target exactly.
/// The cross SNR is `target * (d_UB / d_UF)^alpha * (g_UF / g_UB)`: the
/// path-loss reference constant divides out, so the result is invariant to
/// scaling both shadow gains by a common factor.
pub fn snr_triplet(
    placement: &Placement,
    geometry: &NetworkGeometry,
    params: &PropagationParams,
    shadow: &ShadowGains,
) -> Result<SnrTriplet, ParamError> {
    geometry.validate()?;
    params.validate()?;
    check("shadow_gain_uf", shadow.uf, shadow.uf.is_finite() && shadow.uf > 0.0)?;
    check("shadow_gain_ub", shadow.ub, shadow.ub.is_finite() && shadow.ub > 0.0)?;

    let d_ub = distance(placement.u_pos, (0.0, 0.0)).max(params.d_min);
    let d_uf = distance(placement.u_pos, (geometry.s_o, 0.0)).max(params.d_min);
    let target = params.rx_snr();
    let gamma_uf = target * (d_ub / d_uf).powf(params.alpha) * (shadow.uf / shadow.ub);
    Ok(SnrTriplet { gamma_uf, gamma_vf: target, gamma_ub: target })
}

fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}
