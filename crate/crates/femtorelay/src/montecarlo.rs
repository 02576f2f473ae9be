//! Seeded Monte Carlo over user drops.
//!
//! Every trial derives its own RNG seed from the master seed and its
//! position in the sweep, so trials can run on any number of rayon workers
//! while the aggregation (done in trial order, value-major, scheme-minor)
//! stays bit-identical across runs and worker counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{self, NetworkGeometry, PropagationParams, SnrTriplet};
use crate::region::{max_min_region, max_sum_rate, OperatingPoint, RateRegion};
use crate::schemes::{scheme_rates, BackhaulCapacities, DecodingOrder, RatePoint, Scheme};
use crate::{check, ParamError};

/// What a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Forward backhaul capacity `c_up`, b/s/Hz.
    UplinkCapacity,
    /// Macro-to-femto station distance `s_o`, meters.
    StationDistance,
}

impl SweepVariable {
    /// Column value in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::UplinkCapacity => "c_up",
            SweepVariable::StationDistance => "s_o",
        }
    }
}

/// How the reverse-pipe capacity follows the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CDownRule {
    Fixed(f64),
    /// `c_down = ratio * c_up`, tracking the swept or base uplink value.
    UplinkRatio(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
}

/// Full description of one Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: NetworkGeometry,
    pub propagation: PropagationParams,
    /// Base uplink capacity; ignored while the sweep varies `c_up`.
    pub c_up: f64,
    pub c_down: CDownRule,
    pub schemes: Vec<Scheme>,
    pub trials: usize,
    pub master_seed: u64,
    pub sweep: Sweep,
}

impl ScenarioConfig {
    /// Sweep `c_up` over `values` with `c_down` tracking at `ratio`,
    /// default geometry and propagation, 10^4 trials.
    pub fn backhaul_sweep(values: Vec<f64>, ratio: f64) -> Self {
        Self {
            geometry: NetworkGeometry::default(),
            propagation: PropagationParams::default(),
            c_up: 0.0,
            c_down: CDownRule::UplinkRatio(ratio),
            schemes: Scheme::ALL.to_vec(),
            trials: 10_000,
            master_seed: 42,
            sweep: Sweep { variable: SweepVariable::UplinkCapacity, values },
        }
    }

    /// Sweep the station distance `s_o` over `values` at fixed capacities.
    pub fn position_sweep(values: Vec<f64>, caps: BackhaulCapacities) -> Self {
        Self {
            geometry: NetworkGeometry::default(),
            propagation: PropagationParams::default(),
            c_up: caps.c_up,
            c_down: CDownRule::Fixed(caps.c_down),
            schemes: Scheme::ALL.to_vec(),
            trials: 10_000,
            master_seed: 42,
            sweep: Sweep { variable: SweepVariable::StationDistance, values },
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.geometry.validate()?;
        self.propagation.validate()?;
        check("c_up", self.c_up, self.c_up.is_finite() && self.c_up >= 0.0)?;
        match self.c_down {
            CDownRule::Fixed(c) => check("c_down", c, c.is_finite() && c >= 0.0)?,
            CDownRule::UplinkRatio(r) => check("c_down_ratio", r, r.is_finite() && r >= 0.0)?,
        }
        if self.schemes.is_empty() {
            return Err(ConfigError::NoSchemes);
        }
        for (i, &s) in self.schemes.iter().enumerate() {
            if self.schemes[..i].contains(&s) {
                return Err(ConfigError::DuplicateScheme(s));
            }
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.sweep.values.is_empty() {
            return Err(ConfigError::NoValues);
        }
        for (i, &v) in self.sweep.values.iter().enumerate() {
            let increasing = i == 0 || v > self.sweep.values[i - 1];
            if !(v.is_finite() && v >= 0.0 && increasing) {
                return Err(ConfigError::BadValue(i));
            }
        }
        Ok(())
    }

    /// Freezes the scenario at one sweep value.
    pub fn resolve(&self, value: f64) -> ResolvedScenario {
        let mut geometry = self.geometry;
        let c_up = match self.sweep.variable {
            SweepVariable::UplinkCapacity => value,
            SweepVariable::StationDistance => {
                geometry.s_o = value;
                self.c_up
            }
        };
        let c_down = match self.c_down {
            CDownRule::Fixed(c) => c,
            CDownRule::UplinkRatio(r) => r * c_up,
        };
        ResolvedScenario {
            geometry,
            propagation: self.propagation,
            caps: BackhaulCapacities { c_up, c_down },
            schemes: self.schemes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("at least one scheme required")]
    NoSchemes,
    #[error("scheme {} listed twice", .0.label())]
    DuplicateScheme(Scheme),
    #[error("at least one trial required")]
    NoTrials,
    #[error("sweep needs at least one value")]
    NoValues,
    #[error("sweep value {0} must be finite, nonnegative, and strictly increasing")]
    BadValue(usize),
}

/// One sweep point with everything a trial needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedScenario {
    pub geometry: NetworkGeometry,
    pub propagation: PropagationParams,
    pub caps: BackhaulCapacities,
    pub schemes: Vec<Scheme>,
}

/// Rates and operating points of one scheme on one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeOutcome {
    pub scheme: Scheme,
    pub uv: RatePoint,
    pub vu: RatePoint,
    pub max_sum: OperatingPoint,
    pub max_min: OperatingPoint,
}

/// One channel realization with every configured scheme evaluated on it.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub snr: SnrTriplet,
    pub outcomes: Vec<SchemeOutcome>,
}

/// Evaluates the schemes on one SNR realization. Each scheme's region is
/// the time-sharing hull of its two decoding orders.
pub fn evaluate_snr(snr: &SnrTriplet, caps: &BackhaulCapacities, schemes: &[Scheme]) -> Vec<SchemeOutcome> {
    schemes
        .iter()
        .map(|&scheme| {
            let uv = scheme_rates(scheme, DecodingOrder::Uv, snr, caps);
            let vu = scheme_rates(scheme, DecodingOrder::Vu, snr, caps);
            let region = RateRegion::new(vec![uv.pair(), vu.pair()]).expect("scheme rates are finite and nonnegative");
            SchemeOutcome { scheme, uv, vu, max_sum: max_sum_rate(&region), max_min: max_min_region(&region) }
        })
        .collect()
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one trial, mixed from the master seed and the trial's position
/// in the sweep. Pure function of its inputs: no state is shared between
/// workers, which is what makes parallel runs reproducible.
pub fn trial_seed(master_seed: u64, value_index: u64, trial_index: u64) -> u64 {
    const STRIDE: u64 = 0x9e37_79b9_7f4a_7c15;
    let per_value = mix64(master_seed ^ mix64(value_index.wrapping_mul(STRIDE).wrapping_add(STRIDE)));
    mix64(per_value ^ trial_index.wrapping_mul(STRIDE))
}

/// Runs one seeded trial: drop users, draw shadowing, evaluate schemes.
/// The RNG is consumed in a fixed order (placement, then shadow gains), so
/// a trial is a pure function of its seed and the resolved scenario.
pub fn run_trial(trial_seed: u64, scenario: &ResolvedScenario) -> TrialResult {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let placement = channel::sample_placement(&mut rng, &scenario.geometry);
    let shadow = channel::sample_shadow_gains(&mut rng, &scenario.propagation);
    let snr = channel::snr_triplet(&placement, &scenario.geometry, &scenario.propagation, &shadow)
        .expect("a validated scenario always yields valid sampler inputs");
    TrialResult { outcomes: evaluate_snr(&snr, &scenario.caps, &scenario.schemes), snr }
}

/// Aggregates for one (sweep value, scheme) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub sweep_value: f64,
    pub scheme: Scheme,
    pub mean_max_sum: f64,
    pub se_max_sum: f64,
    pub mean_max_min: f64,
    pub se_max_min: f64,
    pub mean_ru_maxmin: f64,
    pub mean_rv_maxmin: f64,
    pub mean_ru_maxsum: f64,
    pub mean_rv_maxsum: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub variable: SweepVariable,
    pub rows: Vec<SummaryRow>,
}

/// Runs the whole sweep. Trials are distributed over the rayon pool and
/// collected back into trial order before folding, so the summary is
/// bit-identical for any worker count.
pub fn run_sweep(config: &ScenarioConfig) -> Result<SweepSummary, ConfigError> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.sweep.values.len() * config.schemes.len());
    for (value_index, &value) in config.sweep.values.iter().enumerate() {
        let scenario = config.resolve(value);
        let trials: Vec<TrialResult> = (0..config.trials)
            .into_par_iter()
            .map(|trial_index| {
                run_trial(trial_seed(config.master_seed, value_index as u64, trial_index as u64), &scenario)
            })
            .collect();
        for (scheme_index, &scheme) in config.schemes.iter().enumerate() {
            rows.push(summarize_cell(value, scheme, scheme_index, &trials));
        }
    }
    Ok(SweepSummary { variable: config.sweep.variable, rows })
}

fn summarize_cell(sweep_value: f64, scheme: Scheme, scheme_index: usize, trials: &[TrialResult]) -> SummaryRow {
    let series = |f: &dyn Fn(&SchemeOutcome) -> f64| -> Vec<f64> {
        trials
            .iter()
            .map(|t| {
                let outcome = &t.outcomes[scheme_index];
                debug_assert_eq!(outcome.scheme, scheme);
                f(outcome)
            })
            .collect()
    };
    let (mean_max_sum, se_max_sum) = mean_se(&series(&|o| o.max_sum.sum()));
    let (mean_max_min, se_max_min) = mean_se(&series(&|o| o.max_min.min_rate()));
    let (mean_ru_maxmin, _) = mean_se(&series(&|o| o.max_min.r_u));
    let (mean_rv_maxmin, _) = mean_se(&series(&|o| o.max_min.r_v));
    let (mean_ru_maxsum, _) = mean_se(&series(&|o| o.max_sum.r_u));
    let (mean_rv_maxsum, _) = mean_se(&series(&|o| o.max_sum.r_v));
    SummaryRow {
        sweep_value,
        scheme,
        mean_max_sum,
        se_max_sum,
        mean_max_min,
        se_max_min,
        mean_ru_maxmin,
        mean_rv_maxmin,
        mean_ru_maxsum,
        mean_rv_maxsum,
        trials: trials.len(),
    }
}

/// Sample mean and its standard error (sample standard deviation over
/// sqrt(n)); a single sample reports zero error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    assert!(!xs.is_empty(), "mean of an empty series");
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Placement, ShadowGains};
    use approx::assert_relative_eq;

    fn small_config() -> ScenarioConfig {
        let mut cfg = ScenarioConfig::backhaul_sweep(vec![0.5, 2.0, 8.0], 3.0);
        cfg.propagation.shadow_sigma_db = 0.0;
        cfg.trials = 400;
        cfg
    }

    #[test]
    fn validation_catches_malformed_configs() {
        let mut cfg = small_config();
        cfg.trials = 0;
        assert_eq!(cfg.validate(), Err(ConfigError::NoTrials));

        let mut cfg = small_config();
        cfg.schemes.clear();
        assert_eq!(cfg.validate(), Err(ConfigError::NoSchemes));

        let mut cfg = small_config();
        cfg.schemes.push(Scheme::Df);
        assert_eq!(cfg.validate(), Err(ConfigError::DuplicateScheme(Scheme::Df)));

        let mut cfg = small_config();
        cfg.sweep.values = vec![1.0, 1.0];
        assert_eq!(cfg.validate(), Err(ConfigError::BadValue(1)));

        let mut cfg = small_config();
        cfg.geometry.r_m = -5.0;
        assert!(matches!(cfg.validate(), Err(ConfigError::Param(_))));
    }

    #[test]
    fn resolve_applies_the_sweep_value() {
        let cfg = small_config();
        let point = cfg.resolve(2.0);
        assert_eq!(point.caps.c_up, 2.0);
        assert_eq!(point.caps.c_down, 6.0);
        assert_eq!(point.geometry.s_o, cfg.geometry.s_o);

        let mut cfg = small_config();
        cfg.sweep.variable = SweepVariable::StationDistance;
        cfg.c_up = 4.0;
        cfg.c_down = CDownRule::Fixed(1.0);
        let point = cfg.resolve(90.0);
        assert_eq!(point.geometry.s_o, 90.0);
        assert_eq!(point.caps, BackhaulCapacities { c_up: 4.0, c_down: 1.0 });
    }

    #[test]
    fn trials_are_reproducible_and_decorrelated() {
        let scenario = small_config().resolve(2.0);
        let a = run_trial(trial_seed(42, 0, 7), &scenario);
        let b = run_trial(trial_seed(42, 0, 7), &scenario);
        assert_eq!(a, b, "same seed must reproduce the trial");
        let c = run_trial(trial_seed(42, 0, 8), &scenario);
        assert_ne!(a.snr, c.snr, "neighboring trials must differ");
        let d = run_trial(trial_seed(42, 1, 7), &scenario);
        assert_ne!(a.snr, d.snr, "neighboring sweep values must differ");
    }

    #[test]
    fn forced_placement_reproduces_the_hand_computation() {
        // U at (75, 0) with shadowing off: d_UB/d_UF = 1, so every link sees
        // the 10 dB target and DF-UV decodes U at C(10/11) over both hops
        let scenario = small_config().resolve(2.0);
        let placement = Placement { u_pos: (75.0, 0.0), v_pos: (150.0, 0.0) };
        let snr =
            channel::snr_triplet(&placement, &scenario.geometry, &scenario.propagation, &ShadowGains::UNITY).unwrap();
        assert_relative_eq!(snr.gamma_uf, 10.0, max_relative = 1e-12);
        let outcomes = evaluate_snr(&snr, &scenario.caps, &scenario.schemes);
        let df = &outcomes[0];
        assert_relative_eq!(df.uv.r_u, (1.0f64 + 10.0 / 11.0).log2(), max_relative = 1e-12);
        assert_relative_eq!(df.uv.r_v, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn summary_has_one_row_per_value_and_scheme() {
        let cfg = small_config();
        let summary = run_sweep(&cfg).unwrap();
        assert_eq!(summary.rows.len(), cfg.sweep.values.len() * cfg.schemes.len());
        let mut expected = Vec::new();
        for &v in &cfg.sweep.values {
            for &s in &cfg.schemes {
                expected.push((v, s));
            }
        }
        let got: Vec<_> = summary.rows.iter().map(|r| (r.sweep_value, r.scheme)).collect();
        assert_eq!(got, expected, "rows must be value-major, scheme-minor");
        assert!(summary.rows.iter().all(|r| r.trials == cfg.trials));
    }

    #[test]
    fn dead_uplink_zeroes_the_df_max_min() {
        let mut cfg = small_config();
        cfg.sweep.values = vec![0.0];
        let summary = run_sweep(&cfg).unwrap();
        let df = &summary.rows[0];
        assert_eq!(df.scheme, Scheme::Df);
        assert_eq!(df.mean_max_min, 0.0, "no backhaul, no rate for V, min is 0");
    }

    #[test]
    fn per_trial_dominance_survives_aggregation() {
        // QF-WZQ >= QF-EQ and DFQSI >= DF hold per realization, so the
        // summary means must order the same way
        let summary = run_sweep(&small_config()).unwrap();
        for chunk in summary.rows.chunks(4) {
            let (df, eq, wz, dfqsi) = (&chunk[0], &chunk[1], &chunk[2], &chunk[3]);
            assert!(wz.mean_max_sum >= eq.mean_max_sum);
            assert!(wz.mean_max_min >= eq.mean_max_min);
            assert!(dfqsi.mean_max_sum >= df.mean_max_sum);
            assert!(dfqsi.mean_max_min >= df.mean_max_min);
            assert!(df.mean_max_min <= df.mean_max_sum, "a min never beats a sum");
        }
    }

    #[test]
    fn standard_error_shrinks_with_the_sample_count() {
        let mut cfg = small_config();
        cfg.sweep.values = vec![2.0];
        cfg.trials = 500;
        let small = run_sweep(&cfg).unwrap().rows[0].se_max_sum;
        cfg.trials = 2000;
        let large = run_sweep(&cfg).unwrap().rows[0].se_max_sum;
        // quadrupling the sample roughly halves the error
        let ratio = small / large;
        assert!((ratio - 2.0).abs() < 0.4, "se ratio {ratio} too far from 2");
    }

    #[test]
    fn mean_se_handles_short_series() {
        assert_eq!(mean_se(&[3.0]), (3.0, 0.0));
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(m, 2.5);
        assert_relative_eq!(se, (5.0f64 / 3.0 / 4.0).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn worker_count_does_not_change_the_summary() {
        let cfg = small_config();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| run_sweep(&cfg)).unwrap();
        let b = four.install(|| run_sweep(&cfg)).unwrap();
        assert_eq!(a, b);
    }
}
