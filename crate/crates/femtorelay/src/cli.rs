//! Implementations behind the `femtorelay` binary, kept free of argument
//! parsing so tests can drive them directly.

use std::fmt::Write as _;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::SnrTriplet;
use crate::montecarlo::{
    evaluate_snr, run_sweep, CDownRule, ConfigError, ScenarioConfig, SchemeOutcome, SweepSummary, SweepVariable,
};
use crate::region::{max_min_oracle, max_min_two, RateRegion};
use crate::schemes::{
    beta_eq, beta_wzq, capacity, df_rates, dfqsi_rates, gamma_qu, qf_rates, scheme_rates, verify_wzq_identity,
    BackhaulCapacities, DecodingOrder, Quantizer, Scheme,
};
use crate::{check, ParamError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Everything `single` prints, in structured form.
#[derive(Debug, Clone)]
pub struct SingleReport {
    pub snr: SnrTriplet,
    pub caps: BackhaulCapacities,
    pub beta_eq: f64,
    pub beta_wzq: f64,
    pub gamma_qu: f64,
    pub outcomes: Vec<SchemeOutcome>,
}

/// Evaluates every scheme at one explicit SNR triplet.
pub fn single_report(snr: SnrTriplet, caps: BackhaulCapacities) -> Result<SingleReport, ParamError> {
    snr.validate()?;
    caps.validate()?;
    Ok(SingleReport {
        beta_eq: beta_eq(&snr, caps.c_up),
        beta_wzq: beta_wzq(&snr, caps.c_up),
        gamma_qu: gamma_qu(caps.c_down),
        outcomes: evaluate_snr(&snr, &caps, &Scheme::ALL),
        snr,
        caps,
    })
}

/// Prints the per-scheme corners and operating points with enough digits to
/// re-derive them exactly.
pub fn cmd_single(snr: SnrTriplet, caps: BackhaulCapacities, out: &mut dyn Write) -> Result<SingleReport, CliError> {
    let report = single_report(snr, caps)?;
    writeln!(
        out,
        "gamma_uf={} gamma_vf={} gamma_ub={} c_up={} c_down={}",
        snr.gamma_uf, snr.gamma_vf, snr.gamma_ub, caps.c_up, caps.c_down
    )?;
    writeln!(out, "beta_eq={:.10} beta_wzq={:.10} gamma_qu={:.10}", report.beta_eq, report.beta_wzq, report.gamma_qu)?;
    writeln!(out, "{:<8} {:<8} {:>14} {:>14} {:>14} {:>14}", "scheme", "point", "r_u", "r_v", "sum", "min")?;
    for o in &report.outcomes {
        for (label, r_u, r_v) in [
            ("UV", o.uv.r_u, o.uv.r_v),
            ("VU", o.vu.r_u, o.vu.r_v),
            ("max_sum", o.max_sum.r_u, o.max_sum.r_v),
            ("max_min", o.max_min.r_u, o.max_min.r_v),
        ] {
            writeln!(
                out,
                "{:<8} {:<8} {:>14.10} {:>14.10} {:>14.10} {:>14.10}",
                o.scheme.label(),
                label,
                r_u,
                r_v,
                r_u + r_v,
                r_u.min(r_v)
            )?;
        }
    }
    Ok(report)
}

/// Output encodings for sweep results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Table,
}

/// Runs the sweep and writes it in the requested format.
pub fn cmd_sweep(config: &ScenarioConfig, format: OutputFormat, out: &mut dyn Write) -> Result<SweepSummary, CliError> {
    let summary = run_sweep(config)?;
    let rendered = match format {
        OutputFormat::Csv => render_csv(config, &summary),
        OutputFormat::Table => render_table(&summary),
    };
    out.write_all(rendered.as_bytes())?;
    Ok(summary)
}

fn join_values(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// CSV with a `#` metadata preamble. Every preamble field comes from the
/// configuration, never from the clock or the host, so re-running the same
/// command yields a byte-identical file.
pub fn render_csv(config: &ScenarioConfig, summary: &SweepSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# femtorelay {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        s,
        "# rng: chacha8 per trial; trial_seed = mix64(mix64(master_seed ^ mix64((value_index + 1) * G)) \
         ^ trial_index * G); G = 0x9e3779b97f4a7c15, mix64 = splitmix64 finalizer"
    );
    let _ = writeln!(s, "# sweep: {}={}", summary.variable.label(), join_values(&config.sweep.values));
    let _ = writeln!(
        s,
        "# schemes={}",
        config.schemes.iter().map(|sch| sch.label().to_string()).collect::<Vec<_>>().join(",")
    );
    let _ = writeln!(s, "# trials={} master_seed={}", config.trials, config.master_seed);
    let s_o = match summary.variable {
        SweepVariable::StationDistance => "sweep".to_string(),
        SweepVariable::UplinkCapacity => config.geometry.s_o.to_string(),
    };
    let _ = writeln!(s, "# geometry: s_o={} r_m={} r_f={}", s_o, config.geometry.r_m, config.geometry.r_f);
    let p = &config.propagation;
    let _ = writeln!(
        s,
        "# propagation: alpha={} rx_snr_db={} shadow_sigma_db={} d_min={}",
        p.alpha, p.rx_snr_db, p.shadow_sigma_db, p.d_min
    );
    let c_up = match summary.variable {
        SweepVariable::UplinkCapacity => "sweep".to_string(),
        SweepVariable::StationDistance => config.c_up.to_string(),
    };
    let c_down = match config.c_down {
        CDownRule::Fixed(c) => c.to_string(),
        CDownRule::UplinkRatio(r) => format!("{r}*c_up"),
    };
    let _ = writeln!(s, "# backhaul: c_up={c_up} c_down={c_down}");
    s.push_str(
        "sweep_var,sweep_value,scheme,mean_max_sum,se_max_sum,mean_max_min,se_max_min,\
         mean_ru_maxmin,mean_rv_maxmin,mean_ru_maxsum,mean_rv_maxsum,trials\n",
    );
    for r in &summary.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            summary.variable.label(),
            r.sweep_value,
            r.scheme.label(),
            r.mean_max_sum,
            r.se_max_sum,
            r.mean_max_min,
            r.se_max_min,
            r.mean_ru_maxmin,
            r.mean_rv_maxmin,
            r.mean_ru_maxsum,
            r.mean_rv_maxsum,
            r.trials
        );
    }
    s
}

fn render_table(summary: &SweepSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>10} {:<8} {:>12} {:>12} {:>12} {:>12}",
        summary.variable.label(),
        "scheme",
        "max_sum",
        "se",
        "max_min",
        "se"
    );
    for r in &summary.rows {
        let _ = writeln!(
            s,
            "{:>10} {:<8} {:>12.6} {:>12.2e} {:>12.6} {:>12.2e}",
            r.sweep_value,
            r.scheme.label(),
            r.mean_max_sum,
            r.se_max_sum,
            r.mean_max_min,
            r.se_max_min
        );
    }
    s
}

/// One randomized self-check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    /// Largest residual or violation seen; compare against `bound`.
    pub worst: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn random_snr<R: Rng>(rng: &mut R, top: f64) -> SnrTriplet {
    SnrTriplet { gamma_uf: rng.gen::<f64>() * top, gamma_vf: rng.gen::<f64>() * top, gamma_ub: rng.gen::<f64>() * top }
}

/// Randomized self-checks of the closed forms: quantizer bookkeeping versus
/// the Gaussian covariance computation, the max-min selector versus a grid
/// scan, dominance orderings, and the dead/wide backhaul limits. Prints one
/// line per check; the caller maps `all_passed` to the exit code.
pub fn cmd_verify(samples: usize, seed: u64, out: &mut dyn Write) -> Result<VerifyReport, CliError> {
    check("samples", samples as f64, samples > 0)?;
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = 0f64;
    for _ in 0..samples {
        let snr = random_snr(&mut rng, 100.0);
        let c_up = rng.gen::<f64>() * 20.0 + 1e-9;
        let chk = verify_wzq_identity(&snr, c_up, 1e-9)?;
        worst = worst.max(chk.residual);
    }
    checks.push(CheckOutcome { name: "wzq_rate_matches_budget", samples, worst, bound: 1e-9, passed: worst < 1e-9 });

    let mut worst = 0f64;
    for _ in 0..samples {
        let p1 = (rng.gen::<f64>() * 10.0, rng.gen::<f64>() * 10.0);
        let p2 = (rng.gen::<f64>() * 10.0, rng.gen::<f64>() * 10.0);
        let exact = max_min_two(p1, p2);
        let region = RateRegion::new(vec![p1, p2]).expect("finite nonnegative corners");
        let grid = max_min_oracle(&region, 1e-4)?;
        worst = worst.max((exact - grid).abs());
    }
    checks.push(CheckOutcome { name: "max_min_matches_grid", samples, worst, bound: 1e-3, passed: worst <= 1e-3 });

    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let snr = random_snr(&mut rng, 100.0);
        let c_up = rng.gen::<f64>() * 20.0 + 1e-9;
        worst = worst.max(beta_wzq(&snr, c_up) - beta_eq(&snr, c_up));
        for order in DecodingOrder::BOTH {
            let eq = qf_rates(Quantizer::Elementary, order, &snr, beta_eq(&snr, c_up));
            let wz = qf_rates(Quantizer::WynerZiv, order, &snr, beta_wzq(&snr, c_up));
            worst = worst.max(eq.r_u - wz.r_u).max(eq.r_v - wz.r_v);
        }
    }
    checks.push(CheckOutcome { name: "binning_dominates_eq", samples, worst, bound: 0.0, passed: worst <= 0.0 });

    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let snr = random_snr(&mut rng, 100.0);
        let caps = BackhaulCapacities { c_up: rng.gen::<f64>() * 20.0, c_down: rng.gen::<f64>() * 20.0 };
        let dfqsi = dfqsi_rates(DecodingOrder::Uv, &snr, &caps);
        let df = df_rates(DecodingOrder::Uv, &snr, caps.c_up);
        worst = worst.max(df.r_u - dfqsi.r_u).max((dfqsi.r_v - df.r_v).abs());
        let zero = dfqsi_rates(DecodingOrder::Uv, &snr, &BackhaulCapacities { c_up: caps.c_up, c_down: 0.0 });
        worst = worst.max((zero.r_u - df.r_u).abs());
    }
    checks.push(CheckOutcome { name: "side_info_only_helps", samples, worst, bound: 0.0, passed: worst <= 0.0 });

    let mut worst = f64::NEG_INFINITY;
    for _ in 0..samples {
        let snr = random_snr(&mut rng, 100.0);
        let (a, b) = (rng.gen::<f64>() * 20.0, rng.gen::<f64>() * 20.0);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let c_down = rng.gen::<f64>() * 20.0;
        for scheme in Scheme::ALL {
            for order in DecodingOrder::BOTH {
                let narrow = scheme_rates(scheme, order, &snr, &BackhaulCapacities { c_up: lo, c_down });
                let wide = scheme_rates(scheme, order, &snr, &BackhaulCapacities { c_up: hi, c_down });
                worst = worst.max(narrow.r_u - wide.r_u).max(narrow.r_v - wide.r_v);
            }
        }
    }
    checks.push(CheckOutcome { name: "rates_monotone_in_c_up", samples, worst, bound: 0.0, passed: worst <= 0.0 });

    let (mut worst_beta, mut worst_gap, mut worst_dead) = (0f64, 0f64, 0f64);
    for _ in 0..samples {
        let snr = random_snr(&mut rng, 100.0);
        for q in [Quantizer::Elementary, Quantizer::WynerZiv] {
            let beta = match q {
                Quantizer::Elementary => beta_eq(&snr, 60.0),
                Quantizer::WynerZiv => beta_wzq(&snr, 60.0),
            };
            worst_beta = worst_beta.max(beta);
            for order in DecodingOrder::BOTH {
                let wide = qf_rates(q, order, &snr, beta);
                let clean = qf_rates(q, order, &snr, 0.0);
                worst_gap = worst_gap.max((wide.r_u - clean.r_u).abs()).max((wide.r_v - clean.r_v).abs());
                let dead = qf_rates(q, order, &snr, beta_wzq(&snr, 0.0));
                worst_dead = worst_dead.max((dead.r_u - capacity(snr.gamma_ub)).abs()).max(dead.r_v.abs());
            }
        }
    }
    checks.push(CheckOutcome {
        name: "wide_pipe_beta_vanishes",
        samples,
        worst: worst_beta,
        bound: 1e-12,
        passed: worst_beta < 1e-12,
    });
    checks.push(CheckOutcome {
        name: "wide_pipe_rates_converge",
        samples,
        worst: worst_gap,
        bound: 1e-6,
        passed: worst_gap < 1e-6,
    });
    checks.push(CheckOutcome {
        name: "dead_pipe_rates_exact",
        samples,
        worst: worst_dead,
        bound: 0.0,
        passed: worst_dead <= 0.0,
    });

    for c in &checks {
        writeln!(
            out,
            "{:<28} samples={:<8} worst={:<12.3e} bound={:<9.0e} {}",
            c.name,
            c.samples,
            c.worst,
            c.bound,
            if c.passed { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(VerifyReport { checks })
}
