use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use femtorelay::channel::{NetworkGeometry, PropagationParams, SnrTriplet};
use femtorelay::cli::{cmd_single, cmd_sweep, cmd_verify, CliError, OutputFormat};
use femtorelay::montecarlo::{CDownRule, ScenarioConfig, Sweep, SweepVariable};
use femtorelay::schemes::{BackhaulCapacities, Scheme};

/// Two-tier uplink simulator: four femto forwarding schemes over a
/// capacity-limited backhaul, reported as max sum-rate and max-min rate.
#[derive(Parser)]
#[command(name = "femtorelay", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every scheme at one explicit SNR triplet (linear SNRs)
    Single(SingleArgs),
    /// Monte Carlo sweep over the uplink backhaul capacity
    SweepBackhaul(SweepBackhaulArgs),
    /// Monte Carlo sweep over the femto station distance
    SweepPosition(SweepPositionArgs),
    /// Run randomized self-checks; exits 2 if any fail
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SingleArgs {
    /// Macro user's SNR at the femto station, linear
    #[arg(long)]
    gamma_uf: f64,
    /// Femto user's SNR at its own station, linear
    #[arg(long)]
    gamma_vf: f64,
    /// Macro user's SNR at the macro station, linear
    #[arg(long)]
    gamma_ub: f64,
    /// Forward backhaul capacity, b/s/Hz
    #[arg(long)]
    c_up: f64,
    /// Reverse backhaul capacity, b/s/Hz
    #[arg(long)]
    c_down: f64,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Trials per sweep value
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Master seed; every trial derives its own stream from it
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Macro cell radius, meters
    #[arg(long, default_value_t = 200.0)]
    r_m: f64,
    /// Femto cell radius, meters
    #[arg(long, default_value_t = 20.0)]
    r_f: f64,
    /// Path-loss exponent
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    /// Power-control target SNR, dB
    #[arg(long, default_value_t = 10.0)]
    rx_snr_db: f64,
    /// Shadowing standard deviation, dB; 0 turns shadowing off
    #[arg(long, default_value_t = 8.0)]
    shadow_sigma_db: f64,
    /// Distance floor, meters
    #[arg(long, default_value_t = 1.0)]
    d_min: f64,
    /// Schemes to evaluate
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_values_t = Scheme::ALL)]
    schemes: Vec<Scheme>,
    /// Write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SweepBackhaulArgs {
    /// Uplink capacities to sweep, b/s/Hz
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0, 4.0, 8.0])]
    values: Vec<f64>,
    /// Reverse capacity as a multiple of the swept uplink capacity
    #[arg(long, default_value_t = 3.0, conflicts_with = "c_down")]
    c_down_ratio: f64,
    /// Fixed reverse capacity, b/s/Hz (overrides the ratio)
    #[arg(long)]
    c_down: Option<f64>,
    /// Macro-to-femto station distance, meters
    #[arg(long, default_value_t = 150.0)]
    s_o: f64,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct SweepPositionArgs {
    /// Station distances to sweep, meters
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 30.0, 50.0, 70.0, 90.0, 110.0, 130.0, 150.0, 170.0, 190.0])]
    values: Vec<f64>,
    /// Forward backhaul capacity, b/s/Hz
    #[arg(long, default_value_t = 4.0)]
    c_up: f64,
    /// Reverse backhaul capacity, b/s/Hz
    #[arg(long, default_value_t = 1.0)]
    c_down: f64,
    #[command(flatten)]
    scenario: ScenarioArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Random draws per check
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Seed for the check battery
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    Scheme::parse(s).ok_or_else(|| format!("unknown scheme {s:?} (expected DF, QF_EQ, QF_WZQ, or DFQSI)"))
}

fn scenario_config(args: &ScenarioArgs, s_o: f64, c_up: f64, c_down: CDownRule, sweep: Sweep) -> ScenarioConfig {
    ScenarioConfig {
        geometry: NetworkGeometry { s_o, r_m: args.r_m, r_f: args.r_f },
        propagation: PropagationParams {
            alpha: args.alpha,
            shadow_sigma_db: args.shadow_sigma_db,
            d_min: args.d_min,
            rx_snr_db: args.rx_snr_db,
        },
        c_up,
        c_down,
        schemes: args.schemes.clone(),
        trials: args.trials,
        master_seed: args.seed,
        sweep,
    }
}

fn run_sweep_command(args: &ScenarioArgs, config: &ScenarioConfig) -> Result<(), CliError> {
    let format = match args.format {
        Format::Csv => OutputFormat::Csv,
        Format::Table => OutputFormat::Table,
    };
    match &args.output {
        Some(path) => {
            let mut file = File::create(path)?;
            cmd_sweep(config, format, &mut file)?;
            file.flush()?;
        }
        None => {
            cmd_sweep(config, format, &mut io::stdout().lock())?;
        }
    }
    Ok(())
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let outcome: Result<i32, CliError> = match cli.command {
        Command::Single(args) => {
            let snr = SnrTriplet { gamma_uf: args.gamma_uf, gamma_vf: args.gamma_vf, gamma_ub: args.gamma_ub };
            let caps = BackhaulCapacities { c_up: args.c_up, c_down: args.c_down };
            cmd_single(snr, caps, &mut io::stdout().lock()).map(|_| 0)
        }
        Command::SweepBackhaul(args) => {
            let c_down = match args.c_down {
                Some(fixed) => CDownRule::Fixed(fixed),
                None => CDownRule::UplinkRatio(args.c_down_ratio),
            };
            let sweep = Sweep { variable: SweepVariable::UplinkCapacity, values: args.values.clone() };
            let config = scenario_config(&args.scenario, args.s_o, 0.0, c_down, sweep);
            run_sweep_command(&args.scenario, &config).map(|_| 0)
        }
        Command::SweepPosition(args) => {
            let sweep = Sweep { variable: SweepVariable::StationDistance, values: args.values.clone() };
            let config =
                scenario_config(&args.scenario, 0.0, args.c_up, CDownRule::Fixed(args.c_down), sweep);
            run_sweep_command(&args.scenario, &config).map(|_| 0)
        }
        Command::Verify(args) => {
            cmd_verify(args.samples, args.seed, &mut io::stdout().lock()).map(|report| {
                if report.all_passed() {
                    0
                } else {
                    2
                }
            })
        }
    };

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("femtorelay: {e}");
            1
        }
    }
}
