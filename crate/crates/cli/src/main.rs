//! Command-line front end: single-point evaluation, sweeps, Monte-Carlo
//! runs and threshold calibration, with CSV/manifest outputs.
//!
//! Exit codes: 0 success, 1 usage or config error, 2 numeric failure,
//! 3 sweep completed with failed points (outputs still written).

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use corridor_coverage::analysis::{AnalysisOptions, CoverageEvaluator};
use corridor_coverage::experiments::{
    self, calibrate_thresholds, default_n_grid, default_rh_grid, default_tau_grid, SweepSpec,
    Tracks,
};
use corridor_coverage::montecarlo::{simulate_range, HitCounts};
use corridor_coverage::NetworkConfig;

use config::ConfigArgs;

#[derive(Parser)]
#[command(
    name = "corridor-coverage",
    version,
    about = "Energy / SINR / joint coverage of an RF-powered IoT receiver under a UAV corridor",
    long_about = "Computes energy, SINR and joint coverage probabilities of an RF-powered IoT \
                  receiver served by UAV base stations on a 1D aerial corridor, analytically and \
                  by Monte-Carlo simulation.\n\nUnits: meters, Hz, watts (or dBm where a flag \
                  says so), seconds, joules; SINR thresholds are linear."
)]
struct Cli {
    /// Worker threads for Monte-Carlo runs (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Output directory for CSV / manifest files.
    #[arg(long, global = true, default_value = ".", value_name = "DIR")]
    out_dir: PathBuf,

    /// Master seed for Monte-Carlo runs.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the four coverage probabilities at one configuration.
    Eval {
        #[command(flatten)]
        config: ConfigArgs,
        /// Emit a JSON object instead of the human-readable table.
        #[arg(long)]
        json: bool,
    },
    /// Sweep a parameter and write sweep CSV (+ heatmap for grid-rh).
    Sweep {
        /// What to sweep.
        #[arg(value_enum)]
        variable: SweepKind,
        #[command(flatten)]
        config: ConfigArgs,
        /// Comma-separated grid for tau or n-uavs (defaults bracket the
        /// reference scenario).
        #[arg(long, value_name = "LIST")]
        grid: Option<String>,
        /// Comma-separated R grid (grid-rh only), meters.
        #[arg(long, value_name = "LIST")]
        r_grid: Option<String>,
        /// Comma-separated h grid (grid-rh only), meters.
        #[arg(long, value_name = "LIST")]
        h_grid: Option<String>,
        /// Monte-Carlo slots per grid point.
        #[arg(long, default_value_t = 100_000)]
        mc_slots: u64,
        /// Skip the Monte-Carlo track.
        #[arg(long)]
        no_mc: bool,
        /// Skip the analytic track.
        #[arg(long, conflicts_with = "no_mc")]
        no_analytic: bool,
    },
    /// Monte-Carlo estimate with confidence intervals.
    Mc {
        #[command(flatten)]
        config: ConfigArgs,
        /// Simulated slots.
        #[arg(long, default_value_t = 1_000_000)]
        slots: u64,
        /// Also write one CSV row per slot (E_h, SINR, indicators).
        #[arg(long)]
        dump_samples: bool,
    },
    /// Find thresholds hitting target coverage levels; prints the resolved
    /// config JSON (feed it back via --config).
    CalibrateThresholds {
        #[command(flatten)]
        config: ConfigArgs,
        /// Target exact energy coverage.
        #[arg(long, default_value_t = 0.8)]
        target_ph: f64,
        /// Target communication coverage.
        #[arg(long, default_value_t = 0.6)]
        target_pc: f64,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SweepKind {
    Tau,
    NUavs,
    GridRh,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // numeric failures (quadrature/inversion/degenerate cases) exit 2;
            // config and file problems are usage errors
            let code = match e.downcast_ref::<corridor_coverage::Error>() {
                Some(corridor_coverage::Error::Config { .. }) | None => 1,
                Some(_) => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    std::fs::create_dir_all(&cli.out_dir)?;

    match cli.command {
        Command::Eval { config, json } => {
            let config = config.resolve()?;
            let evaluator = CoverageEvaluator::new(config, AnalysisOptions::default());
            let exact = evaluator.energy_exact()?;
            let approx = evaluator.energy_approx()?;
            let comm = evaluator.comm()?;
            let joint = evaluator.joint_coverage()?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "config": evaluator.config(),
                        "p_h_exact": exact.value,
                        "p_h_approx": approx.value,
                        "p_c": comm.value,
                        "p_jc": joint.value,
                    })
                );
            } else {
                println!("p_h_exact  = {:.6}  [exact-laplace]", exact.value);
                println!("p_h_approx = {:.6}  [gamma-approx]", approx.value);
                println!("p_c        = {:.6}  [analytic]", comm.value);
                println!("p_jc       = {:.6}  [analytic]", joint.value);
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Sweep {
            variable,
            config,
            grid,
            r_grid,
            h_grid,
            mc_slots,
            no_mc,
            no_analytic,
        } => {
            let base = config.resolve()?;
            let mut spec = match variable {
                SweepKind::Tau => SweepSpec::over_tau(
                    base,
                    parse_grid_or(grid.as_deref(), default_tau_grid)?,
                ),
                SweepKind::NUavs => SweepSpec::over_n(
                    base,
                    parse_grid_or(grid.as_deref(), default_n_grid)?,
                ),
                SweepKind::GridRh => {
                    let (default_r, default_h) = default_rh_grid();
                    SweepSpec::over_grid(
                        base,
                        parse_grid_or(r_grid.as_deref(), || default_r)?,
                        parse_grid_or(h_grid.as_deref(), || default_h)?,
                    )
                }
            };
            spec.mc_slots = mc_slots;
            spec.seed = cli.seed;
            spec.tracks = Tracks {
                analytic: !no_analytic,
                monte_carlo: !no_mc,
            };
            let result = experiments::run_sweep(&spec)?;

            let name = match variable {
                SweepKind::Tau => "sweep_tau.csv",
                SweepKind::NUavs => "sweep_n_uavs.csv",
                SweepKind::GridRh => "sweep_grid_rh.csv",
            };
            let csv_path = cli.out_dir.join(name);
            output::write_sweep_csv(&csv_path, &result)?;
            let mut outputs = vec![csv_path];
            if matches!(variable, SweepKind::GridRh) {
                let heatmap = cli.out_dir.join("heatmap.dat");
                output::write_heatmap_matrix(&heatmap, &result)?;
                outputs.push(heatmap);
            }
            output::write_manifest(&cli.out_dir, &result.spec.base, Some(cli.seed), &outputs)?;

            let failed = result.rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!(
                    "warning: {failed}/{} grid points failed; see the error column",
                    result.rows.len()
                );
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Mc {
            config,
            slots,
            dump_samples,
        } => {
            let config = config.resolve()?;
            const CHUNK: u64 = 65_536;
            let chunks: Vec<(u64, u64)> = (0..slots.div_ceil(CHUNK))
                .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(slots)))
                .collect();
            let counts = chunks
                .par_iter()
                .map(|&(a, b)| simulate_range(&config, a..b, cli.seed))
                .reduce(HitCounts::default, HitCounts::merge);
            let est = counts.into_estimate(cli.seed);

            let csv_path = cli.out_dir.join("mc.csv");
            output::write_mc_csv(&csv_path, &config, &est)?;
            let mut outputs = vec![csv_path];
            if dump_samples {
                let samples = cli.out_dir.join("samples.csv");
                output::write_samples_csv(&samples, &config, slots, cli.seed)?;
                outputs.push(samples);
            }
            output::write_manifest(&cli.out_dir, &config, Some(cli.seed), &outputs)?;
            println!(
                "p_h = {:.6} ± {:.6}\np_c = {:.6} ± {:.6}\np_jc = {:.6} ± {:.6}  ({} slots, seed {})",
                est.p_h,
                est.halfwidth_h,
                est.p_c,
                est.halfwidth_c,
                est.p_jc,
                est.halfwidth_jc,
                est.n_slots,
                est.seed
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::CalibrateThresholds {
            config,
            target_ph,
            target_pc,
        } => {
            let base = config.resolve()?;
            let opts = AnalysisOptions::default();
            let (gamma_h, gamma_c) = calibrate_thresholds(&base, target_ph, target_pc, &opts)?;
            let calibrated = NetworkConfig {
                energy_threshold_j: gamma_h,
                sinr_threshold: gamma_c,
                ..base
            };
            println!("{}", serde_json::to_string_pretty(&calibrated)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_grid_or<T, F>(grid: Option<&str>, default: F) -> anyhow::Result<Vec<T>>
where
    T: std::str::FromStr,
    T::Err: std::error::Error + Send + Sync + 'static,
    F: FnOnce() -> Vec<T>,
{
    match grid {
        None => Ok(default()),
        Some(text) => text
            .split(',')
            .map(|s| s.trim().parse::<T>().map_err(anyhow::Error::new))
            .collect(),
    }
}
