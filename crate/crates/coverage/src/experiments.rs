//! Parameter-sweep studies: coverage versus harvesting fraction, optimal
//! UAV count, and (R, h) deployment grids, each with an analytic track and
//! an optional Monte-Carlo track.
//!
//! Sweeps use one master seed for every grid point (common random numbers),
//! so the Monte-Carlo curves differ between points only through the
//! parameter change, which keeps trend and argmax comparisons stable at
//! moderate slot counts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::analysis::{AnalysisOptions, CoverageEvaluator};
use crate::error::{Error, Result};
use crate::model::NetworkConfig;
use crate::montecarlo::{simulate, McEstimate};

/// What a sweep varies.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepVariable {
    /// Harvesting fraction τ.
    Tau(Vec<f64>),
    /// UAV count N.
    NUavs(Vec<u32>),
    /// Deployment grid over corridor half-length R and altitude h.
    GridRh {
        r_values_m: Vec<f64>,
        h_values_m: Vec<f64>,
    },
}

impl SweepVariable {
    /// Column names of the grid coordinates.
    pub fn axis_names(&self) -> (&'static str, Option<&'static str>) {
        match self {
            SweepVariable::Tau(_) => ("tau", None),
            SweepVariable::NUavs(_) => ("n_uavs", None),
            SweepVariable::GridRh { .. } => ("radius_m", Some("altitude_m")),
        }
    }

    fn validate(&self) -> Result<()> {
        fn increasing(vals: &[f64]) -> bool {
            !vals.is_empty() && vals.windows(2).all(|w| w[0] < w[1])
        }
        let ok = match self {
            SweepVariable::Tau(v) => increasing(v),
            SweepVariable::NUavs(v) => !v.is_empty() && v.windows(2).all(|w| w[0] < w[1]),
            SweepVariable::GridRh {
                r_values_m,
                h_values_m,
            } => increasing(r_values_m) && increasing(h_values_m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(
                "sweep grid must be non-empty and strictly increasing per axis",
            ))
        }
    }
}

/// Which result tracks a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tracks {
    pub analytic: bool,
    pub monte_carlo: bool,
}

impl Default for Tracks {
    fn default() -> Self {
        Self {
            analytic: true,
            monte_carlo: true,
        }
    }
}

/// Full description of one sweep run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub base: NetworkConfig,
    pub tracks: Tracks,
    /// Monte-Carlo slots per grid point.
    pub mc_slots: u64,
    pub seed: u64,
    /// Whether the analytic track also evaluates the exact (inversion-based)
    /// energy coverage at every point; on by default for τ sweeps.
    pub include_exact_energy: bool,
    pub opts: AnalysisOptions,
}

impl SweepSpec {
    pub fn over_tau(base: NetworkConfig, taus: Vec<f64>) -> Self {
        Self {
            variable: SweepVariable::Tau(taus),
            base,
            tracks: Tracks::default(),
            mc_slots: 100_000,
            seed: 1,
            include_exact_energy: true,
            opts: AnalysisOptions::default(),
        }
    }

    pub fn over_n(base: NetworkConfig, ns: Vec<u32>) -> Self {
        Self {
            variable: SweepVariable::NUavs(ns),
            base,
            tracks: Tracks::default(),
            mc_slots: 100_000,
            seed: 1,
            include_exact_energy: false,
            opts: AnalysisOptions::default(),
        }
    }

    pub fn over_grid(base: NetworkConfig, r_values_m: Vec<f64>, h_values_m: Vec<f64>) -> Self {
        Self {
            variable: SweepVariable::GridRh {
                r_values_m,
                h_values_m,
            },
            base,
            tracks: Tracks::default(),
            mc_slots: 100_000,
            seed: 1,
            include_exact_energy: false,
            opts: AnalysisOptions::default(),
        }
    }
}

/// Reference grids bracketing the default scenario.
pub fn default_tau_grid() -> Vec<f64> {
    (1..=20).map(|i| 0.025 * i as f64).collect()
}

pub fn default_n_grid() -> Vec<u32> {
    (1..=30).collect()
}

pub fn default_rh_grid() -> (Vec<f64>, Vec<f64>) {
    (
        (1..=10).map(|i| 50.0 * i as f64).collect(),
        (1..=6).map(|i| 50.0 * i as f64).collect(),
    )
}

/// Analytic coverage values at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    /// Exact inversion-based energy coverage (τ sweeps only by default).
    pub p_h_exact: Option<f64>,
    /// Gamma-approximation energy coverage.
    pub p_h_approx: f64,
    /// Communication coverage.
    pub p_c: f64,
    /// Joint coverage.
    pub p_jc: f64,
}

/// One sweep row: the grid coordinates plus whichever tracks succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x1: f64,
    pub x2: Option<f64>,
    pub analytic: Option<AnalyticPoint>,
    pub mc: Option<McEstimate>,
    /// Per-point failure; the sweep carries on past failed points.
    pub error: Option<String>,
}

/// Argmax of a sweep with its runner-up, so optimum claims are auditable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgmaxReport {
    pub best_x1: f64,
    pub best_x2: Option<f64>,
    pub best_value: f64,
    pub runner_up_x1: f64,
    pub runner_up_x2: Option<f64>,
    pub runner_up_value: f64,
    pub gap: f64,
}

/// Sweep output: rows in grid order plus the analytic-p_jc argmax for
/// N and (R, h) sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub optima: Option<ArgmaxReport>,
}

fn config_at_point(
    base: &NetworkConfig,
    variable: &SweepVariable,
    idx: usize,
) -> (f64, Option<f64>, NetworkConfig) {
    match variable {
        SweepVariable::Tau(taus) => {
            let tau = taus[idx];
            (tau, None, NetworkConfig { tau, ..base.clone() })
        }
        SweepVariable::NUavs(ns) => {
            let n = ns[idx];
            (
                n as f64,
                None,
                NetworkConfig {
                    n_uavs: n,
                    ..base.clone()
                },
            )
        }
        SweepVariable::GridRh {
            r_values_m,
            h_values_m,
        } => {
            let r = r_values_m[idx / h_values_m.len()];
            let h = h_values_m[idx % h_values_m.len()];
            (
                r,
                Some(h),
                NetworkConfig {
                    radius_m: r,
                    altitude_m: h,
                    ..base.clone()
                },
            )
        }
    }
}

fn point_count(variable: &SweepVariable) -> usize {
    match variable {
        SweepVariable::Tau(v) => v.len(),
        SweepVariable::NUavs(v) => v.len(),
        SweepVariable::GridRh {
            r_values_m,
            h_values_m,
        } => r_values_m.len() * h_values_m.len(),
    }
}

/// Evaluate every grid point of `spec`. Points are independent; failures
/// are recorded per row and the sweep continues.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.variable.validate()?;
    spec.base.validate()?;

    // τ sweeps share the τ-independent communication cache.
    let tau_base = match &spec.variable {
        SweepVariable::Tau(_) => Some(CoverageEvaluator::new(spec.base.clone(), spec.opts)),
        _ => None,
    };

    let mut rows = Vec::with_capacity(point_count(&spec.variable));
    for idx in 0..point_count(&spec.variable) {
        let (x1, x2, config) = config_at_point(&spec.base, &spec.variable, idx);
        let mut row = SweepRow {
            x1,
            x2,
            analytic: None,
            mc: None,
            error: None,
        };
        if spec.tracks.analytic {
            let evaluator = match &tau_base {
                Some(base) => base.with_tau(x1),
                None => CoverageEvaluator::new(config.clone(), spec.opts),
            };
            match analytic_point(&evaluator, spec.include_exact_energy) {
                Ok(point) => row.analytic = Some(point),
                Err(e) => row.error = Some(format!("{e}")),
            }
        }
        if spec.tracks.monte_carlo {
            row.mc = Some(simulate(&config, spec.mc_slots, spec.seed));
        }
        rows.push(row);
    }

    let optima = match spec.variable {
        SweepVariable::Tau(_) => None,
        _ => argmax_p_jc(&rows),
    };

    Ok(SweepResult {
        spec: spec.clone(),
        rows,
        optima,
    })
}

fn analytic_point(evaluator: &CoverageEvaluator, include_exact: bool) -> Result<AnalyticPoint> {
    let p_h_exact = if include_exact {
        Some(evaluator.energy_exact()?.value)
    } else {
        None
    };
    let p_h_approx = evaluator.energy_approx()?.value;
    let p_c = evaluator.comm()?.value;
    let p_jc = evaluator.joint_coverage()?.value;
    Ok(AnalyticPoint {
        p_h_exact,
        p_h_approx,
        p_c,
        p_jc,
    })
}

/// First-occurrence argmax over analytic p_jc; rows in grid order, so ties
/// resolve toward the smaller parameter (smaller N; smaller R then h).
fn argmax_p_jc(rows: &[SweepRow]) -> Option<ArgmaxReport> {
    let mut best: Option<(usize, f64)> = None;
    let mut runner: Option<(usize, f64)> = None;
    for (i, row) in rows.iter().enumerate() {
        let Some(a) = &row.analytic else { continue };
        let v = a.p_jc;
        match best {
            None => best = Some((i, v)),
            Some((_, bv)) if v > bv => {
                runner = best;
                best = Some((i, v));
            }
            _ => match runner {
                None => runner = Some((i, v)),
                Some((_, rv)) if v > rv => runner = Some((i, v)),
                _ => {}
            },
        }
    }
    let (bi, bv) = best?;
    let (ri, rv) = runner.unwrap_or((bi, bv));
    Some(ArgmaxReport {
        best_x1: rows[bi].x1,
        best_x2: rows[bi].x2,
        best_value: bv,
        runner_up_x1: rows[ri].x1,
        runner_up_x2: rows[ri].x2,
        runner_up_value: rv,
        gap: bv - rv,
    })
}

/// Optimal UAV count per harvesting fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalN {
    pub tau: f64,
    pub n_star: u32,
    pub p_jc: f64,
    pub runner_up_n: u32,
    pub runner_up_p_jc: f64,
}

/// Exhaustively evaluate analytic joint coverage over an integer range of
/// UAV counts for each τ, reporting the argmax (ties toward fewer UAVs).
///
/// Iterates UAV count in the outer loop so the τ-independent SINR side is
/// computed once per N and shared across the τ list.
pub fn find_optimal_n(
    base: &NetworkConfig,
    n_values: &[u32],
    tau_list: &[f64],
    opts: &AnalysisOptions,
) -> Result<Vec<OptimalN>> {
    if n_values.is_empty() {
        return Err(Error::Domain("empty UAV range"));
    }
    let mut best: Vec<Option<(u32, f64)>> = alloc::vec![None; tau_list.len()];
    let mut runner: Vec<Option<(u32, f64)>> = alloc::vec![None; tau_list.len()];
    for &n in n_values {
        let evaluator = CoverageEvaluator::new(
            NetworkConfig {
                n_uavs: n,
                ..base.clone()
            },
            *opts,
        );
        for (ti, &tau) in tau_list.iter().enumerate() {
            let p = evaluator.with_tau(tau).joint_coverage()?.value;
            match best[ti] {
                None => best[ti] = Some((n, p)),
                Some((_, bv)) if p > bv => {
                    runner[ti] = best[ti];
                    best[ti] = Some((n, p));
                }
                _ => match runner[ti] {
                    None => runner[ti] = Some((n, p)),
                    Some((_, rv)) if p > rv => runner[ti] = Some((n, p)),
                    _ => {}
                },
            }
        }
    }
    let mut out = Vec::with_capacity(tau_list.len());
    for (ti, &tau) in tau_list.iter().enumerate() {
        let (n_star, p_jc) = best[ti].ok_or(Error::Domain("empty UAV range"))?;
        let (runner_up_n, runner_up_p_jc) = runner[ti].unwrap_or((n_star, p_jc));
        out.push(OptimalN {
            tau,
            n_star,
            p_jc,
            runner_up_n,
            runner_up_p_jc,
        });
    }
    Ok(out)
}

/// Optimal deployment: full heatmap plus its argmax cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRh {
    pub r_star_m: f64,
    pub h_star_m: f64,
    pub p_jc: f64,
    pub sweep: SweepResult,
}

/// Grid-search the (R, h) deployment plane for the analytic joint-coverage
/// maximum; ties break toward smaller R, then smaller h.
pub fn find_optimal_rh(
    base: &NetworkConfig,
    r_values_m: Vec<f64>,
    h_values_m: Vec<f64>,
    opts: &AnalysisOptions,
) -> Result<OptimalRh> {
    let mut spec = SweepSpec::over_grid(base.clone(), r_values_m, h_values_m);
    spec.tracks.monte_carlo = false;
    spec.opts = *opts;
    let sweep = run_sweep(&spec)?;
    let report = sweep
        .optima
        .ok_or(Error::Domain("grid sweep produced no analytic values"))?;
    Ok(OptimalRh {
        r_star_m: report.best_x1,
        h_star_m: report.best_x2.unwrap_or(f64::NAN),
        p_jc: report.best_value,
        sweep,
    })
}

/// Bisection-calibrated thresholds: `γ_h` such that the exact energy
/// coverage hits `target_ph` and `γ_c` such that the communication coverage
/// hits `target_pc`. Both coverages are strictly decreasing in their
/// threshold, so bisection on a bracketing interval converges.
pub fn calibrate_thresholds(
    base: &NetworkConfig,
    target_ph: f64,
    target_pc: f64,
    opts: &AnalysisOptions,
) -> Result<(f64, f64)> {
    if !(0.0 < target_ph && target_ph < 1.0 && 0.0 < target_pc && target_pc < 1.0) {
        return Err(Error::Domain("calibration targets must lie in (0, 1)"));
    }
    base.validate()?;

    let mean_energy = mean_harvested_energy(base, opts)?;
    let gamma_h = bisect_decreasing(
        |g| {
            let config = NetworkConfig {
                energy_threshold_j: g,
                ..base.clone()
            };
            Ok(crate::analysis::energy_coverage_exact(&config, opts)?.value)
        },
        target_ph,
        mean_energy * 1e-4,
        mean_energy * 1e2,
    )?;

    let gamma_c = bisect_decreasing(
        |g| {
            let config = NetworkConfig {
                sinr_threshold: g,
                ..base.clone()
            };
            Ok(crate::analysis::comm_coverage(&config, opts)?.value)
        },
        target_pc,
        1e-8,
        1e4,
    )?;

    Ok((gamma_h, gamma_c))
}

/// Analytic mean of the harvested energy: `N · pητT · E[S] · E[l(d)]`.
pub fn mean_harvested_energy(config: &NetworkConfig, opts: &AnalysisOptions) -> Result<f64> {
    let mean_s = config.shadow_gamma / (config.shadow_q - 1.0);
    let h = config.altitude_m;
    let mean_l = crate::numerics::quad::integrate(
        |x| config.path_loss_const() * libm::pow(libm::sqrt(h * h + x * x), -config.alpha),
        0.0,
        config.radius_m,
        &opts.quad,
    )? / config.radius_m;
    Ok(config.n_uavs as f64 * config.harvest_gain() * mean_s * mean_l)
}

fn bisect_decreasing<F>(mut f: F, target: f64, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    let mut widen = 0;
    while f_lo < target && widen < 8 {
        lo *= 1e-2;
        f_lo = f(lo)?;
        widen += 1;
    }
    while f_hi > target && widen < 16 {
        hi *= 1e2;
        f_hi = f(hi)?;
        widen += 1;
    }
    if f_lo < target || f_hi > target {
        return Err(Error::Domain(
            "calibration target not bracketed by the threshold search range",
        ));
    }
    for _ in 0..80 {
        let mid = libm::sqrt(lo * hi); // log-midpoint: thresholds span decades
        let f_mid = f(mid)?;
        if f_mid >= target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo < 1.0 + 1e-6 {
            break;
        }
    }
    Ok(libm::sqrt(lo * hi))
}
