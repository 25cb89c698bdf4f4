//! Semi-analytic coverage probabilities.
//!
//! * Exact energy coverage by numerically inverting the Laplace transform
//!   of the harvested energy.
//! * Conditional energy coverage through a Gamma moment-matching
//!   approximation of the non-serving harvested energy.
//! * Conditional and marginal SINR coverage through the derivative stack of
//!   the conditional interference Laplace transform.
//! * Joint coverage by deconditioning the product of the two conditional
//!   probabilities over the serving distance.
//!
//! All integrals run innermost-first with tolerances tightened one order of
//! magnitude per nesting level, so the outermost result meets the
//! user-requested tolerance in [`AnalysisOptions::quad`].

mod energy;
mod sinr;

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use core::cell::RefCell;

use crate::error::Result;
use crate::geometry::expect_over_serving;
use crate::model::NetworkConfig;
use crate::numerics::laplace::InverseLaplaceSpec;
use crate::numerics::quad::QuadratureSpec;

pub use energy::{
    cond_energy_coverage, energy_coverage_approx, energy_coverage_exact, energy_laplace,
    mom_params, MomParams,
};
pub use sinr::{comm_coverage, cond_comm_coverage, interference_laplace_jet};

/// How a [`CoverageResult`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMethod {
    /// Laplace-transform route (exact up to quadrature/inversion error).
    ExactLaplace,
    /// Gamma moment-matching approximation of the conditional energy.
    GammaApprox,
    /// Slot simulation.
    MonteCarlo,
}

/// A coverage probability with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageResult {
    /// The probability, clamped to [0, 1].
    pub value: f64,
    pub method: CoverageMethod,
    /// 95% confidence half-width; 0 for analytic methods.
    pub ci_halfwidth: f64,
    /// Unclamped value, kept for diagnostics (inversion overshoot etc.).
    pub raw_value: f64,
}

impl CoverageResult {
    pub(crate) fn analytic(raw: f64, method: CoverageMethod) -> Self {
        Self {
            value: raw.clamp(0.0, 1.0),
            method,
            ci_halfwidth: 0.0,
            raw_value: raw,
        }
    }
}

/// Numerical knobs shared by all analytic operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    /// Tolerance of the outermost integral of each operation.
    pub quad: QuadratureSpec,
    pub inversion: InverseLaplaceSpec,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            quad: QuadratureSpec {
                rel_tol: 1e-6,
                abs_tol: 1e-9,
                ..QuadratureSpec::default()
            },
            inversion: InverseLaplaceSpec::default(),
        }
    }
}

/// Joint energy-and-communication coverage: the serving-distance average of
/// the product of the two conditional coverage probabilities.
pub fn joint_coverage(config: &NetworkConfig, opts: &AnalysisOptions) -> Result<CoverageResult> {
    CoverageEvaluator::new(config.clone(), *opts).joint_coverage()
}

type Cache = Rc<RefCell<BTreeMap<u64, f64>>>;

/// Coverage evaluator with per-serving-distance memoization.
///
/// Both factors of the joint integrand are expensive, and sweeps revisit
/// the same quadrature nodes; results are cached keyed by the exact bit
/// pattern of `r`. The communication-side cache only depends on the
/// geometry, power and SINR threshold, so τ-variants of a configuration
/// can share it (see [`Self::with_tau`]).
pub struct CoverageEvaluator {
    config: NetworkConfig,
    opts: AnalysisOptions,
    comm_cache: Cache,
    energy_cache: Cache,
}

impl CoverageEvaluator {
    pub fn new(config: NetworkConfig, opts: AnalysisOptions) -> Self {
        Self {
            config,
            opts,
            comm_cache: Rc::default(),
            energy_cache: Rc::default(),
        }
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    pub fn options(&self) -> &AnalysisOptions {
        &self.opts
    }

    /// Evaluator for the same scenario at a different harvesting fraction.
    /// The SINR side is unaffected by τ, so the communication cache is
    /// shared; the energy cache starts fresh.
    pub fn with_tau(&self, tau: f64) -> Self {
        Self {
            config: NetworkConfig {
                tau,
                ..self.config.clone()
            },
            opts: self.opts,
            comm_cache: Rc::clone(&self.comm_cache),
            energy_cache: Rc::default(),
        }
    }

    /// Evaluator for the same scenario at a different energy threshold,
    /// sharing the communication cache.
    pub fn with_energy_threshold(&self, energy_threshold_j: f64) -> Self {
        Self {
            config: NetworkConfig {
                energy_threshold_j,
                ..self.config.clone()
            },
            opts: self.opts,
            comm_cache: Rc::clone(&self.comm_cache),
            energy_cache: Rc::default(),
        }
    }

    /// Conditional energy coverage at serving distance `r`, memoized.
    pub fn cond_energy(&self, r: f64) -> Result<f64> {
        let key = r.to_bits();
        if let Some(&v) = self.energy_cache.borrow().get(&key) {
            return Ok(v);
        }
        let v = energy::cond_energy_coverage_at_level(&self.config, r, &self.opts.quad)?;
        self.energy_cache.borrow_mut().insert(key, v);
        Ok(v)
    }

    /// Conditional communication coverage at serving distance `r`, memoized.
    pub fn cond_comm(&self, r: f64) -> Result<f64> {
        let key = r.to_bits();
        if let Some(&v) = self.comm_cache.borrow().get(&key) {
            return Ok(v);
        }
        let v = sinr::cond_comm_coverage_at_level(&self.config, r, &self.opts.quad)?;
        self.comm_cache.borrow_mut().insert(key, v);
        Ok(v)
    }

    pub fn energy_exact(&self) -> Result<CoverageResult> {
        energy::energy_coverage_exact(&self.config, &self.opts)
    }

    pub fn energy_approx(&self) -> Result<CoverageResult> {
        let config = &self.config;
        if config.energy_threshold_j == 0.0 {
            return Ok(CoverageResult::analytic(1.0, CoverageMethod::GammaApprox));
        }
        if config.harvest_gain() == 0.0 {
            return Ok(CoverageResult::analytic(0.0, CoverageMethod::GammaApprox));
        }
        let raw = expect_over_serving(config, &self.opts.quad, |r| self.cond_energy(r))?;
        Ok(CoverageResult::analytic(raw, CoverageMethod::GammaApprox))
    }

    pub fn comm(&self) -> Result<CoverageResult> {
        let raw = expect_over_serving(&self.config, &self.opts.quad, |r| self.cond_comm(r))?;
        Ok(CoverageResult::analytic(raw, CoverageMethod::ExactLaplace))
    }

    pub fn joint_coverage(&self) -> Result<CoverageResult> {
        let config = &self.config;
        let gamma_h_zero = config.energy_threshold_j == 0.0;
        let raw = expect_over_serving(config, &self.opts.quad, |r| {
            let p_c = self.cond_comm(r)?;
            let p_h = if gamma_h_zero { 1.0 } else { self.cond_energy(r)? };
            Ok(p_h * p_c)
        })?;
        Ok(CoverageResult::analytic(raw, CoverageMethod::ExactLaplace))
    }
}
