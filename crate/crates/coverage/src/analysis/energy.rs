//! Energy-coverage analysis.
//!
//! The harvested energy in one charging sub-slot is
//! `E_h = p η τ T Σ_i h_i S_i l(d_i)` over all `N` links. Its Laplace
//! transform factorizes over the i.i.d. links; averaging the Gamma fading
//! in closed form leaves a double integral over shadowing and link
//! distance, raised to the N-th power. The exact coverage probability is
//! one minus the numerically inverted CDF transform.
//!
//! Conditioned on the serving distance, the non-serving harvested energy is
//! approximated by a Gamma distribution whose shape/scale come from moment
//! matching; the conditional coverage probability then averages a
//! regularized upper incomplete gamma ratio over the serving link's own
//! fading and shadowing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{expect_over_interferer, expect_over_serving, DistanceSupport};
use crate::model::{gamma_fading_pdf_raw, inv_gamma_pdf_raw, NetworkConfig};
use crate::numerics::laplace::inverse_laplace_cdf;
use crate::numerics::quad::{integrate_vector, QuadratureSpec};
use crate::numerics::special::reg_upper_gamma;

use super::{AnalysisOptions, CoverageMethod, CoverageResult};

/// Quadrature tolerance for one transform evaluation feeding the numerical
/// inversion at time `t`.
///
/// Contour nodes with `Re s > 0` are amplified by the inversion weights
/// `e^{t·Re s}` (up to ~2e8 on the 48-node Talbot contour), so they need
/// near-roundoff absolute accuracy. Nodes deep in the left half-plane are
/// damped by the same factor and their kernels grow large, so holding them
/// to the tight tolerance is both impossible and pointless; the allowance
/// is scaled by the damping.
fn transform_spec(t: f64, s: Complex64) -> QuadratureSpec {
    let damp = libm::exp((t * s.re).clamp(-700.0, 0.0));
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: (3e-12 / damp).min(1.0),
        max_subdivisions: 400,
        half_line_map: crate::numerics::quad::HalfLineMap::RationalMap,
    }
}

/// Tolerances scaled by `1/f` for the inner level of the transform's
/// two-level quadrature (the usual order-of-magnitude tightening would
/// push the inner integral below its roundoff floor).
fn scaled(spec: &QuadratureSpec, f: f64) -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: spec.rel_tol / f,
        abs_tol: spec.abs_tol / f,
        ..*spec
    }
}

/// Laplace transform of the harvested energy `E_h` at complex `s`:
/// the per-link kernel `(1 + s·pητT·S·l(d)/m)^{-m}` averaged over the
/// shadowing and link-distance laws, raised to the N-th power.
pub fn energy_laplace(
    config: &NetworkConfig,
    s: Complex64,
    opts: &AnalysisOptions,
) -> Result<Complex64> {
    energy_laplace_with(config, s, &opts.quad)
}

fn energy_laplace_with(
    config: &NetworkConfig,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let inner = link_energy_kernel_mean(config, s, spec)?;
    Ok(inner.powu(config.n_uavs))
}

/// `E[(1 + s·a·S·l(d)/m)^{-m}]` over shadowing S and one unordered link
/// distance d, with the distance integral in the substituted variable.
fn link_energy_kernel_mean(
    config: &NetworkConfig,
    s: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let a = config.harvest_gain();
    let m = config.nakagami_m as f64;
    let neg_m = -(config.nakagami_m as i32);
    let q = config.shadow_q;
    let gamma_scale = config.shadow_gamma;
    let h = config.altitude_m;
    let rr = config.radius_m;
    let k_pl = config.path_loss_const();
    let alpha = config.alpha;
    let inner_spec = scaled(spec, 3.0);

    let out = integrate_vector(
        &mut |u, out: &mut [f64]| {
            // shadowing mapped onto (0,1): S = u/(1-u)
            let w = 1.0 - u;
            let shadow = u / w;
            let jac = 1.0 / (w * w);
            let weight = inv_gamma_pdf_raw(q, gamma_scale, shadow) * jac;
            let scale = s * (a * shadow / m);
            let inner = integrate_vector(
                &mut |x, oo: &mut [f64]| {
                    let d = libm::sqrt(h * h + x * x);
                    let l = k_pl * libm::pow(d, -alpha);
                    let z = (Complex64::new(1.0, 0.0) + scale * l).powi(neg_m);
                    oo[0] = z.re;
                    oo[1] = z.im;
                    Ok(())
                },
                2,
                0.0,
                rr,
                &inner_spec,
            )?;
            out[0] = weight * inner[0] / rr;
            out[1] = weight * inner[1] / rr;
            Ok(())
        },
        2,
        0.0,
        1.0,
        spec,
    )?;
    Ok(Complex64::new(out[0], out[1]))
}

/// Exact energy coverage probability `P[E_h >= γ_h]` by inverting the CDF
/// transform `L_{E_h}(s)/s` at `t = γ_h`.
pub fn energy_coverage_exact(
    config: &NetworkConfig,
    opts: &AnalysisOptions,
) -> Result<CoverageResult> {
    config.validate()?;
    if config.energy_threshold_j == 0.0 {
        return Ok(CoverageResult::analytic(1.0, CoverageMethod::ExactLaplace));
    }
    if config.harvest_gain() == 0.0 {
        return Ok(CoverageResult::analytic(0.0, CoverageMethod::ExactLaplace));
    }
    let t = config.energy_threshold_j;
    let cdf = inverse_laplace_cdf(
        |s| energy_laplace_with(config, s, &transform_spec(t, s)),
        t,
        &opts.inversion,
    )?;
    Ok(CoverageResult {
        value: (1.0 - cdf.value).clamp(0.0, 1.0),
        method: CoverageMethod::ExactLaplace,
        ci_halfwidth: 0.0,
        raw_value: 1.0 - cdf.raw,
    })
}

/// Gamma moment-matching parameters of the conditional non-serving
/// harvested energy at serving distance `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomParams {
    /// Matched Gamma shape.
    pub k_mom: f64,
    /// Matched Gamma scale.
    pub theta_mom: f64,
    /// Conditional mean of the non-serving harvested energy.
    pub cond_mean: f64,
    /// Conditional second moment.
    pub cond_second_moment: f64,
    pub serving_r: f64,
}

/// Moment-match the conditional non-serving harvested energy.
///
/// The second moment uses the i.i.d. reduction of the multinomial
/// expansion: `E[(Σ X_i)²] = (N-1) E[X²] + (N-1)(N-2) (E[X])²`, with the
/// single-term moments factorizing over fading (`E[h]=1`,
/// `E[h²]=(m+1)/m`), shadowing (`E[S]=γ/(q-1)`, `E[S²]=γ²/((q-1)(q-2))`)
/// and path loss of the truncated distance law.
pub fn mom_params(config: &NetworkConfig, r: f64, opts: &AnalysisOptions) -> Result<MomParams> {
    mom_params_at_level(config, r, &opts.quad)
}

fn mom_params_at_level(
    config: &NetworkConfig,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<MomParams> {
    if config.n_uavs < 2 {
        return Err(Error::Degenerate(
            "conditional non-serving energy needs at least two UAVs",
        ));
    }
    let q = config.shadow_q;
    if q <= 2.0 {
        return Err(Error::InfiniteVariance { q });
    }
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }

    let n_rest = (config.n_uavs - 1) as f64;
    let a = config.harvest_gain();
    let m = config.nakagami_m as f64;
    let gamma_scale = config.shadow_gamma;

    let mean_l = expect_over_interferer(config, r, spec, |v| crate::model::path_loss(config, v))?;
    let mean_l2 = expect_over_interferer(config, r, spec, |v| {
        let l = crate::model::path_loss(config, v)?;
        Ok(l * l)
    })?;

    let mean_s = gamma_scale / (q - 1.0);
    let mean_s2 = gamma_scale * gamma_scale / ((q - 1.0) * (q - 2.0));
    let mean_h2 = (m + 1.0) / m;

    let single_mean = a * mean_s * mean_l;
    let single_second = a * a * mean_s2 * mean_h2 * mean_l2;

    let cond_mean = n_rest * single_mean;
    let variance = n_rest * (single_second - single_mean * single_mean);
    let cond_second_moment = variance + cond_mean * cond_mean;

    if !(variance > 0.0) {
        return Err(Error::Degenerate(
            "conditional energy variance vanished; moment matching undefined",
        ));
    }

    Ok(MomParams {
        k_mom: cond_mean * cond_mean / variance,
        theta_mom: variance / cond_mean,
        cond_mean,
        cond_second_moment,
        serving_r: r,
    })
}

/// Conditional energy coverage probability `P[E_h >= γ_h | r]`.
///
/// The serving link's contribution is exact; the other `N-1` links enter
/// through the matched Gamma tail `Q(k_mom, [γ_h - pητT·S·h·l(r)]⁺/θ_mom)`
/// (regularized, so the value is a probability), averaged over the serving
/// link's fading and shadowing. With a single UAV the probability is the
/// exact single-link tail instead.
pub fn cond_energy_coverage(
    config: &NetworkConfig,
    r: f64,
    opts: &AnalysisOptions,
) -> Result<f64> {
    cond_energy_coverage_at_level(config, r, &opts.quad)
}

/// Implementation with an explicit tolerance for the outer (shadowing)
/// integral, so callers that embed this inside another quadrature can pass
/// an already-tightened spec.
pub(super) fn cond_energy_coverage_at_level(
    config: &NetworkConfig,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let gamma_h = config.energy_threshold_j;
    if gamma_h == 0.0 {
        return Ok(1.0);
    }
    let a = config.harvest_gain();
    if a == 0.0 {
        return Ok(0.0);
    }
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }

    let l_r = crate::model::path_loss(config, r)?;
    let m = config.nakagami_m as f64;
    let q = config.shadow_q;
    let gamma_scale = config.shadow_gamma;

    if config.n_uavs == 1 {
        // Exact single-link tail: E_S[ Q(m, m γ_h / (a S l(r))) ].
        let out = integrate_vector(
            &mut |u, out: &mut [f64]| {
                let w = 1.0 - u;
                let shadow = u / w;
                let jac = 1.0 / (w * w);
                let weight = inv_gamma_pdf_raw(q, gamma_scale, shadow) * jac;
                out[0] = weight * reg_upper_gamma(m, m * gamma_h / (a * shadow * l_r));
                Ok(())
            },
            1,
            0.0,
            1.0,
            spec,
        )?;
        return Ok(out[0].clamp(0.0, 1.0));
    }

    let mom = mom_params_at_level(config, r, &spec.tightened(1))?;
    let inner_spec = spec.tightened(1);

    // For a given serving shadow S the fading integral splits at
    // h* = γ_h/(a S l(r)): above h* the bracket is zero and the Gamma tail
    // ratio is 1, contributing the fading cCDF in closed form.
    let out = integrate_vector(
        &mut |u, out: &mut [f64]| {
            let w = 1.0 - u;
            let shadow = u / w;
            let jac = 1.0 / (w * w);
            let weight = inv_gamma_pdf_raw(q, gamma_scale, shadow) * jac;
            let h_star = gamma_h / (a * shadow * l_r);
            let below = integrate_vector(
                &mut |hh, oo: &mut [f64]| {
                    let deficit = gamma_h - a * shadow * hh * l_r;
                    oo[0] = gamma_fading_pdf_raw(m, hh)
                        * reg_upper_gamma(mom.k_mom, deficit / mom.theta_mom);
                    Ok(())
                },
                1,
                0.0,
                h_star,
                &inner_spec,
            )?;
            let above = reg_upper_gamma(m, m * h_star);
            out[0] = weight * (below[0] + above);
            Ok(())
        },
        1,
        0.0,
        1.0,
        spec,
    )?;
    Ok(out[0].clamp(0.0, 1.0))
}

/// Marginal energy coverage by deconditioning the Gamma-approximated
/// conditional probability over the serving distance.
pub fn energy_coverage_approx(
    config: &NetworkConfig,
    opts: &AnalysisOptions,
) -> Result<CoverageResult> {
    config.validate()?;
    if config.energy_threshold_j == 0.0 {
        return Ok(CoverageResult::analytic(1.0, CoverageMethod::GammaApprox));
    }
    if config.harvest_gain() == 0.0 {
        return Ok(CoverageResult::analytic(0.0, CoverageMethod::GammaApprox));
    }
    let level = opts.quad.tightened(1);
    let raw = expect_over_serving(config, &opts.quad, |r| {
        cond_energy_coverage_at_level(config, r, &level)
    })?;
    Ok(CoverageResult::analytic(raw, CoverageMethod::GammaApprox))
}
