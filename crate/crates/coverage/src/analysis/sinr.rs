//! SINR-coverage analysis.
//!
//! Conditioned on the serving distance `r`, the aggregate interference is
//! the sum of `N-1` i.i.d. terms with distances drawn from the truncated
//! link law. Averaging the interferers' Gamma fading in closed form gives
//! the per-interferer Laplace kernel `(1 + s·p·S·l(v)/m_I)^{-m_I}`, whose
//! s-derivatives are available in closed form; integrating the kernel's
//! coefficient stack and raising the resulting jet to the `N-1` power
//! yields all derivatives of the interference transform in one pass.
//!
//! The conditional coverage probability expands the serving link's Gamma
//! tail as a finite sum (integer fading shape m) and turns the moments
//! `E[(I+σ²)^k e^{-s(I+σ²)}]` into derivatives of
//! `L_tot(s) = e^{-σ²s} L_I(s)` at `s* = m γ_c / (p l(r) S)`, leaving a
//! single outer integral over the serving link's shadowing.

use crate::error::{Error, Result};
use crate::geometry::{expect_over_serving, DistanceSupport};
use crate::model::{inv_gamma_pdf_raw, NetworkConfig};
use crate::numerics::jet::Jet;
use crate::numerics::quad::{integrate_vector, QuadratureSpec};

use super::{AnalysisOptions, CoverageMethod, CoverageResult};

/// Jet (derivative stack) of the conditional interference Laplace
/// transform `L_I(s|r) = [E(1 + s·p·S·l(v)/m_I)^{-m_I}]^{N-1}` at `s0 >= 0`.
pub fn interference_laplace_jet(
    config: &NetworkConfig,
    r: f64,
    s0: f64,
    order: usize,
    opts: &AnalysisOptions,
) -> Result<Jet> {
    interference_jet_at_level(config, r, s0, order, &opts.quad)
}

pub(super) fn interference_jet_at_level(
    config: &NetworkConfig,
    r: f64,
    s0: f64,
    order: usize,
    spec: &QuadratureSpec,
) -> Result<Jet> {
    if config.n_uavs == 1 {
        // no interferers: empty product
        return Ok(Jet::constant(1.0, order));
    }
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }
    if !(s0 >= 0.0) {
        return Err(Error::Domain(
            "interference transform expansion point must be non-negative",
        ));
    }

    let m_i = config.m_interferer() as f64;
    let p = config.tx_power_w;
    let q = config.shadow_q;
    let gamma_scale = config.shadow_gamma;
    let h = config.altitude_m;
    let rr = config.radius_m;
    let k_pl = config.path_loss_const();
    let alpha = config.alpha;
    let x_r = crate::geometry::horizontal(config, r);
    let width = rr - x_r;
    let dim = order + 1;
    let inner_spec = spec.tightened(1);

    let out = integrate_vector(
        &mut |u, out: &mut [f64]| {
            let w = 1.0 - u;
            let shadow = u / w;
            let jac = 1.0 / (w * w);
            let weight = inv_gamma_pdf_raw(q, gamma_scale, shadow) * jac;
            let inner = integrate_vector(
                &mut |x, oo: &mut [f64]| {
                    let v = libm::sqrt(h * h + x * x);
                    let l = k_pl * libm::pow(v, -alpha);
                    // closed-form coefficient stack of (1 + c s)^{-m_I}
                    let c = p * shadow * l / m_i;
                    let w0 = 1.0 + c * s0;
                    let mut coeff = libm::pow(w0, -m_i);
                    oo[0] = coeff;
                    for (k, slot) in oo.iter_mut().enumerate().skip(1) {
                        coeff *= -(m_i + k as f64 - 1.0) * c / (w0 * k as f64);
                        *slot = coeff;
                    }
                    Ok(())
                },
                dim,
                x_r,
                rr,
                &inner_spec,
            )?;
            for k in 0..dim {
                out[k] = weight * inner[k] / width;
            }
            Ok(())
        },
        dim,
        0.0,
        1.0,
        spec,
    )?;

    Ok(Jet::from_coeffs(out).powu(config.n_uavs - 1))
}

/// Conditional communication coverage `P[SINR >= γ_c | r]`.
pub fn cond_comm_coverage(config: &NetworkConfig, r: f64, opts: &AnalysisOptions) -> Result<f64> {
    cond_comm_coverage_at_level(config, r, &opts.quad)
}

/// Implementation with an explicit tolerance for the outer (serving
/// shadowing) integral.
pub(super) fn cond_comm_coverage_at_level(
    config: &NetworkConfig,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }
    let m = config.nakagami_m as usize;
    let order = m - 1;
    let gamma_c = config.sinr_threshold;
    let p = config.tx_power_w;
    let l_r = crate::model::path_loss(config, r)?;
    let q = config.shadow_q;
    let gamma_scale = config.shadow_gamma;
    let sigma2 = config.noise_w;
    let jet_spec = spec.tightened(1);

    let out = integrate_vector(
        &mut |u, out: &mut [f64]| {
            let w = 1.0 - u;
            let shadow = u / w;
            let jac = 1.0 / (w * w);
            let weight = inv_gamma_pdf_raw(q, gamma_scale, shadow) * jac;
            let s_star = m as f64 * gamma_c / (p * l_r * shadow);
            let interference = interference_jet_at_level(config, r, s_star, order, &jet_spec)?;
            let total = if sigma2 > 0.0 {
                Jet::variable(s_star, order)
                    .scale(-sigma2)
                    .exp()
                    .mul_jet(&interference)
            } else {
                interference
            };
            // Σ_{k<m} (-1)^k (s*)^k L_tot^{(k)}(s*) / k!  with jet coeffs
            // already holding the 1/k! factor.
            let mut tail = 0.0;
            let mut sk = 1.0;
            for k in 0..=order {
                tail += sk * total.coeff(k);
                sk *= -s_star;
            }
            out[0] = weight * tail;
            Ok(())
        },
        1,
        0.0,
        1.0,
        spec,
    )?;

    let raw = out[0];
    if !(-1e-3..=1.0 + 1e-3).contains(&raw) {
        return Err(Error::Accuracy {
            estimate: raw,
            error_bound: libm::fabs(raw - raw.clamp(0.0, 1.0)),
        });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Marginal communication coverage by deconditioning over the serving
/// distance.
pub fn comm_coverage(config: &NetworkConfig, opts: &AnalysisOptions) -> Result<CoverageResult> {
    config.validate()?;
    let level = opts.quad.tightened(1);
    let raw = expect_over_serving(config, &opts.quad, |r| {
        cond_comm_coverage_at_level(config, r, &level)
    })?;
    Ok(CoverageResult::analytic(raw, CoverageMethod::ExactLaplace))
}
