//! Shared helpers for the integration and acceptance suites: a
//! Kolmogorov-Smirnov check, the literal multinomial second-moment oracle,
//! and an exact conditional energy-coverage route that is independent of
//! the Gamma moment-matching path it cross-checks.

// Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

use corridor_coverage::analysis::AnalysisOptions;
use corridor_coverage::model::{inv_gamma_pdf, NetworkConfig};
use corridor_coverage::numerics::laplace::{
    inverse_laplace_cdf, InverseLaplaceSpec, InversionMethod,
};
use corridor_coverage::numerics::quad::{integrate_complex, integrate_vector, QuadratureSpec};
use num_complex::Complex64;

/// Kolmogorov-Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        sup = sup
            .max((f - i as f64 / n).abs())
            .max(((i + 1) as f64 / n - f).abs());
    }
    sup
}

/// Asymptotic KS critical value at significance level 0.01.
pub fn ks_critical_001(n: usize) -> f64 {
    1.62762 / (n as f64).sqrt()
}

/// Single-term moments of the conditional non-serving energy: `E[X^k]` for
/// `X = pητT · S · h · l(v)` with `v` from the truncated link law, k = 1, 2.
pub fn single_term_moments(config: &NetworkConfig, r: f64) -> (f64, f64) {
    let opts = AnalysisOptions::default();
    let a = config.harvest_gain();
    let q = config.shadow_q;
    let g = config.shadow_gamma;
    let m = config.nakagami_m as f64;
    let mean_l = corridor_coverage::geometry::expect_over_interferer(config, r, &opts.quad, |v| {
        corridor_coverage::model::path_loss(config, v)
    })
    .unwrap();
    let mean_l2 = corridor_coverage::geometry::expect_over_interferer(config, r, &opts.quad, |v| {
        let l = corridor_coverage::model::path_loss(config, v)?;
        Ok(l * l)
    })
    .unwrap();
    let ex = a * (g / (q - 1.0)) * mean_l;
    let ex2 = a * a * (g * g / ((q - 1.0) * (q - 2.0))) * ((m + 1.0) / m) * mean_l2;
    (ex, ex2)
}

/// Literal multinomial expansion of `E[(Σ_{i=2}^N X_i)²]`: enumerate the
/// exponent vectors (k_2..k_N) with Σk_i = 2 — one index carrying 2, or two
/// indices carrying 1 each — and sum coefficient-weighted moment products.
pub fn multinomial_second_moment(config: &NetworkConfig, r: f64) -> f64 {
    let n_rest = (config.n_uavs - 1) as usize;
    let (ex, ex2) = single_term_moments(config, r);
    let mut total = 0.0;
    // k_i = 2 for one i: multinomial coefficient 2!/2! = 1
    for _ in 0..n_rest {
        total += ex2;
    }
    // k_i = k_j = 1 for i < j: coefficient 2!/1!1! = 2
    for i in 0..n_rest {
        for _ in (i + 1)..n_rest {
            total += 2.0 * ex * ex;
        }
    }
    total
}

/// Exact conditional energy coverage `P[E_h >= γ_h | r]` by inverting the
/// product transform `L_serving(s|r) · L_rest(s|r)^{N-1} / s` — a route
/// fully independent of the Gamma moment-matching approximation.
pub fn exact_cond_energy_coverage(config: &NetworkConfig, r: f64) -> f64 {
    let a = config.harvest_gain();
    let m = config.nakagami_m as f64;
    let h = config.altitude_m;
    let rr = config.radius_m;
    let x_r = (r * r - h * h).sqrt();
    let l_r = config.path_loss_const() * r.powf(-config.alpha);
    let spec = QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-12,
        ..QuadratureSpec::default()
    };

    let transform = |s: Complex64| -> corridor_coverage::Result<Complex64> {
        let serving = integrate_complex(
            |u: f64| {
                let w = 1.0 - u;
                let shadow = u / w;
                let jac = 1.0 / (w * w);
                let wt = inv_gamma_pdf(config.shadow_q, config.shadow_gamma, shadow)? * jac;
                Ok((Complex64::new(1.0, 0.0) + s * (a * shadow * l_r / m)).powi(-(m as i32)) * wt)
            },
            0.0,
            1.0,
            &spec,
        )?;
        let rest = {
            let out = integrate_vector(
                &mut |u: f64, out: &mut [f64]| {
                    let w = 1.0 - u;
                    let shadow = u / w;
                    let jac = 1.0 / (w * w);
                    let wt = inv_gamma_pdf(config.shadow_q, config.shadow_gamma, shadow)? * jac;
                    let inner = integrate_complex(
                        |x: f64| {
                            let v = (h * h + x * x).sqrt();
                            let l = config.path_loss_const() * v.powf(-config.alpha);
                            Ok((Complex64::new(1.0, 0.0) + s * (a * shadow * l / m))
                                .powi(-(m as i32)))
                        },
                        x_r,
                        rr,
                        &spec,
                    )?;
                    out[0] = wt * inner.re / (rr - x_r);
                    out[1] = wt * inner.im / (rr - x_r);
                    Ok(())
                },
                2,
                0.0,
                1.0,
                &spec,
            )?;
            Complex64::new(out[0], out[1])
        };
        Ok(serving * rest.powu(config.n_uavs - 1))
    };

    // Bromwich-line summation only: it never leaves the right half-plane,
    // which the product transform shares with any density transform.
    let inv = InverseLaplaceSpec::with_method(InversionMethod::EulerSummation);
    let cdf = inverse_laplace_cdf(transform, config.energy_threshold_j, &inv)
        .expect("conditional inversion");
    1.0 - cdf.value
}
