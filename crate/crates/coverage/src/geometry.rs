//! Distance distributions of the 1D corridor point process.
//!
//! `N` UAVs sit at horizontal offsets `u_i ~ Uniform(-R, R)` at altitude
//! `h`; the receiver is at the ground origin, so a link distance is
//! `d = √(u² + h²)` with CDF `F_d(d) = √(d²-h²)/R` on `[h, √(h²+R²)]`.
//! The serving distance is the minimum order statistic; conditioned on the
//! serving distance `r`, the remaining `N-1` distances are i.i.d. with the
//! law of `d` truncated to `[r, √(h²+R²)]`.
//!
//! Every density here has an integrable inverse-square-root endpoint
//! singularity at `d = h`. All integrals against them are therefore taken
//! in the substituted variable `x = √(d²-h²) ∈ [0, R]`, where the serving
//! density becomes the polynomial `N/R (1-x/R)^{N-1}` (the minimum of `N`
//! uniforms) and the link density becomes the uniform weight `1/R`.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::NetworkConfig;
use crate::numerics::quad::{integrate_vector, QuadratureSpec};

/// Interval carrying the support of a link-distance law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSupport {
    pub lower_m: f64,
    pub upper_m: f64,
}

impl DistanceSupport {
    /// Support of the serving and unordered link distances, `[h, √(h²+R²)]`.
    pub fn link(config: &NetworkConfig) -> Self {
        Self {
            lower_m: config.altitude_m,
            upper_m: config.max_link_distance_m(),
        }
    }

    /// Support of interferer distances conditioned on serving distance `r`.
    pub fn conditional(config: &NetworkConfig, r: f64) -> Self {
        Self {
            lower_m: r,
            upper_m: config.max_link_distance_m(),
        }
    }

    pub fn contains(&self, d: f64) -> bool {
        d >= self.lower_m && d <= self.upper_m
    }
}

/// One sampled corridor placement.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NetworkRealization {
    /// Horizontal offsets `u_i ∈ [-R, R]`.
    pub offsets: Vec<f64>,
    /// Link distances `d_i = √(u_i² + h²)`, same order as `offsets`.
    pub link_distances: Vec<f64>,
    /// Link distances sorted ascending; `ordered_distances[0]` is the
    /// serving distance.
    pub ordered_distances: Vec<f64>,
    /// Index into `link_distances` of the serving (nearest) UAV.
    pub serving_index: usize,
}

impl NetworkRealization {
    pub fn serving_distance(&self) -> f64 {
        self.ordered_distances[0]
    }
}

/// Horizontal coordinate `x = √(d²-h²)` of a link distance; NaN-safe for
/// `d` marginally below `h`.
#[inline]
pub(crate) fn horizontal(config: &NetworkConfig, d: f64) -> f64 {
    let h = config.altitude_m;
    libm::sqrt(f64::max(d * d - h * h, 0.0))
}

/// PDF of the serving distance `r_s = r_1`:
/// `N (1 - √(r²-h²)/R)^{N-1} · r / (R √(r²-h²))` on `(h, √(h²+R²)]`.
///
/// Returns 0 outside the support and `f64::INFINITY` at exactly `r = h`,
/// where the density diverges (integrably).
pub fn serving_pdf(config: &NetworkConfig, r: f64) -> f64 {
    let support = DistanceSupport::link(config);
    if r < support.lower_m || r > support.upper_m {
        return 0.0;
    }
    if r == support.lower_m {
        return f64::INFINITY;
    }
    let n = config.n_uavs as f64;
    let x = horizontal(config, r);
    let rr = config.radius_m;
    n * libm::pow(1.0 - x / rr, n - 1.0) * r / (rr * x)
}

/// CDF of the serving distance: `1 - (1 - √(r²-h²)/R)^N`.
pub fn serving_cdf(config: &NetworkConfig, r: f64) -> f64 {
    let support = DistanceSupport::link(config);
    if r <= support.lower_m {
        return 0.0;
    }
    if r >= support.upper_m {
        return 1.0;
    }
    let x = horizontal(config, r);
    1.0 - libm::pow(1.0 - x / config.radius_m, config.n_uavs as f64)
}

/// CDF of one unordered link distance: `√(d²-h²)/R`, clamped outside the
/// support.
pub fn link_cdf(config: &NetworkConfig, d: f64) -> f64 {
    let support = DistanceSupport::link(config);
    if d <= support.lower_m {
        return 0.0;
    }
    if d >= support.upper_m {
        return 1.0;
    }
    horizontal(config, d) / config.radius_m
}

/// PDF of one unordered link distance: `d / (R √(d²-h²))` on the support,
/// 0 outside, `f64::INFINITY` at exactly `d = h`.
pub fn link_pdf(config: &NetworkConfig, d: f64) -> f64 {
    let support = DistanceSupport::link(config);
    if d < support.lower_m || d > support.upper_m {
        return 0.0;
    }
    if d == support.lower_m {
        return f64::INFINITY;
    }
    d / (config.radius_m * horizontal(config, d))
}

/// PDF of one interferer distance conditioned on serving distance `r`,
/// the definitional truncation `f_d(v) / (1 - F_d(r))` supported on
/// `[r, √(h²+R²)]`.
pub fn interferer_pdf_given_r(config: &NetworkConfig, r: f64, v: f64) -> Result<f64> {
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }
    if v < r || v > support.upper_m {
        return Ok(0.0);
    }
    let tail = 1.0 - link_cdf(config, r);
    Ok(link_pdf(config, v) / tail)
}

/// CDF of the conditional interferer-distance law.
pub fn interferer_cdf_given_r(config: &NetworkConfig, r: f64, v: f64) -> Result<f64> {
    let support = DistanceSupport::link(config);
    if !(r > support.lower_m && r < support.upper_m) {
        return Err(Error::Domain(
            "serving distance must lie strictly inside the link support",
        ));
    }
    if v <= r {
        return Ok(0.0);
    }
    if v >= support.upper_m {
        return Ok(1.0);
    }
    let fr = link_cdf(config, r);
    Ok((link_cdf(config, v) - fr) / (1.0 - fr))
}

/// Inverse CDF of the conditional interferer law; exact closed form used
/// for rejection-free conditioned sampling.
pub fn interferer_quantile_given_r(config: &NetworkConfig, r: f64, u: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u));
    let h = config.altitude_m;
    let x_r = horizontal(config, r);
    let x = x_r + u * (config.radius_m - x_r);
    libm::sqrt(h * h + x * x)
}

/// Draw one corridor placement: `N` offsets uniform on `[-R, R]` plus the
/// induced unordered and ordered link distances.
pub fn sample_corridor<R: Rng + ?Sized>(config: &NetworkConfig, rng: &mut R) -> NetworkRealization {
    let mut real = NetworkRealization::default();
    sample_corridor_into(config, rng, &mut real);
    real
}

/// Buffer-reusing variant of [`sample_corridor`] for hot simulation loops.
pub fn sample_corridor_into<R: Rng + ?Sized>(
    config: &NetworkConfig,
    rng: &mut R,
    out: &mut NetworkRealization,
) {
    let n = config.n_uavs as usize;
    let h = config.altitude_m;
    out.offsets.clear();
    out.link_distances.clear();
    out.ordered_distances.clear();

    let mut serving = 0usize;
    let mut best = f64::INFINITY;
    for i in 0..n {
        // Unit draw scaled by R so grid sweeps over R share the underlying
        // random stream (common random numbers).
        let unit: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let u = unit * config.radius_m;
        let d = libm::sqrt(u * u + h * h);
        out.offsets.push(u);
        out.link_distances.push(d);
        if d < best {
            best = d;
            serving = i;
        }
    }
    out.ordered_distances.extend_from_slice(&out.link_distances);
    out.ordered_distances
        .sort_unstable_by(|a, b| a.partial_cmp(b).expect("distances are finite"));
    out.serving_index = serving;
}

/// Expectation of `g(r)` under the serving-distance law, evaluated in the
/// substituted variable: `∫_0^R g(√(h²+x²)) · N/R (1-x/R)^{N-1} dx`.
pub fn expect_over_serving<G>(
    config: &NetworkConfig,
    spec: &QuadratureSpec,
    mut g: G,
) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let n = config.n_uavs as f64;
    let rr = config.radius_m;
    let h = config.altitude_m;
    let out = integrate_vector(
        &mut |x, out: &mut [f64]| {
            let r = libm::sqrt(h * h + x * x);
            let w = n / rr * libm::pow(1.0 - x / rr, n - 1.0);
            out[0] = w * g(r)?;
            Ok(())
        },
        1,
        0.0,
        rr,
        spec,
    )?;
    Ok(out[0])
}

/// Expectation of `g(v)` under the conditional interferer law, evaluated in
/// the substituted variable: `∫_{x_r}^R g(√(h²+x²)) dx / (R - x_r)`.
pub fn expect_over_interferer<G>(
    config: &NetworkConfig,
    r: f64,
    spec: &QuadratureSpec,
    mut g: G,
) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let rr = config.radius_m;
    let h = config.altitude_m;
    let x_r = horizontal(config, r);
    if !(x_r < rr) {
        return Err(Error::Domain(
            "conditional expectation requires r below the support maximum",
        ));
    }
    let width = rr - x_r;
    let out = integrate_vector(
        &mut |x, out: &mut [f64]| {
            let v = libm::sqrt(h * h + x * x);
            out[0] = g(v)? / width;
            Ok(())
        },
        1,
        x_r,
        rr,
        spec,
    )?;
    Ok(out[0])
}
