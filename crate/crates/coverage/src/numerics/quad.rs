//! Adaptive Gauss-Kronrod quadrature.
//!
//! A 21-point Kronrod / 10-point Gauss pair drives globally adaptive
//! bisection: the interval with the largest error estimate is split until
//! every component of the (possibly vector-valued) integral meets the
//! requested tolerance. Vector-valued integrands (complex kernels, jet
//! coefficient stacks) share node evaluations across components, which is
//! what makes derivative-stack integration cheap.
//!
//! Semi-infinite intervals `[a, ∞)` are folded onto `(0, 1)` by a rational
//! or exponential change of variables; the Gauss-Kronrod abscissae are
//! strictly interior, so the folded endpoint is never evaluated.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::jet::Jet;

/// Change of variables used for `[a, ∞)` integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLineMap {
    /// `x = a + t/(1-t)`, Jacobian `1/(1-t)^2`. Good for power-law tails.
    RationalMap,
    /// `x = a - ln(1-t)`, Jacobian `1/(1-t)`. Good for exponential tails.
    ExpMap,
}

/// Tolerances and budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub half_line_map: HalfLineMap,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 120,
            half_line_map: HalfLineMap::RationalMap,
        }
    }
}

impl QuadratureSpec {
    /// Same budget with tolerances tightened by `10^-levels`.
    ///
    /// Nested integrals evaluate innermost-first with one extra order of
    /// accuracy per level so the outermost estimate meets the user request.
    pub fn tightened(&self, levels: u32) -> Self {
        let f = libm::pow(10.0, -(levels as f64));
        Self {
            rel_tol: self.rel_tol * f,
            abs_tol: self.abs_tol * f,
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive"));
        }
        Ok(())
    }
}

/// Integrate a scalar function over `[a, b]`, `b = f64::INFINITY` allowed.
pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let out = integrate_vector(
        &mut |x, out: &mut [f64]| {
            out[0] = f(x);
            Ok(())
        },
        1,
        a,
        b,
        spec,
    )?;
    Ok(out[0])
}

/// Integrate a complex-valued function over `[a, b]`.
pub fn integrate_complex<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let out = integrate_vector(
        &mut |x, out: &mut [f64]| {
            let z = f(x)?;
            out[0] = z.re;
            out[1] = z.im;
            Ok(())
        },
        2,
        a,
        b,
        spec,
    )?;
    Ok(Complex64::new(out[0], out[1]))
}

/// Integrate a jet-valued function coefficient-wise over `[a, b]`.
///
/// Every node evaluation produces the full coefficient stack, so one
/// adaptive pass yields the integral and all its parameter-derivatives.
pub fn integrate_jet<F>(
    mut f: F,
    order: usize,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Jet>
where
    F: FnMut(f64) -> Result<Jet>,
{
    let dim = order + 1;
    let out = integrate_vector(
        &mut |x, out: &mut [f64]| {
            let j = f(x)?;
            debug_assert_eq!(j.order(), order);
            out.copy_from_slice(j.coeffs());
            Ok(())
        },
        dim,
        a,
        b,
        spec,
    )?;
    Ok(Jet::from_coeffs(out))
}

/// Integrate a fallible vector-valued integrand; the workhorse behind the
/// typed wrappers.
pub fn integrate_vector(
    f: &mut dyn FnMut(f64, &mut [f64]) -> Result<()>,
    dim: usize,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    spec.validate()?;
    if a == b {
        return Ok(vec![0.0; dim]);
    }
    if b.is_infinite() {
        return match spec.half_line_map {
            HalfLineMap::RationalMap => integrate_vector(
                &mut |t, out: &mut [f64]| {
                    let w = 1.0 - t;
                    f(a + t / w, out)?;
                    let jac = 1.0 / (w * w);
                    for v in out.iter_mut() {
                        *v *= jac;
                    }
                    Ok(())
                },
                dim,
                0.0,
                1.0,
                spec,
            ),
            HalfLineMap::ExpMap => integrate_vector(
                &mut |t, out: &mut [f64]| {
                    let w = 1.0 - t;
                    f(a - libm::log(w), out)?;
                    let jac = 1.0 / w;
                    for v in out.iter_mut() {
                        *v *= jac;
                    }
                    Ok(())
                },
                dim,
                0.0,
                1.0,
                spec,
            ),
        };
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("lower bound must be finite"));
    }

    let mut heap = BinaryHeap::new();
    let first = Segment::evaluate(f, dim, a, b, 0)?;
    let mut totals = first.results.clone();
    let mut total_err = first.err;
    heap.push(first);

    let mut splits = 0usize;
    loop {
        if converged(&totals, total_err, spec) {
            return Ok(totals);
        }
        if splits >= spec.max_subdivisions {
            let worst = l_inf(&totals);
            return Err(Error::Accuracy {
                estimate: worst,
                error_bound: total_err,
            });
        }
        // Split the interval with the largest error estimate.
        let seg = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval at floating-point resolution; nothing left to gain.
            let worst = l_inf(&totals);
            return Err(Error::Accuracy {
                estimate: worst,
                error_bound: total_err,
            });
        }
        splits += 1;
        let left = Segment::evaluate(f, dim, seg.a, mid, 2 * splits)?;
        let right = Segment::evaluate(f, dim, mid, seg.b, 2 * splits + 1)?;
        for (i, total) in totals.iter_mut().enumerate() {
            *total += left.results[i] + right.results[i] - seg.results[i];
        }
        total_err += left.err + right.err - seg.err;
        heap.push(left);
        heap.push(right);
    }
}

fn converged(totals: &[f64], total_err: f64, spec: &QuadratureSpec) -> bool {
    let scale = l_inf(totals);
    total_err <= f64::max(spec.abs_tol, spec.rel_tol * scale)
}

fn l_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
}

/// One subinterval with its Kronrod estimate and error bound.
struct Segment {
    a: f64,
    b: f64,
    results: Vec<f64>,
    err: f64,
    seq: usize,
}

impl Segment {
    fn evaluate(
        f: &mut dyn FnMut(f64, &mut [f64]) -> Result<()>,
        dim: usize,
        a: f64,
        b: f64,
        seq: usize,
    ) -> Result<Self> {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);

        let mut kronrod = vec![0.0; dim];
        let mut comp_err = vec![0.0; dim];
        let mut nodes = vec![0.0; dim * 21];

        let mut buf = vec![0.0; dim];
        let mut eval = |x: f64, slot: usize, nodes: &mut [f64]| -> Result<()> {
            f(x, &mut buf)?;
            nodes[slot * dim..(slot + 1) * dim].copy_from_slice(&buf);
            Ok(())
        };

        // Node layout: slots 0..10 pair (center - x_i, stored even) with
        // (center + x_i, odd); slot 20 is the midpoint.
        for (i, &xi) in XGK21.iter().enumerate().take(10) {
            let dx = half * xi;
            eval(center - dx, 2 * i, &mut nodes)?;
            eval(center + dx, 2 * i + 1, &mut nodes)?;
        }
        eval(center, 20, &mut nodes)?;

        for c in 0..dim {
            let fc = nodes[20 * dim + c];
            let mut k = WGK21[10] * fc;
            let mut g = 0.0;
            let mut ra = WGK21[10] * libm::fabs(fc);
            for i in 0..10 {
                let f1 = nodes[2 * i * dim + c];
                let f2 = nodes[(2 * i + 1) * dim + c];
                k += WGK21[i] * (f1 + f2);
                ra += WGK21[i] * (libm::fabs(f1) + libm::fabs(f2));
                if i % 2 == 1 {
                    g += WG10[i / 2] * (f1 + f2);
                }
            }
            let mean = 0.5 * k;
            let mut rasc = WGK21[10] * libm::fabs(fc - mean);
            for i in 0..10 {
                let f1 = nodes[2 * i * dim + c];
                let f2 = nodes[(2 * i + 1) * dim + c];
                rasc += WGK21[i] * (libm::fabs(f1 - mean) + libm::fabs(f2 - mean));
            }
            kronrod[c] = k * half;
            let raw = libm::fabs((k - g) * half);
            comp_err[c] = rescale_error(raw, ra * libm::fabs(half), rasc * libm::fabs(half));
        }

        let err = l_inf(&comp_err);
        Ok(Segment {
            a,
            b,
            results: kronrod,
            err,
            seq,
        })
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; sequence number is the deterministic tiebreak.
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// QUADPACK error rescaling: sharpens the raw |K - G| difference while
/// flooring at roundoff level.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = libm::fabs(err);
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = libm::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

// 21-point Kronrod abscissae (positive half) and weights, with the embedded
// 10-point Gauss weights. Standard QUADPACK constants.
#[allow(clippy::excessive_precision)]
const XGK21: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG10: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK21: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
