//! Truncated Taylor series ("jet") arithmetic.
//!
//! A `Jet` holds the coefficients `(f(s0), f'(s0), ..., f^(K)(s0)/K!)` of a
//! function around an expansion point. Sums, truncated Cauchy products,
//! integer powers and exponential composition are closed at order `K`, so a
//! jet pushed through a composite expression carries all derivatives up to
//! order `K` of the composite in a single evaluation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

/// Taylor coefficients of a scalar function at a fixed expansion point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    /// Jet of the constant function `value`.
    pub fn constant(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// Jet of the identity `s ↦ s` evaluated at `value`.
    pub fn variable(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// k-th Taylor coefficient `f^(k)/k!`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    /// Value of the underlying function at the expansion point.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// k-th derivative `f^(k)(s0)` (coefficient times `k!`).
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.coeffs[k] * fact
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul_jet(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.order(), rhs.order());
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += self.coeffs[i] * rhs.coeffs[k - i];
            }
            *slot = acc;
        }
        Self { coeffs: out }
    }

    /// Integer power by binary exponentiation; `n = 0` gives the constant 1.
    pub fn powu(&self, mut n: u32) -> Self {
        let mut result = Jet::constant(1.0, self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_jet(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_jet(&base);
            }
        }
        result
    }

    /// Exponential composition `exp ∘ f` via the standard recurrence
    /// `g_k = (1/k) Σ_{j=1..k} j f_j g_{k-j}`.
    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let mut g = vec![0.0; n];
        g[0] = libm::exp(self.coeffs[0]);
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.coeffs[j] * g[k - j];
            }
            g[k] = acc / k as f64;
        }
        Self { coeffs: g }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        debug_assert_eq!(self.order(), rhs.order());
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        debug_assert_eq!(self.order(), rhs.order());
        Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::{integrate, integrate_jet, QuadratureSpec};
    use approx::assert_relative_eq;

    #[test]
    fn exponential_jet_coefficients() {
        // coefficient k of exp(-σ² s) at s0 is (-σ²)^k e^{-σ² s0} / k!
        let sigma2 = 0.7;
        let s0 = 1.3;
        let j = Jet::variable(s0, 4).scale(-sigma2).exp();
        let mut fact = 1.0;
        for k in 0..=4 {
            if k > 0 {
                fact *= k as f64;
            }
            let expect = libm::pow(-sigma2, k as f64) * libm::exp(-sigma2 * s0) / fact;
            assert_relative_eq!(j.coeff(k), expect, max_relative = 1e-13);
        }
    }

    #[test]
    fn product_rule_matches_finite_differences() {
        // (J²)' = 2 J J' for J(s) = (1 + 2s)^{-3}, checked against central
        // differences of J² at 1e-6 relative.
        let s0 = 0.4;
        let f = |s: f64| libm::pow(1.0 + 2.0 * s, -3.0);
        let jet = poly_inv_jet(s0, 2.0, 3.0, 3);
        let sq = jet.mul_jet(&jet);
        let h = 1e-5;
        let fd = (f(s0 + h).powi(2) - f(s0 - h).powi(2)) / (2.0 * h);
        assert_relative_eq!(sq.derivative(1), fd, max_relative = 1e-6);
        assert_relative_eq!(sq.derivative(1), 2.0 * jet.value() * jet.derivative(1), max_relative = 1e-13);
    }

    /// Jet of (1 + a s)^{-m} at s0: coefficient k is
    /// (-1)^k (m)_k a^k (1+a s0)^{-m-k} / k! with (m)_k the rising factorial.
    fn poly_inv_jet(s0: f64, a: f64, m: f64, order: usize) -> Jet {
        let w = 1.0 + a * s0;
        let mut coeffs = alloc::vec::Vec::with_capacity(order + 1);
        let mut c = libm::pow(w, -m);
        coeffs.push(c);
        for k in 1..=order {
            c *= -(m + k as f64 - 1.0) * a / (w * k as f64);
            coeffs.push(c);
        }
        Jet::from_coeffs(coeffs)
    }

    #[test]
    fn squared_integral_jet_matches_finite_differences() {
        // g(s) = [∫_0^∞ (1+sx) e^{-x} dx]² = (1+s)²; compare the order-3 jet
        // at s0 = 0.5 against central finite differences of a plain
        // quadrature of g.
        let spec = QuadratureSpec::default();
        let s0 = 0.5;
        let jet = integrate_jet(
            |x| {
                Ok(Jet::from_coeffs(alloc::vec![
                    (1.0 + s0 * x) * (-x).exp(),
                    x * (-x).exp(),
                    0.0,
                    0.0,
                ]))
            },
            3,
            0.0,
            f64::INFINITY,
            &spec,
        )
        .unwrap()
        .powu(2);

        let g = |s: f64| {
            let v = integrate(|x| (1.0 + s * x) * (-x).exp(), 0.0, f64::INFINITY, &spec).unwrap();
            v * v
        };
        let h = 1e-2;
        let d1 = (g(s0 + h) - g(s0 - h)) / (2.0 * h);
        let d2 = (g(s0 + h) - 2.0 * g(s0) + g(s0 - h)) / (h * h);
        let d3 = (g(s0 + 2.0 * h) - 2.0 * g(s0 + h) + 2.0 * g(s0 - h) - g(s0 - 2.0 * h))
            / (2.0 * h * h * h);

        assert_relative_eq!(jet.value(), g(s0), max_relative = 1e-9);
        assert_relative_eq!(jet.derivative(1), d1, max_relative = 1e-5);
        assert_relative_eq!(jet.derivative(2), d2, max_relative = 1e-5);
        // the third derivative of (1+s)² vanishes; both routes must agree on 0
        assert!(jet.derivative(3).abs() < 1e-6 && d3.abs() < 1e-6);
    }

    #[test]
    fn powu_zero_is_constant_one() {
        let j = Jet::variable(2.0, 3).powu(0);
        assert_eq!(j.coeffs(), &[1.0, 0.0, 0.0, 0.0]);
    }
}
