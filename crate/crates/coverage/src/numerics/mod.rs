//! Reusable numerical primitives.
//!
//! * [`quad`] — adaptive Gauss-Kronrod quadrature on finite and
//!   semi-infinite intervals, scalar or vector-valued integrands.
//! * [`jet`] — truncated Taylor (jet) arithmetic for propagating high-order
//!   derivatives through composed functions.
//! * [`laplace`] — numerical inverse Laplace transformation (fixed Talbot
//!   contour and Euler summation of the Bromwich integral).
//! * [`special`] — log-gamma and regularized incomplete gamma ratios.

pub mod jet;
pub mod laplace;
pub mod quad;
pub mod special;

pub use jet::Jet;
pub use laplace::{inverse_laplace_cdf, CdfEstimate, InverseLaplaceSpec, InversionMethod};
pub use quad::{integrate, integrate_complex, integrate_jet, HalfLineMap, QuadratureSpec};
