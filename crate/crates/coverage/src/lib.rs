//! Coverage analysis for RF-powered IoT receivers served by UAV base
//! stations hovering in a 1D aerial corridor.
//!
//! `N` UAV-BSs are placed uniformly and independently on a line segment of
//! length `2R` at altitude `h` (a 1D binomial point process); the receiver
//! sits at the ground origin under the corridor midpoint. Each time slot is
//! split into a charging sub-slot, in which every UAV acts as an RF energy
//! source, and a communication sub-slot, in which the nearest UAV serves the
//! receiver while the remaining `N-1` interfere. Links combine power-law
//! path loss, Nakagami-m fading (Gamma power gain) and inverse-gamma
//! shadowing.
//!
//! The crate computes three metrics, both analytically and by simulation:
//!
//! * energy coverage `P_h` — harvested energy exceeds a threshold,
//! * communication coverage `P_c` — SINR exceeds a threshold,
//! * joint coverage `P_jc` — both events hold in the same slot.
//!
//! Module map:
//!
//! * [`model`] — scenario configuration, path loss, channel distributions.
//! * [`geometry`] — distance distributions of the corridor point process.
//! * [`numerics`] — adaptive quadrature, truncated-Taylor jets, numerical
//!   inverse Laplace transforms.
//! * [`analysis`] — closed-form / semi-analytic coverage expressions.
//! * [`montecarlo`] — independent slot-level simulator with confidence
//!   intervals, used to cross-validate every analytic result.
//! * [`experiments`] — parameter sweeps, optimal UAV count, deployment
//!   grids, threshold calibration.
//!
//! The crate is `no_std` (with `alloc`); all file and CLI handling lives in
//! the companion `corridor-coverage-cli` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// Guards like `!(x > 0.0)` are deliberate: they reject NaN along with the
// out-of-domain values a plain `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod model;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
pub use model::NetworkConfig;
