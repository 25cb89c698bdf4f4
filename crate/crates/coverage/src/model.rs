//! Scenario configuration, path loss, and the link-level channel models.
//!
//! Links combine three multiplicative effects:
//!
//! * power-law path loss `l(d) = K d^-α` with `K = (c / 4π f_c)²`,
//! * Nakagami-m small-scale fading: power gain `h ~ Gamma(m, 1/m)`, unit
//!   mean (shape restricted to integers so the SINR analysis can expand the
//!   Gamma tail as a finite sum),
//! * inverse-gamma shadowing `S ~ IG(q, γ)` capturing random blockage.
//!
//! Harvest-phase and communication-phase draws of the same link are
//! independent.

use rand::Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Thermal noise over a 1 MHz band (-114 dBm), the documented default for
/// the noise power, which the source material leaves unspecified.
pub const DEFAULT_NOISE_W: f64 = 3.981_071_705_534_972e-15;

/// Full scenario description. Distances in meters, powers in watts (the CLI
/// accepts dBm and converts), times in seconds, energies in joules, SINR
/// thresholds linear.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct NetworkConfig {
    /// Number of UAV base stations on the corridor.
    pub n_uavs: u32,
    /// Corridor altitude above the receiver plane.
    pub altitude_m: f64,
    /// Half-length of the corridor (the ground disk radius).
    pub radius_m: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Carrier frequency in Hz.
    pub carrier_hz: f64,
    /// Nakagami fading shape of every link (integer).
    pub nakagami_m: u32,
    /// Inverse-gamma shadowing shape, must exceed 1.
    pub shadow_q: f64,
    /// Inverse-gamma shadowing scale. Defaults to `q - 1` so shadowing has
    /// unit mean and leaves the average link budget unchanged.
    pub shadow_gamma: f64,
    /// UAV transmit power in watts.
    pub tx_power_w: f64,
    /// RF-to-DC conversion efficiency, in (0, 1).
    pub rf_dc_eff: f64,
    /// Slot duration in seconds.
    pub slot_s: f64,
    /// Fraction of the slot devoted to energy harvesting, in [0, 1].
    pub tau: f64,
    /// Noise power in watts.
    pub noise_w: f64,
    /// Energy coverage threshold in joules.
    pub energy_threshold_j: f64,
    /// SINR coverage threshold, linear.
    pub sinr_threshold: f64,
    /// Optional separate Nakagami shape for interfering links; defaults to
    /// `nakagami_m`. Exposed for sensitivity experiments only.
    #[cfg_attr(feature = "serde", serde(default))]
    pub interferer_nakagami_m: Option<u32>,
}

impl Default for NetworkConfig {
    /// The reference scenario: N=10, h=100 m, R=200 m, α=2.2, f_c=3.5 GHz,
    /// m=2, q=3 (γ=2 for unit-mean shadowing), p=32 dBm, η=0.5, T=1 s,
    /// τ=T/4. Noise and thresholds are documented defaults; see
    /// `experiments::calibrate_thresholds` for threshold selection.
    fn default() -> Self {
        Self {
            n_uavs: 10,
            altitude_m: 100.0,
            radius_m: 200.0,
            alpha: 2.2,
            carrier_hz: 3.5e9,
            nakagami_m: 2,
            shadow_q: 3.0,
            shadow_gamma: 2.0,
            tx_power_w: dbm_to_watts(32.0),
            rf_dc_eff: 0.5,
            slot_s: 1.0,
            tau: 0.25,
            noise_w: DEFAULT_NOISE_W,
            energy_threshold_j: 1e-9,
            sinr_threshold: 1.0,
            interferer_nakagami_m: None,
        }
    }
}

impl NetworkConfig {
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, field: &'static str, reason: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Config {
                    field,
                    reason: alloc::string::String::from(reason),
                })
            }
        }
        check(self.n_uavs >= 1, "n_uavs", "must be at least 1")?;
        check(
            self.altitude_m > 0.0 && self.altitude_m.is_finite(),
            "altitude_m",
            "must be positive",
        )?;
        check(
            self.radius_m > 0.0 && self.radius_m.is_finite(),
            "radius_m",
            "must be positive",
        )?;
        check(self.alpha > 0.0, "alpha", "must be positive")?;
        check(self.carrier_hz > 0.0, "carrier_hz", "must be positive")?;
        check(self.nakagami_m >= 1, "nakagami_m", "must be at least 1")?;
        check(self.shadow_q > 1.0, "shadow_q", "must exceed 1")?;
        check(self.shadow_gamma > 0.0, "shadow_gamma", "must be positive")?;
        check(self.tx_power_w > 0.0, "tx_power_w", "must be positive")?;
        check(
            self.rf_dc_eff > 0.0 && self.rf_dc_eff < 1.0,
            "rf_dc_eff",
            "must lie in (0, 1)",
        )?;
        check(self.slot_s > 0.0, "slot_s", "must be positive")?;
        check(
            (0.0..=1.0).contains(&self.tau),
            "tau",
            "must lie in [0, 1]",
        )?;
        check(self.noise_w >= 0.0, "noise_w", "must be non-negative")?;
        check(
            self.energy_threshold_j >= 0.0,
            "energy_threshold_j",
            "must be non-negative",
        )?;
        check(
            self.sinr_threshold > 0.0,
            "sinr_threshold",
            "must be positive",
        )?;
        if let Some(mi) = self.interferer_nakagami_m {
            check(mi >= 1, "interferer_nakagami_m", "must be at least 1")?;
        }
        Ok(())
    }

    /// Path-loss constant `K = (c / 4π f_c)²`.
    pub fn path_loss_const(&self) -> f64 {
        let k = SPEED_OF_LIGHT_M_S / (4.0 * core::f64::consts::PI * self.carrier_hz);
        k * k
    }

    /// Largest possible link distance `√(h² + R²)`.
    pub fn max_link_distance_m(&self) -> f64 {
        libm::sqrt(self.altitude_m * self.altitude_m + self.radius_m * self.radius_m)
    }

    /// Joint harvest gain `p η τ T` multiplying every harvested-energy term.
    pub fn harvest_gain(&self) -> f64 {
        self.tx_power_w * self.rf_dc_eff * self.tau * self.slot_s
    }

    /// Nakagami shape used for interfering links.
    pub fn m_interferer(&self) -> u32 {
        self.interferer_nakagami_m.unwrap_or(self.nakagami_m)
    }
}

/// Convert a transmit power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    libm::pow(10.0, (dbm - 30.0) / 10.0)
}

/// Convert watts to dBm.
pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * libm::log10(w) + 30.0
}

/// Which sub-slot a channel draw belongs to. Draws in the two phases are
/// independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Harvest,
    Comm,
}

/// One realization of the multiplicative channel factors of a single link
/// in a single sub-slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelDraw {
    pub fading_gain: f64,
    pub shadow_factor: f64,
    pub phase_tag: Phase,
}

/// Power-law path loss `l(d) = K d^-α`.
pub fn path_loss(config: &NetworkConfig, distance_m: f64) -> Result<f64> {
    if !(distance_m > 0.0) {
        return Err(Error::Domain("path loss requires a positive distance"));
    }
    Ok(config.path_loss_const() * libm::pow(distance_m, -config.alpha))
}

/// Density of the Nakagami-m power gain, `Gamma(m, 1/m)`:
/// `m^m x^{m-1} e^{-mx} / Γ(m)`. Unit mean for every m.
pub fn gamma_fading_pdf(m: u32, x: f64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("fading shape m must be at least 1"));
    }
    if !(x > 0.0) {
        return Err(Error::Domain("fading gain density requires x > 0"));
    }
    Ok(gamma_fading_pdf_raw(m as f64, x))
}

pub(crate) fn gamma_fading_pdf_raw(m: f64, x: f64) -> f64 {
    libm::exp(m * libm::log(m) + (m - 1.0) * libm::log(x) - m * x - libm::lgamma(m))
}

/// Inverse-gamma shadowing density `γ^q x^{-q-1} e^{-γ/x} / Γ(q)`.
pub fn inv_gamma_pdf(q: f64, gamma_scale: f64, x: f64) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::Domain("shadowing shape q must exceed 1"));
    }
    if !(gamma_scale > 0.0) {
        return Err(Error::Domain("shadowing scale must be positive"));
    }
    if !(x > 0.0) {
        return Err(Error::Domain("shadowing density requires x > 0"));
    }
    Ok(inv_gamma_pdf_raw(q, gamma_scale, x))
}

pub(crate) fn inv_gamma_pdf_raw(q: f64, gamma_scale: f64, x: f64) -> f64 {
    libm::exp(q * libm::log(gamma_scale) - (q + 1.0) * libm::log(x) - gamma_scale / x
        - libm::lgamma(q))
}

/// CDF of the inverse-gamma shadowing factor: `P[S <= x] = Q(q, γ/x)`.
pub fn inv_gamma_cdf(q: f64, gamma_scale: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    crate::numerics::special::reg_upper_gamma(q, gamma_scale / x)
}

/// CDF of the Nakagami-m power gain: `P(m, m x)`.
pub fn gamma_fading_cdf(m: u32, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    crate::numerics::special::reg_lower_gamma(m as f64, m as f64 * x)
}

/// Draw one Nakagami-m power gain `~ Gamma(m, 1/m)`.
pub fn sample_fading<R: Rng + ?Sized>(m: u32, rng: &mut R) -> f64 {
    debug_assert!(m >= 1);
    let g = rand_distr::Gamma::new(m as f64, 1.0 / m as f64).expect("valid Gamma parameters");
    g.sample(rng)
}

/// Draw one inverse-gamma shadowing factor via the reciprocal of a
/// `Gamma(q, 1/γ)` variate.
pub fn sample_shadow<R: Rng + ?Sized>(q: f64, gamma_scale: f64, rng: &mut R) -> f64 {
    debug_assert!(q > 1.0 && gamma_scale > 0.0);
    let g = rand_distr::Gamma::new(q, 1.0 / gamma_scale).expect("valid Gamma parameters");
    1.0 / g.sample(rng)
}

/// Draw the fading/shadowing pair of one link in one sub-slot.
pub fn sample_channel<R: Rng + ?Sized>(
    config: &NetworkConfig,
    phase: Phase,
    rng: &mut R,
) -> ChannelDraw {
    ChannelDraw {
        fading_gain: sample_fading(config.nakagami_m, rng),
        shadow_factor: sample_shadow(config.shadow_q, config.shadow_gamma, rng),
        phase_tag: phase,
    }
}
