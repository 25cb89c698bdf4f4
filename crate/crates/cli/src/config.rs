//! Config resolution: JSON file, then per-field flag overrides.

use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use corridor_coverage::model::{dbm_to_watts, NetworkConfig};

/// Scenario parameters. Flags override the config file; the file overrides
/// the built-in defaults (the reference scenario).
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON config file with NetworkConfig fields (flat keys).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Number of UAV base stations on the corridor.
    #[arg(long, value_name = "N")]
    pub n_uavs: Option<u32>,

    /// Corridor altitude above ground, meters.
    #[arg(long, value_name = "METERS")]
    pub altitude_m: Option<f64>,

    /// Corridor half-length / ground disk radius, meters.
    #[arg(long, value_name = "METERS")]
    pub radius_m: Option<f64>,

    /// Path-loss exponent.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Carrier frequency, Hz.
    #[arg(long, value_name = "HZ")]
    pub carrier_hz: Option<f64>,

    /// Nakagami fading shape (positive integer).
    #[arg(long, value_name = "M")]
    pub nakagami_m: Option<u32>,

    /// Inverse-gamma shadowing shape (> 1).
    #[arg(long, value_name = "Q")]
    pub shadow_q: Option<f64>,

    /// Inverse-gamma shadowing scale (> 0).
    #[arg(long, value_name = "GAMMA")]
    pub shadow_gamma: Option<f64>,

    /// UAV transmit power, watts (linear).
    #[arg(long, value_name = "WATTS", conflicts_with = "tx_power_dbm")]
    pub tx_power_w: Option<f64>,

    /// UAV transmit power, dBm (converted to watts).
    #[arg(long, value_name = "DBM")]
    pub tx_power_dbm: Option<f64>,

    /// RF-to-DC conversion efficiency, in (0, 1).
    #[arg(long, value_name = "ETA")]
    pub rf_dc_eff: Option<f64>,

    /// Slot duration, seconds.
    #[arg(long, value_name = "SECONDS")]
    pub slot_s: Option<f64>,

    /// Harvesting fraction of the slot, in [0, 1].
    #[arg(long)]
    pub tau: Option<f64>,

    /// Noise power, watts.
    #[arg(long, value_name = "WATTS")]
    pub noise_w: Option<f64>,

    /// Energy coverage threshold, joules.
    #[arg(long, value_name = "JOULES")]
    pub gamma_h: Option<f64>,

    /// SINR coverage threshold, linear (not dB).
    #[arg(long, value_name = "LINEAR")]
    pub gamma_c: Option<f64>,

    /// Separate Nakagami shape for interfering links (defaults to
    /// --nakagami-m).
    #[arg(long, value_name = "M")]
    pub interferer_m: Option<u32>,
}

impl ConfigArgs {
    /// Resolve file + overrides into a validated config.
    pub fn resolve(&self) -> anyhow::Result<NetworkConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config file {}", path.display()))?;
                serde_json::from_str::<NetworkConfig>(&text)
                    .with_context(|| format!("parsing config file {}", path.display()))?
            }
            None => NetworkConfig::default(),
        };

        if let Some(v) = self.n_uavs {
            config.n_uavs = v;
        }
        if let Some(v) = self.altitude_m {
            config.altitude_m = v;
        }
        if let Some(v) = self.radius_m {
            config.radius_m = v;
        }
        if let Some(v) = self.alpha {
            config.alpha = v;
        }
        if let Some(v) = self.carrier_hz {
            config.carrier_hz = v;
        }
        if let Some(v) = self.nakagami_m {
            config.nakagami_m = v;
        }
        if let Some(v) = self.shadow_q {
            config.shadow_q = v;
        }
        if let Some(v) = self.shadow_gamma {
            config.shadow_gamma = v;
        }
        if let Some(v) = self.tx_power_w {
            config.tx_power_w = v;
        }
        if let Some(v) = self.tx_power_dbm {
            config.tx_power_w = dbm_to_watts(v);
        }
        if let Some(v) = self.rf_dc_eff {
            config.rf_dc_eff = v;
        }
        if let Some(v) = self.slot_s {
            config.slot_s = v;
        }
        if let Some(v) = self.tau {
            config.tau = v;
        }
        if let Some(v) = self.noise_w {
            config.noise_w = v;
        }
        if let Some(v) = self.gamma_h {
            config.energy_threshold_j = v;
        }
        if let Some(v) = self.gamma_c {
            config.sinr_threshold = v;
        }
        if let Some(v) = self.interferer_m {
            config.interferer_nakagami_m = Some(v);
        }

        config.validate().map_err(anyhow::Error::new)?;
        Ok(config)
    }
}
