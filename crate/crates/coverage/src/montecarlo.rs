//! Ground-truth slot simulator.
//!
//! Every analytic expression in [`crate::analysis`] is cross-validated
//! against this module. Each slot draws a fresh corridor placement and
//! fresh, mutually independent harvest-phase and comm-phase channel draws
//! per node, then evaluates the three coverage indicators.
//!
//! # Determinism and common random numbers
//!
//! Slot `i` of a run with master seed `s` always uses an RNG seeded by
//! `splitmix(s, i)`, and draws per node in the fixed order
//! (offset, harvest fading, harvest shadow, comm fading, comm shadow).
//! Consequences:
//!
//! * estimates are bit-identical for a given `(config, n_slots, seed)`
//!   regardless of how the slot range is partitioned across workers
//!   (reductions are integer counts), and
//! * sweeps over τ, p, R, h and N share the underlying randomness
//!   (offsets are drawn as unit variates and scaled by R; the first
//!   `min(N, N')` nodes of a slot coincide across N values), which keeps
//!   sweep curves smooth and argmax estimates stable.

use alloc::vec::Vec;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

use crate::error::{Error, Result};
use crate::geometry::{interferer_quantile_given_r, DistanceSupport};
use crate::model::NetworkConfig;

pub use crate::geometry::NetworkRealization;

/// Outcome of one simulated slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotOutcome {
    /// Harvested energy over the charging sub-slot, joules.
    pub harvested_j: f64,
    /// SINR seen from the nearest UAV during the communication sub-slot.
    pub sinr: f64,
    pub energy_covered: bool,
    pub comm_covered: bool,
    pub joint_covered: bool,
}

/// Coverage estimates with 95% confidence half-widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p_h: f64,
    pub p_c: f64,
    pub p_jc: f64,
    pub halfwidth_h: f64,
    pub halfwidth_c: f64,
    pub halfwidth_jc: f64,
    pub n_slots: u64,
    pub seed: u64,
}

/// Raw hit counts over a range of slots; integer sums make the reduction
/// order irrelevant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HitCounts {
    pub slots: u64,
    pub energy: u64,
    pub comm: u64,
    pub joint: u64,
}

impl HitCounts {
    pub fn merge(self, other: Self) -> Self {
        Self {
            slots: self.slots + other.slots,
            energy: self.energy + other.energy,
            comm: self.comm + other.comm,
            joint: self.joint + other.joint,
        }
    }

    pub fn into_estimate(self, seed: u64) -> McEstimate {
        let n = self.slots.max(1) as f64;
        let p_h = self.energy as f64 / n;
        let p_c = self.comm as f64 / n;
        let p_jc = self.joint as f64 / n;
        McEstimate {
            p_h,
            p_c,
            p_jc,
            halfwidth_h: halfwidth_95(p_h, n),
            halfwidth_c: halfwidth_95(p_c, n),
            halfwidth_jc: halfwidth_95(p_jc, n),
            n_slots: self.slots,
            seed,
        }
    }
}

/// 95% normal-approximation half-width `1.96 √(p(1-p)/n)`.
pub fn halfwidth_95(p_hat: f64, n: f64) -> f64 {
    1.96 * libm::sqrt(p_hat * (1.0 - p_hat) / n)
}

/// SplitMix64 finalizer over (master seed, slot index).
#[inline]
fn slot_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-config constants hoisted out of the slot loop.
struct SlotContext {
    n: usize,
    altitude_sq: f64,
    radius: f64,
    k_pl: f64,
    neg_alpha: f64,
    harvest_gain: f64,
    tx_power: f64,
    noise: f64,
    gamma_h: f64,
    gamma_c: f64,
    fading: rand_distr::Gamma<f64>,
    shadow_inv: rand_distr::Gamma<f64>,
}

impl SlotContext {
    fn new(config: &NetworkConfig) -> Self {
        Self {
            n: config.n_uavs as usize,
            altitude_sq: config.altitude_m * config.altitude_m,
            radius: config.radius_m,
            k_pl: config.path_loss_const(),
            neg_alpha: -config.alpha,
            harvest_gain: config.harvest_gain(),
            tx_power: config.tx_power_w,
            noise: config.noise_w,
            gamma_h: config.energy_threshold_j,
            gamma_c: config.sinr_threshold,
            fading: rand_distr::Gamma::new(config.nakagami_m as f64, 1.0 / config.nakagami_m as f64)
                .expect("validated fading shape"),
            shadow_inv: rand_distr::Gamma::new(config.shadow_q, 1.0 / config.shadow_gamma)
                .expect("validated shadowing parameters"),
        }
    }

    #[inline]
    fn path_loss(&self, d: f64) -> f64 {
        self.k_pl * libm::pow(d, self.neg_alpha)
    }

    /// One unconditioned slot. `comm_buf` holds per-node comm-phase power
    /// factors so the serving term can be separated after the minimum
    /// distance is known.
    fn run_slot(&self, rng: &mut ChaCha8Rng, comm_buf: &mut Vec<f64>) -> SlotOutcome {
        comm_buf.clear();
        let mut harvest_sum = 0.0;
        let mut comm_sum = 0.0;
        let mut best_d = f64::INFINITY;
        let mut serving = 0usize;
        for j in 0..self.n {
            let unit: f64 = rng.random::<f64>() * 2.0 - 1.0;
            let u = unit * self.radius;
            let d = libm::sqrt(u * u + self.altitude_sq);
            let l = self.path_loss(d);
            let h_h: f64 = self.fading.sample(rng);
            let s_h = 1.0 / self.shadow_inv.sample(rng);
            let h_c: f64 = self.fading.sample(rng);
            let s_c = 1.0 / self.shadow_inv.sample(rng);
            harvest_sum += h_h * s_h * l;
            let c = h_c * s_c * l;
            comm_sum += c;
            comm_buf.push(c);
            if d < best_d {
                best_d = d;
                serving = j;
            }
        }
        let harvested = self.harvest_gain * harvest_sum;
        let signal = self.tx_power * comm_buf[serving];
        let interference = self.tx_power * (comm_sum - comm_buf[serving]);
        let sinr = signal / (interference + self.noise);
        self.finish(harvested, sinr)
    }

    /// One slot conditioned on the serving distance: the serving node is
    /// pinned at `r_pin` and the other `N-1` distances come from the
    /// truncated link law by inverse-CDF sampling.
    fn run_slot_conditioned(
        &self,
        config: &NetworkConfig,
        r_pin: f64,
        rng: &mut ChaCha8Rng,
    ) -> ConditionedSlotOutcome {
        let l_serv = self.path_loss(r_pin);
        let h_h: f64 = self.fading.sample(rng);
        let s_h = 1.0 / self.shadow_inv.sample(rng);
        let h_c: f64 = self.fading.sample(rng);
        let s_c = 1.0 / self.shadow_inv.sample(rng);
        let serving_harvest = h_h * s_h * l_serv;
        let signal = self.tx_power * h_c * s_c * l_serv;

        let mut rest_harvest = 0.0;
        let mut interference = 0.0;
        for _ in 1..self.n {
            let q: f64 = rng.random();
            let v = interferer_quantile_given_r(config, r_pin, q);
            let l = self.path_loss(v);
            let h_h: f64 = self.fading.sample(rng);
            let s_h = 1.0 / self.shadow_inv.sample(rng);
            let h_c: f64 = self.fading.sample(rng);
            let s_c = 1.0 / self.shadow_inv.sample(rng);
            rest_harvest += h_h * s_h * l;
            interference += self.tx_power * h_c * s_c * l;
        }
        let harvested = self.harvest_gain * (serving_harvest + rest_harvest);
        let sinr = signal / (interference + self.noise);
        ConditionedSlotOutcome {
            outcome: self.finish(harvested, sinr),
            rest_harvested_j: self.harvest_gain * rest_harvest,
        }
    }

    #[inline]
    fn finish(&self, harvested: f64, sinr: f64) -> SlotOutcome {
        let energy_covered = harvested >= self.gamma_h;
        let comm_covered = sinr >= self.gamma_c;
        SlotOutcome {
            harvested_j: harvested,
            sinr,
            energy_covered,
            comm_covered,
            joint_covered: energy_covered && comm_covered,
        }
    }
}

/// A conditioned slot outcome plus the harvested energy excluding the
/// serving node (the moment-matching target of the conditional analysis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionedSlotOutcome {
    pub outcome: SlotOutcome,
    pub rest_harvested_j: f64,
}

/// Simulate the half-open slot range `slots` of the run identified by
/// `seed`, returning raw hit counts. Partitioning the full range across
/// workers and merging yields bit-identical results to a sequential run.
pub fn simulate_range(config: &NetworkConfig, slots: Range<u64>, seed: u64) -> HitCounts {
    let ctx = SlotContext::new(config);
    let mut buf = Vec::with_capacity(ctx.n);
    let mut counts = HitCounts::default();
    for slot in slots {
        let mut rng = ChaCha8Rng::seed_from_u64(slot_seed(seed, slot));
        let out = ctx.run_slot(&mut rng, &mut buf);
        counts.slots += 1;
        counts.energy += out.energy_covered as u64;
        counts.comm += out.comm_covered as u64;
        counts.joint += out.joint_covered as u64;
    }
    counts
}

/// Full-run estimate over `n_slots` independent slots.
pub fn simulate(config: &NetworkConfig, n_slots: u64, seed: u64) -> McEstimate {
    simulate_range(config, 0..n_slots, seed).into_estimate(seed)
}

/// Conditioned counterpart of [`simulate_range`] with the serving node
/// pinned at distance `r_pin`.
pub fn simulate_conditioned_range(
    config: &NetworkConfig,
    r_pin: f64,
    slots: Range<u64>,
    seed: u64,
) -> Result<HitCounts> {
    let support = DistanceSupport::link(config);
    if !(r_pin > support.lower_m && r_pin < support.upper_m) {
        return Err(Error::Domain(
            "pinned serving distance must lie strictly inside the link support",
        ));
    }
    let ctx = SlotContext::new(config);
    let mut counts = HitCounts::default();
    for slot in slots {
        let mut rng = ChaCha8Rng::seed_from_u64(slot_seed(seed, slot));
        let out = ctx.run_slot_conditioned(config, r_pin, &mut rng).outcome;
        counts.slots += 1;
        counts.energy += out.energy_covered as u64;
        counts.comm += out.comm_covered as u64;
        counts.joint += out.joint_covered as u64;
    }
    Ok(counts)
}

/// Conditional coverage estimates given serving distance `r_pin`.
pub fn simulate_conditioned(
    config: &NetworkConfig,
    r_pin: f64,
    n_slots: u64,
    seed: u64,
) -> Result<McEstimate> {
    Ok(simulate_conditioned_range(config, r_pin, 0..n_slots, seed)?.into_estimate(seed))
}

/// Stream of per-slot outcomes, e.g. for raw CSV dumps.
pub fn simulate_outcomes(
    config: &NetworkConfig,
    n_slots: u64,
    seed: u64,
) -> impl Iterator<Item = SlotOutcome> + '_ {
    let ctx = SlotContext::new(config);
    let mut buf = Vec::with_capacity(ctx.n);
    (0..n_slots).map(move |slot| {
        let mut rng = ChaCha8Rng::seed_from_u64(slot_seed(seed, slot));
        ctx.run_slot(&mut rng, &mut buf)
    })
}

/// Stream of conditioned per-slot outcomes given serving distance `r_pin`.
pub fn simulate_conditioned_outcomes(
    config: &NetworkConfig,
    r_pin: f64,
    n_slots: u64,
    seed: u64,
) -> Result<impl Iterator<Item = ConditionedSlotOutcome> + '_> {
    let support = DistanceSupport::link(config);
    if !(r_pin > support.lower_m && r_pin < support.upper_m) {
        return Err(Error::Domain(
            "pinned serving distance must lie strictly inside the link support",
        ));
    }
    let ctx = SlotContext::new(config);
    Ok((0..n_slots).map(move |slot| {
        let mut rng = ChaCha8Rng::seed_from_u64(slot_seed(seed, slot));
        ctx.run_slot_conditioned(config, r_pin, &mut rng)
    }))
}

/// Stream of raw harvested-energy samples `E_h`, one per slot.
pub fn sample_harvest_distribution(
    config: &NetworkConfig,
    n_slots: u64,
    seed: u64,
) -> impl Iterator<Item = f64> + '_ {
    simulate_outcomes(config, n_slots, seed).map(|o| o.harvested_j)
}
