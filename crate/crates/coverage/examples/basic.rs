//! Minimal library walkthrough: evaluate the four coverage probabilities
//! at the reference scenario and cross-check them against a short
//! Monte-Carlo run.

use corridor_coverage::analysis::{AnalysisOptions, CoverageEvaluator};
use corridor_coverage::montecarlo::simulate;
use corridor_coverage::NetworkConfig;

fn main() {
    let config = NetworkConfig {
        energy_threshold_j: 1.2e-9, // joules per charging sub-slot
        sinr_threshold: 0.12,       // linear SINR
        ..NetworkConfig::default()
    };

    let evaluator = CoverageEvaluator::new(config.clone(), AnalysisOptions::default());
    let exact = evaluator.energy_exact().unwrap();
    let approx = evaluator.energy_approx().unwrap();
    let comm = evaluator.comm().unwrap();
    let joint = evaluator.joint_coverage().unwrap();

    println!("energy coverage (exact inversion) = {:.4}", exact.value);
    println!("energy coverage (moment matching) = {:.4}", approx.value);
    println!("communication coverage            = {:.4}", comm.value);
    println!("joint coverage                    = {:.4}", joint.value);

    let mc = simulate(&config, 200_000, 42);
    println!(
        "monte carlo: p_h = {:.4}±{:.4}, p_c = {:.4}±{:.4}, p_jc = {:.4}±{:.4}",
        mc.p_h, mc.halfwidth_h, mc.p_c, mc.halfwidth_c, mc.p_jc, mc.halfwidth_jc
    );
}
