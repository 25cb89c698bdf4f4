//! File outputs: CSV tables with a reproducible config echo, gnuplot
//! heatmap matrices, and the run manifest with per-file checksums.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use corridor_coverage::experiments::{SweepResult, SweepVariable};
use corridor_coverage::model::NetworkConfig;
use corridor_coverage::montecarlo::McEstimate;
use sha2::Digest;

/// Significant digits in CSV numeric columns; '.' decimal, no locale.
fn fmt(v: f64) -> String {
    format!("{v:.11e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// The `# config: {...}` echo line. The JSON payload can be fed back via
/// `--config` to reproduce the run.
pub fn config_echo(config: &NetworkConfig) -> String {
    format!(
        "# config: {}",
        serde_json::to_string(config).expect("config serializes")
    )
}

fn write_preamble(
    out: &mut dyn Write,
    kind: &str,
    config: &NetworkConfig,
    seed: Option<u64>,
) -> std::io::Result<()> {
    writeln!(
        out,
        "# corridor-coverage {} v{}",
        kind,
        env!("CARGO_PKG_VERSION")
    )?;
    writeln!(out, "{}", config_echo(config))?;
    if let Some(seed) = seed {
        writeln!(out, "# seed: {seed}")?;
    }
    Ok(())
}

/// Write a sweep result as CSV: `#` comment preamble, header row, one row
/// per grid point.
pub fn write_sweep_csv(path: &Path, result: &SweepResult) -> anyhow::Result<()> {
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_preamble(&mut file, "sweep", &result.spec.base, Some(result.spec.seed))?;
    writeln!(file, "# mc_slots: {}", result.spec.mc_slots)?;
    if let Some(opt) = &result.optima {
        let x2 = opt
            .best_x2
            .map(|v| format!(",{v}"))
            .unwrap_or_default();
        writeln!(
            file,
            "# argmax: x={}{} p_jc={} (runner-up x={} p_jc={}, gap={})",
            opt.best_x1, x2, opt.best_value, opt.runner_up_x1, opt.runner_up_value, opt.gap
        )?;
    }

    let (ax1, ax2) = result.spec.variable.axis_names();
    let mut writer = csv::Writer::from_writer(file);
    let mut header: Vec<&str> = vec![ax1];
    if let Some(ax2) = ax2 {
        header.push(ax2);
    }
    header.extend_from_slice(&[
        "p_h_exact",
        "p_h_approx",
        "p_c",
        "p_jc",
        "mc_p_h",
        "mc_hw_h",
        "mc_p_c",
        "mc_hw_c",
        "mc_p_jc",
        "mc_hw_jc",
        "error",
    ]);
    writer.write_record(&header)?;

    for row in &result.rows {
        let mut record: Vec<String> = vec![fmt(row.x1)];
        if ax2.is_some() {
            record.push(fmt_opt(row.x2));
        }
        match &row.analytic {
            Some(a) => {
                record.push(fmt_opt(a.p_h_exact));
                record.push(fmt(a.p_h_approx));
                record.push(fmt(a.p_c));
                record.push(fmt(a.p_jc));
            }
            None => record.extend(std::iter::repeat_n(String::new(), 4)),
        }
        match &row.mc {
            Some(mc) => {
                record.push(fmt(mc.p_h));
                record.push(fmt(mc.halfwidth_h));
                record.push(fmt(mc.p_c));
                record.push(fmt(mc.halfwidth_c));
                record.push(fmt(mc.p_jc));
                record.push(fmt(mc.halfwidth_jc));
            }
            None => record.extend(std::iter::repeat_n(String::new(), 6)),
        }
        record.push(row.error.clone().unwrap_or_default());
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Gnuplot "nonuniform matrix" of analytic p_jc over the (R, h) grid:
/// first row holds the R axis, each following row is `h p(R1,h) ... p(Rn,h)`.
pub fn write_heatmap_matrix(path: &Path, result: &SweepResult) -> anyhow::Result<()> {
    let SweepVariable::GridRh {
        r_values_m,
        h_values_m,
    } = &result.spec.variable
    else {
        anyhow::bail!("heatmap output requires a grid-rh sweep");
    };
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write!(file, "{}", r_values_m.len())?;
    for r in r_values_m {
        write!(file, " {r}")?;
    }
    writeln!(file)?;
    for (hi, h) in h_values_m.iter().enumerate() {
        write!(file, "{h}")?;
        for ri in 0..r_values_m.len() {
            let row = &result.rows[ri * h_values_m.len() + hi];
            let v = row
                .analytic
                .as_ref()
                .map(|a| a.p_jc)
                .or_else(|| row.mc.as_ref().map(|m| m.p_jc));
            match v {
                Some(v) => write!(file, " {v:.6}")?,
                None => write!(file, " nan")?,
            }
        }
        writeln!(file)?;
    }
    Ok(())
}

/// Write a Monte-Carlo estimate as a one-row CSV.
pub fn write_mc_csv(path: &Path, config: &NetworkConfig, est: &McEstimate) -> anyhow::Result<()> {
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_preamble(&mut file, "mc", config, Some(est.seed))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(["p_h", "hw_h", "p_c", "hw_c", "p_jc", "hw_jc", "n_slots", "seed"])?;
    writer.write_record(&[
        fmt(est.p_h),
        fmt(est.halfwidth_h),
        fmt(est.p_c),
        fmt(est.halfwidth_c),
        fmt(est.p_jc),
        fmt(est.halfwidth_jc),
        est.n_slots.to_string(),
        est.seed.to_string(),
    ])?;
    writer.flush()?;
    Ok(())
}

/// Write per-slot raw samples (E_h, SINR, indicators).
pub fn write_samples_csv(
    path: &Path,
    config: &NetworkConfig,
    n_slots: u64,
    seed: u64,
) -> anyhow::Result<()> {
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_preamble(&mut file, "mc-samples", config, Some(seed))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([
        "slot",
        "harvested_j",
        "sinr",
        "energy_covered",
        "comm_covered",
        "joint_covered",
    ])?;
    for (slot, outcome) in corridor_coverage::montecarlo::simulate_outcomes(config, n_slots, seed)
        .enumerate()
    {
        writer.write_record(&[
            slot.to_string(),
            fmt(outcome.harvested_j),
            fmt(outcome.sinr),
            (outcome.energy_covered as u8).to_string(),
            (outcome.comm_covered as u8).to_string(),
            (outcome.joint_covered as u8).to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Run manifest: resolved config, tool version, seed, timestamps, and a
/// SHA-256 checksum per output file.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub created_unix_s: u64,
    pub seed: Option<u64>,
    pub config: NetworkConfig,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

pub fn sha256_hex(path: &Path) -> anyhow::Result<String> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = sha2::Sha256::digest(&data);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write as _;
        write!(hex, "{byte:02x}").unwrap();
    }
    Ok(hex)
}

/// Write `manifest.json` next to the produced outputs.
pub fn write_manifest(
    out_dir: &Path,
    config: &NetworkConfig,
    seed: Option<u64>,
    outputs: &[PathBuf],
) -> anyhow::Result<PathBuf> {
    let mut records = Vec::with_capacity(outputs.len());
    for path in outputs {
        let meta = std::fs::metadata(path)?;
        records.push(OutputRecord {
            path: path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            sha256: sha256_hex(path)?,
            bytes: meta.len(),
        });
    }
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        created_unix_s: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        seed,
        config: config.clone(),
        outputs: records,
    };
    let path = out_dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}
