//! Command-line entry point.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gafdiff_core::dataset::{encode_stored_row, Task};
use gafdiff_core::gaf::GafKind;
use gafdiff_core::metrics::evaluate;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::estimate::{estimate_rows, write_estimates};
use crate::image::export_png;
use crate::manifest::{read_manifest, truth_rows};
use crate::npy::{read_f32, write_f32};
use crate::pipeline::{build_dataset, map_ordered, thread_pool};
use crate::predictions::read_predictions;
use crate::report::{confusion_csv, report_json, report_table};
use crate::spec_file::{parse_encodings, parse_noise, SpecFile};

#[derive(Debug, Parser)]
#[command(name = "gafdiff", version, about = "Anomalous-diffusion datasets as Gramian Angular Field images")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate trajectory and image shards plus a manifest from a JSON spec.
    Generate(GenerateArgs),
    /// Encode a [n, L] trajectory array into [n, L, L] GASF or GADF images.
    Encode(EncodeArgs),
    /// Write selected images of a [n, H, W] array as grayscale PNGs.
    ExportPng(ExportPngArgs),
    /// Estimate alpha per trajectory from a time-averaged MSD fit.
    Estimate(EstimateArgs),
    /// Score a predictions CSV against a manifest.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Dataset spec (JSON).
    pub spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Override the record count.
    #[arg(long)]
    pub count: Option<u64>,
    /// Override the master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the noise level: a positive SNR or `noiseless`.
    #[arg(long)]
    pub snr: Option<String>,
    /// Override the encodings, e.g. `gasf,gadf` (empty for trajectories only).
    #[arg(long)]
    pub encodings: Option<String>,
    /// Print a JSON summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// gasf or gadf.
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExportPngArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated ids or ranges, e.g. `0,4,10-19`.
    #[arg(long)]
    pub ids: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Manifest matching the array; strips padding and supplies ids.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub pred: PathBuf,
    /// cls or reg.
    #[arg(long)]
    pub task: String,
    /// Report JSON.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub confusion_csv: Option<PathBuf>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

pub fn parse_ids(s: &str) -> Result<Vec<u64>> {
    let bad = || CliError::Validation(format!("invalid id list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn generate(a: &GenerateArgs) -> Result<(Value, String)> {
    let mut file = SpecFile::load(&a.spec)?;
    if let Some(c) = a.count {
        file.count = c;
    }
    if let Some(s) = a.seed {
        file.master_seed = s;
    }
    let mut spec = file.to_spec()?;
    if let Some(snr) = &a.snr {
        spec.noise = parse_noise(snr)?;
    }
    if let Some(list) = &a.encodings {
        spec.encodings = parse_encodings(&list.split(',').collect::<Vec<_>>())?;
    }
    spec.validate()?;
    let summary = build_dataset(&spec, &a.out, a.threads as usize)?;
    let mut text = format!("generated {} records in {:.2}s\n", summary.count, summary.seconds);
    for (m, n) in &summary.per_model {
        text += &format!("  {m:<5} {n}\n");
    }
    for (s, n) in &summary.per_split {
        text += &format!("  {s:<10} {n}\n");
    }
    if summary.noise_omitted > 0 {
        text += &format!("  noise omitted for {} immobile records\n", summary.noise_omitted);
    }
    for f in &summary.files {
        text += &format!("  wrote {}\n", f.display());
    }
    Ok((serde_json::to_value(&summary).unwrap_or(Value::Null), text))
}

fn encode(a: &EncodeArgs) -> Result<(Value, String)> {
    let kind: GafKind = a.kind.parse()?;
    let pool = thread_pool(a.threads as usize)?;
    let traj = read_f32(&a.input)?;
    let &[n, len] = traj.shape.as_slice() else {
        return Err(CliError::Validation(format!(
            "expected a [n, L] trajectory array, got shape {:?}",
            traj.shape
        )));
    };
    if len == 0 {
        return Err(CliError::Validation("trajectory rows are empty".into()));
    }
    let images = map_ordered(&pool, 0..n as u64, |i| encode_stored_row(traj.row(i as usize), kind));
    let mut data = Vec::with_capacity(n * len * len);
    for (i, img) in images.into_iter().enumerate() {
        data.extend(img.map_err(|e| CliError::Validation(format!("row {i}: {e}")))?);
    }
    write_f32(&a.out, &[n as u64, len as u64, len as u64], &data)?;
    let text = format!("wrote {n} {kind} images of {len}x{len} to {}\n", a.out.display());
    Ok((json!({"count": n, "kind": kind.name(), "size": len, "out": a.out}), text))
}

fn export(a: &ExportPngArgs) -> Result<(Value, String)> {
    let ids = parse_ids(&a.ids)?;
    let images = read_f32(&a.input)?;
    let files = export_png(&images, &ids, &a.out)?;
    let text = format!("wrote {} PNG files to {}\n", files.len(), a.out.display());
    Ok((json!({"files": files}), text))
}

fn estimate(a: &EstimateArgs) -> Result<(Value, String)> {
    let manifest = a.manifest.as_deref().map(read_manifest).transpose()?;
    let traj = read_f32(&a.input)?;
    let rows = estimate_rows(&traj, manifest.as_deref())?;
    write_estimates(&a.out, &rows)?;
    let degenerate = rows.iter().filter(|r| r.degenerate).count();
    let text = format!(
        "estimated {} trajectories ({degenerate} degenerate), wrote {}\n",
        rows.len(),
        a.out.display()
    );
    Ok((json!({"count": rows.len(), "degenerate": degenerate, "out": a.out}), text))
}

fn evaluate_cmd(a: &EvaluateArgs) -> Result<(Value, String)> {
    let task: Task = a.task.parse()?;
    let manifest = read_manifest(&a.manifest)?;
    let preds = read_predictions(&a.pred, task)?;
    let report = evaluate(&truth_rows(&manifest), &preds, task)?;
    let value = report_json(&report);
    let pretty = serde_json::to_string_pretty(&value).unwrap_or_default();
    write_text(&a.out, &(pretty + "\n"))?;
    if let (Some(path), Some(cm)) = (&a.confusion_csv, &report.confusion) {
        write_text(path, &confusion_csv(cm))?;
    }
    Ok((value, report_table(&report)))
}

/// Runs the subcommand; returns its JSON summary, its text summary and
/// whether `--json` was requested.
pub fn execute(cli: &Cli) -> Result<(Value, String, bool)> {
    let (out, as_json) = match &cli.command {
        Command::Generate(a) => (generate(a), a.json),
        Command::Encode(a) => (encode(a), a.json),
        Command::ExportPng(a) => (export(a), a.json),
        Command::Estimate(a) => (estimate(a), a.json),
        Command::Evaluate(a) => (evaluate_cmd(a), a.json),
    };
    let (value, text) = out?;
    Ok((value, text, as_json))
}

/// Parses `args`, runs the subcommand and returns the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    match execute(&cli) {
        Ok((value, text, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&value).unwrap_or_default());
            } else {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
