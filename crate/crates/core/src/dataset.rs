//! Record-level dataset protocol: what each record is, how it is sampled
//! from `(master_seed, id)`, and how it turns into stored arrays.
//!
//! Per record: simulate → add localization noise → left-pad with zeros to
//! [`PADDED_LENGTH`] → narrow to f32 → GAF-encode the stored f32 values. The
//! images are computed from the stored raw row, so re-encoding a row read
//! back from disk reproduces the stored image bit for bit.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gaf::{encode, GafKind};
use crate::model::{AlphaExponent, DiffusionModelKind, Trajectory};
use crate::rng::{purpose, splitmix64, RngStream};
use crate::simulate::simulate;

/// Every emitted trajectory is left-padded to this length.
pub const PADDED_LENGTH: usize = 50;
/// Bounds on raw trajectory lengths accepted by the protocol.
pub const MIN_RAW_LENGTH: usize = 10;
pub const MAX_RAW_LENGTH: usize = PADDED_LENGTH;

const SPLIT_TAG: u64 = 0x0053_504c_4954;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Classification,
    Regression,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Self::Classification => "classification",
            Self::Regression => "regression",
        }
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classification" | "cls" => Ok(Self::Classification),
            "regression" | "reg" => Ok(Self::Regression),
            _ => Err(Error::InvalidSpec(format!("unknown task {s:?}"))),
        }
    }
}

/// Localization noise level, SNR = σ_D / σ_noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseSpec {
    Noiseless,
    Snr(f64),
}

impl NoiseSpec {
    pub fn snr(self) -> Option<f64> {
        match self {
            Self::Noiseless => None,
            Self::Snr(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Validation, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Self::Train => "train",
            Self::Validation => "validation",
            Self::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown split {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitFractions {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
}

impl Default for SplitFractions {
    fn default() -> Self {
        Self {
            train: 0.95,
            validation: 0.05,
            test: 0.0,
        }
    }
}

/// Which arrays to emit besides the manifest. The padded raw trajectories
/// are always written; `raw` is accepted for completeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Encodings {
    pub gasf: bool,
    pub gadf: bool,
    pub raw: bool,
}

impl Default for Encodings {
    fn default() -> Self {
        Self {
            gasf: true,
            gadf: true,
            raw: false,
        }
    }
}

impl Encodings {
    pub fn kinds(&self) -> Vec<GafKind> {
        let mut out = Vec::new();
        if self.gasf {
            out.push(GafKind::Gasf);
        }
        if self.gadf {
            out.push(GafKind::Gadf);
        }
        out
    }
}

/// `start, start + step, ...` up to `stop` inclusive, each value rounded to
/// 10 decimals so that e.g. 0.15 is the nearest double to 0.15.
pub fn alpha_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(Error::InvalidSpec(format!("bad alpha grid start={start} stop={stop} step={step}")));
    }
    let count = libm::floor((stop - start) / step + 1e-9) as usize + 1;
    Ok((0..count)
        .map(|k| libm::round((start + k as f64 * step) * 1e10) / 1e10)
        .collect())
}

/// The protocol grid 0.05, 0.10, ..., 1.95.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=39).map(|k| k as f64 / 20.0).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub task: Task,
    pub count: u64,
    pub length_range: (usize, usize),
    pub alpha_grid: Vec<f64>,
    pub noise: NoiseSpec,
    pub encodings: Encodings,
    pub master_seed: u64,
    pub split_fractions: SplitFractions,
}

impl DatasetSpec {
    /// Protocol defaults: lengths 10–50, full alpha grid, SNR 1, 95/5 split.
    pub fn new(task: Task, count: u64, master_seed: u64) -> Self {
        Self {
            task,
            count,
            length_range: (MIN_RAW_LENGTH, MAX_RAW_LENGTH),
            alpha_grid: default_alpha_grid(),
            noise: NoiseSpec::Snr(1.0),
            encodings: Encodings::default(),
            master_seed,
            split_fractions: SplitFractions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidSpec("count must be at least 1".into()));
        }
        let (lo, hi) = self.length_range;
        if lo < MIN_RAW_LENGTH || hi > MAX_RAW_LENGTH || lo > hi {
            return Err(Error::InvalidSpec(format!(
                "length_range [{lo}, {hi}] must lie within [{MIN_RAW_LENGTH}, {MAX_RAW_LENGTH}]"
            )));
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::InvalidSpec("alpha_grid is empty".into()));
        }
        if let Some(bad) = self.alpha_grid.iter().find(|a| !(**a > 0.0 && **a < 2.0)) {
            return Err(Error::InvalidSpec(format!("alpha_grid value {bad} outside (0, 2)")));
        }
        for model in DiffusionModelKind::ALL {
            if self.alphas_for(model).is_empty() {
                return Err(Error::InvalidSpec(format!("alpha_grid has no value in the {model} domain")));
            }
        }
        if let NoiseSpec::Snr(snr) = self.noise {
            if !(snr > 0.0 && snr.is_finite()) {
                return Err(Error::InvalidSpec(format!("snr must be positive, got {snr}")));
            }
        }
        let f = self.split_fractions;
        let parts = [f.train, f.validation, f.test];
        if parts.iter().any(|p| !(*p >= 0.0 && *p <= 1.0)) || (parts.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "split fractions {parts:?} must be in [0, 1] and sum to 1"
            )));
        }
        Ok(())
    }

    /// Grid values admissible for `model`, in grid order.
    pub fn alphas_for(&self, model: DiffusionModelKind) -> Vec<f64> {
        self.alpha_grid.iter().copied().filter(|a| model.accepts(*a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub id: u64,
    pub model: DiffusionModelKind,
    pub alpha: f64,
    pub raw_length: usize,
    /// Applied SNR; `None` for clean records.
    pub snr: Option<f64>,
    pub split: Split,
    pub seed_hi: u64,
    pub seed_lo: u64,
}

impl DatasetRecord {
    /// Root stream of the record; sampling, simulation and noise use children of it.
    pub fn stream(&self) -> RngStream {
        RngStream::new(self.seed_hi, self.seed_lo)
    }
}

fn split_for(master_seed: u64, id: u64, fractions: &SplitFractions) -> Split {
    let h = splitmix64(master_seed ^ splitmix64(id ^ SPLIT_TAG));
    let u = (h >> 11) as f64 / (1u64 << 53) as f64;
    if u < fractions.train {
        Split::Train
    } else if u < fractions.train + fractions.validation {
        Split::Validation
    } else {
        Split::Test
    }
}

/// Derives record `index` deterministically from `spec`. Assumes a
/// validated spec.
pub fn sample_spec_record(spec: &DatasetSpec, index: u64) -> Result<DatasetRecord> {
    if index >= spec.count {
        return Err(Error::IndexOutOfRange {
            index,
            count: spec.count,
        });
    }
    let root = RngStream::new(spec.master_seed, index);
    let mut rng = root.derive(purpose::SAMPLE).rng();
    let model = DiffusionModelKind::ALL[rng.random_range(0..DiffusionModelKind::COUNT)];
    let alphas = spec.alphas_for(model);
    if alphas.is_empty() {
        return Err(Error::InvalidSpec(format!("alpha_grid has no value in the {model} domain")));
    }
    let alpha = alphas[rng.random_range(0..alphas.len())];
    let (lo, hi) = spec.length_range;
    let raw_length = rng.random_range(lo..=hi);
    Ok(DatasetRecord {
        id: index,
        model,
        alpha,
        raw_length,
        snr: spec.noise.snr(),
        split: split_for(spec.master_seed, index, &spec.split_fractions),
        seed_hi: root.master_seed,
        seed_lo: root.stream_index,
    })
}

/// Result of [`add_noise`].
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseOutcome {
    pub trajectory: Trajectory,
    /// σ_D of the clean trajectory.
    pub displacement_std: f64,
    /// False when the clean trajectory had σ_D = 0 (or a single displacement)
    /// and noise was omitted.
    pub applied: bool,
}

/// Sample standard deviation of the L−1 displacements; `None` when there are
/// fewer than two displacements.
pub fn displacement_std(positions: &[f64]) -> Option<f64> {
    if positions.len() < 3 {
        return None;
    }
    let d: Vec<f64> = positions.windows(2).map(|w| w[1] - w[0]).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let ss: f64 = d.iter().map(|v| (v - mean) * (v - mean)).sum();
    Some(libm::sqrt(ss / (n - 1.0)))
}

/// Adds independent N(0, σ_D/snr) localization noise to every position.
pub fn add_noise(traj: &Trajectory, noise: NoiseSpec, stream: &RngStream) -> Result<NoiseOutcome> {
    if traj.len() < 2 {
        return Err(Error::LengthTooShort {
            length: traj.len(),
            min: 2,
        });
    }
    let sigma_d = displacement_std(&traj.positions).unwrap_or(0.0);
    let snr = match noise {
        NoiseSpec::Noiseless => {
            return Ok(NoiseOutcome {
                trajectory: traj.clone(),
                displacement_std: sigma_d,
                applied: false,
            })
        }
        NoiseSpec::Snr(snr) if snr > 0.0 && snr.is_finite() => snr,
        NoiseSpec::Snr(snr) => return Err(Error::InvalidSpec(format!("snr must be positive, got {snr}"))),
    };
    if !(sigma_d > 0.0) {
        return Ok(NoiseOutcome {
            trajectory: traj.clone(),
            displacement_std: sigma_d,
            applied: false,
        });
    }
    let sigma_noise = sigma_d / snr;
    let mut rng = stream.rng();
    let mut out = traj.clone();
    for x in out.positions.iter_mut() {
        let z: f64 = StandardNormal.sample(&mut rng);
        *x += sigma_noise * z;
    }
    out.snr = Some(snr);
    Ok(NoiseOutcome {
        trajectory: out,
        displacement_std: sigma_d,
        applied: true,
    })
}

/// `target − L` zeros followed by the positions.
pub fn pad_to_fixed(positions: &[f64], target: usize) -> Result<Vec<f64>> {
    if positions.len() > target {
        return Err(Error::LengthTooLong {
            length: positions.len(),
            target,
        });
    }
    let mut out = alloc::vec![0.0; target - positions.len()];
    out.extend_from_slice(positions);
    Ok(out)
}

/// Arrays for one record, ready to append to shards.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedRecord {
    pub record: DatasetRecord,
    /// Noisy trajectory left-padded to [`PADDED_LENGTH`].
    pub raw: Vec<f32>,
    pub gasf: Option<Vec<f32>>,
    pub gadf: Option<Vec<f32>>,
    pub noise_applied: bool,
}

/// Encodes a stored (f32) padded row exactly as the pipeline does.
pub fn encode_stored_row(row: &[f32], kind: GafKind) -> Result<Vec<f32>> {
    let series: Vec<f64> = row.iter().map(|&v| v as f64).collect();
    Ok(encode(&series, kind)?.to_f32())
}

/// Runs the full per-record pipeline for record `index`.
pub fn generate_record(spec: &DatasetSpec, index: u64) -> Result<GeneratedRecord> {
    let mut record = sample_spec_record(spec, index)?;
    let root = record.stream();
    let alpha = AlphaExponent::new(record.alpha)?;
    let clean = simulate(record.model, alpha, record.raw_length, &root.derive(purpose::SIMULATE))?;
    let noisy = add_noise(&clean, spec.noise, &root.derive(purpose::NOISE))?;
    if !noisy.applied {
        record.snr = None;
    }
    let padded = pad_to_fixed(&noisy.trajectory.positions, PADDED_LENGTH)?;
    let raw: Vec<f32> = padded.iter().map(|&v| v as f32).collect();
    let gasf = if spec.encodings.gasf { Some(encode_stored_row(&raw, GafKind::Gasf)?) } else { None };
    let gadf = if spec.encodings.gadf { Some(encode_stored_row(&raw, GafKind::Gadf)?) } else { None };
    Ok(GeneratedRecord {
        record,
        raw,
        gasf,
        gadf,
        noise_applied: noisy.applied,
    })
}
