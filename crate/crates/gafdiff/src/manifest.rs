//! Per-record manifest CSV.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use gafdiff_core::dataset::{DatasetRecord, Split};
use gafdiff_core::metrics::TruthRow;
use gafdiff_core::DiffusionModelKind;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const HEADER: [&str; 9] = [
    "id", "model", "model_code", "alpha", "raw_length", "snr", "split", "seed_hi", "seed_lo",
];

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    id: u64,
    model: String,
    model_code: u32,
    alpha: f64,
    raw_length: usize,
    /// `inf` for clean records.
    snr: f64,
    split: String,
    seed_hi: u64,
    seed_lo: u64,
}

impl From<&DatasetRecord> for Row {
    fn from(r: &DatasetRecord) -> Self {
        Row {
            id: r.id,
            model: r.model.name().to_string(),
            model_code: r.model.code(),
            alpha: r.alpha,
            raw_length: r.raw_length,
            snr: r.snr.unwrap_or(f64::INFINITY),
            split: r.split.name().to_string(),
            seed_hi: r.seed_hi,
            seed_lo: r.seed_lo,
        }
    }
}

pub struct ManifestWriter {
    inner: csv::Writer<BufWriter<File>>,
    path: PathBuf,
}

impl ManifestWriter {
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        Ok(Self {
            inner: csv::Writer::from_writer(BufWriter::new(file)),
            path: path.to_path_buf(),
        })
    }

    pub fn write(&mut self, record: &DatasetRecord) -> Result<()> {
        self.inner
            .serialize(Row::from(record))
            .map_err(|e| CliError::format(&self.path, format!("record {}: {e}", record.id)))
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

fn parse_row(path: &Path, line: usize, row: Row) -> Result<DatasetRecord> {
    let bad = |msg: String| CliError::format(path, format!("line {line}: {msg}"));
    let model: DiffusionModelKind = row.model.parse().map_err(|e| bad(format!("{e}")))?;
    if model.code() != row.model_code {
        return Err(bad(format!("model {} does not match model_code {}", row.model, row.model_code)));
    }
    let split: Split = row.split.parse().map_err(|e| bad(format!("{e}")))?;
    Ok(DatasetRecord {
        id: row.id,
        model,
        alpha: row.alpha,
        raw_length: row.raw_length,
        snr: row.snr.is_finite().then_some(row.snr),
        split,
        seed_hi: row.seed_hi,
        seed_lo: row.seed_lo,
    })
}

pub fn read_manifest(path: &Path) -> Result<Vec<DatasetRecord>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::Reader::from_reader(std::io::BufReader::new(file));
    let header = reader.headers().map_err(|e| CliError::format(path, e.to_string()))?;
    if header.iter().ne(HEADER) {
        return Err(CliError::format(path, format!("expected header {}", HEADER.join(","))));
    }
    let mut out = Vec::new();
    for (k, row) in reader.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| CliError::format(path, e.to_string()))?;
        out.push(parse_row(path, k + 2, row)?);
    }
    Ok(out)
}

pub fn truth_rows(records: &[DatasetRecord]) -> Vec<TruthRow> {
    records
        .iter()
        .map(|r| TruthRow {
            id: r.id,
            model: r.model,
            alpha: r.alpha,
        })
        .collect()
}
