//! Record-parallel dataset emission.
//!
//! Records are generated in fixed-size chunks on a worker pool and written
//! in id order, so the output bytes do not depend on the number of threads.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gafdiff_core::dataset::{generate_record, DatasetSpec, GeneratedRecord, PADDED_LENGTH};
use gafdiff_core::DiffusionModelKind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::manifest::ManifestWriter;
use crate::npy::ShardWriter;

pub const TRAJECTORIES_FILE: &str = "trajectories.npy";
pub const GASF_FILE: &str = "gasf.npy";
pub const GADF_FILE: &str = "gadf.npy";
pub const MANIFEST_FILE: &str = "manifest.csv";

const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Serialize)]
pub struct BuildSummary {
    pub count: u64,
    pub files: Vec<PathBuf>,
    pub per_model: BTreeMap<String, u64>,
    pub per_split: BTreeMap<String, u64>,
    /// Records whose clean trajectory had zero displacement spread.
    pub noise_omitted: u64,
    pub threads: usize,
    pub seconds: f64,
}

pub fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    if threads == 0 {
        return Err(CliError::Validation("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start {threads} worker threads: {e}")))
}

/// Applies `f` to `0..n` on `pool`, returning results in index order.
pub fn map_ordered<T, F>(pool: &rayon::ThreadPool, range: std::ops::Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    pool.install(|| range.into_par_iter().map(f).collect())
}

struct Shards {
    raw: ShardWriter,
    gasf: Option<ShardWriter>,
    gadf: Option<ShardWriter>,
    manifest: ManifestWriter,
}

impl Shards {
    fn push(&mut self, g: &GeneratedRecord) -> Result<()> {
        self.raw.append(&g.raw)?;
        if let (Some(w), Some(img)) = (self.gasf.as_mut(), g.gasf.as_ref()) {
            w.append(img)?;
        }
        if let (Some(w), Some(img)) = (self.gadf.as_mut(), g.gadf.as_ref()) {
            w.append(img)?;
        }
        self.manifest.write(&g.record)
    }

    fn finish(self) -> Result<()> {
        self.raw.finish()?;
        if let Some(w) = self.gasf {
            w.finish()?;
        }
        if let Some(w) = self.gadf {
            w.finish()?;
        }
        self.manifest.finish()
    }
}

/// Generates every record of `spec` into `out_dir`.
pub fn build_dataset(spec: &DatasetSpec, out_dir: &Path, threads: usize) -> Result<BuildSummary> {
    spec.validate()?;
    let pool = thread_pool(threads)?;
    let started = Instant::now();
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;

    let n = spec.count;
    let side = PADDED_LENGTH as u64;
    let mut files = vec![out_dir.join(TRAJECTORIES_FILE)];
    let raw = ShardWriter::create(&files[0], &[n, side])?;
    let mut image = |on: bool, name: &str| -> Result<Option<ShardWriter>> {
        if !on {
            return Ok(None);
        }
        let path = out_dir.join(name);
        let w = ShardWriter::create(&path, &[n, side, side])?;
        files.push(path);
        Ok(Some(w))
    };
    let gasf = image(spec.encodings.gasf, GASF_FILE)?;
    let gadf = image(spec.encodings.gadf, GADF_FILE)?;
    let manifest_path = out_dir.join(MANIFEST_FILE);
    let manifest = ManifestWriter::create(&manifest_path)?;
    files.push(manifest_path);
    let mut shards = Shards {
        raw,
        gasf,
        gadf,
        manifest,
    };

    let mut per_model = [0u64; DiffusionModelKind::COUNT];
    let mut per_split = [0u64; 3];
    let mut noise_omitted = 0;
    let mut start = 0;
    while start < n {
        let end = (start + CHUNK).min(n);
        let batch = map_ordered(&pool, start..end, |i| generate_record(spec, i));
        for (i, g) in (start..).zip(batch) {
            let g = g.map_err(|e| CliError::Validation(format!("record {i}: {e}")))?;
            shards.push(&g)?;
            per_model[g.record.model.code() as usize] += 1;
            per_split[g.record.split as usize] += 1;
            noise_omitted += u64::from(spec.noise.snr().is_some() && !g.noise_applied);
        }
        start = end;
    }
    shards.finish()?;

    Ok(BuildSummary {
        count: n,
        files,
        per_model: DiffusionModelKind::ALL
            .iter()
            .map(|m| (m.name().to_string(), per_model[m.code() as usize]))
            .collect(),
        per_split: gafdiff_core::dataset::Split::ALL
            .iter()
            .map(|s| (s.name().to_string(), per_split[*s as usize]))
            .collect(),
        noise_omitted,
        threads,
        seconds: started.elapsed().as_secs_f64(),
    })
}
