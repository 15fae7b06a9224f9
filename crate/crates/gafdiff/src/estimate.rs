//! Per-trajectory exponent estimates over a trajectory array.

use std::path::Path;

use gafdiff_core::dataset::DatasetRecord;
use gafdiff_core::estimate::estimate_alpha_single;

use crate::error::{CliError, Result};
use crate::npy::F32Array;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateRow {
    pub id: u64,
    pub alpha_hat: f64,
    pub residual: f64,
    pub degenerate: bool,
}

/// Estimates every row of a `[count, L]` array. With a manifest, row k is
/// manifest record k and only its trailing `raw_length` samples (the
/// unpadded trajectory) are used; otherwise ids are row indices and whole
/// rows are used.
pub fn estimate_rows(traj: &F32Array, manifest: Option<&[DatasetRecord]>) -> Result<Vec<EstimateRow>> {
    if traj.shape.len() != 2 {
        return Err(CliError::Validation(format!(
            "expected a [count, length] trajectory array, got shape {:?}",
            traj.shape
        )));
    }
    if let Some(m) = manifest {
        if m.len() != traj.rows() {
            return Err(CliError::Validation(format!(
                "manifest has {} rows but the array has {}",
                m.len(),
                traj.rows()
            )));
        }
    }
    (0..traj.rows())
        .map(|k| {
            let row = traj.row(k);
            let (id, x) = match manifest {
                Some(m) => {
                    let len = m[k].raw_length.min(row.len());
                    (m[k].id, &row[row.len() - len..])
                }
                None => (k as u64, row),
            };
            let x: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
            let e = estimate_alpha_single(&x).map_err(|e| CliError::Validation(format!("row {k} (id {id}): {e}")))?;
            Ok(EstimateRow {
                id,
                alpha_hat: e.alpha,
                residual: e.residual,
                degenerate: e.degenerate,
            })
        })
        .collect()
}

pub fn write_estimates(path: &Path, rows: &[EstimateRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::format(path, e.to_string()))?;
    let err = |e: csv::Error| CliError::format(path, e.to_string());
    w.write_record(["id", "alpha_hat", "residual", "degenerate"]).map_err(err)?;
    for r in rows {
        w.write_record([
            r.id.to_string(),
            r.alpha_hat.to_string(),
            r.residual.to_string(),
            r.degenerate.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
