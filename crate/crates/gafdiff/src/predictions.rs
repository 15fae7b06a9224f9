//! Prediction CSVs: `id,pred_code[,score_0..score_4]` or `id,pred_alpha`.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use gafdiff_core::dataset::Task;
use gafdiff_core::metrics::{AlphaPrediction, ClassPrediction, PredictionSet, NUM_CLASSES};

use crate::error::{CliError, Result};

fn score_header() -> Vec<String> {
    (0..NUM_CLASSES).map(|c| format!("score_{c}")).collect()
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, name: &str, raw: Option<&str>) -> Result<T> {
    let raw = raw.unwrap_or("");
    raw.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("{}: line {line}: bad {name} {raw:?}", path.display())))
}

pub fn read_predictions(path: &Path, task: Task) -> Result<PredictionSet> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(BufReader::new(file));
    let invalid = |msg: String| CliError::Validation(format!("{}: {msg}", path.display()));
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| invalid(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let rows = reader.records().enumerate().map(|(k, r)| (k + 2, r));
    match task {
        Task::Classification => {
            let with_scores = match header.len() {
                2 => false,
                n if n == 2 + NUM_CLASSES => true,
                _ => return Err(invalid(format!("unexpected header {}", header.join(",")))),
            };
            if header[..2] != ["id", "pred_code"] || (with_scores && header[2..] != score_header()[..]) {
                return Err(invalid(format!(
                    "classification header must be id,pred_code[,{}]",
                    score_header().join(",")
                )));
            }
            let mut out = Vec::new();
            for (line, rec) in rows {
                let rec = rec.map_err(|e| invalid(e.to_string()))?;
                let scores = if with_scores {
                    let mut s = [0.0; NUM_CLASSES];
                    for (c, v) in s.iter_mut().enumerate() {
                        *v = field(path, line, &format!("score_{c}"), rec.get(2 + c))?;
                    }
                    Some(s)
                } else {
                    None
                };
                out.push(ClassPrediction {
                    id: field(path, line, "id", rec.get(0))?,
                    code: field(path, line, "pred_code", rec.get(1))?,
                    scores,
                });
            }
            Ok(PredictionSet::Classification(out))
        }
        Task::Regression => {
            if header != ["id", "pred_alpha"] {
                return Err(invalid("regression header must be id,pred_alpha".into()));
            }
            let mut out = Vec::new();
            for (line, rec) in rows {
                let rec = rec.map_err(|e| invalid(e.to_string()))?;
                out.push(AlphaPrediction {
                    id: field(path, line, "id", rec.get(0))?,
                    alpha: field(path, line, "pred_alpha", rec.get(1))?,
                });
            }
            Ok(PredictionSet::Regression(out))
        }
    }
}

pub fn write_predictions(path: &Path, set: &PredictionSet) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::format(path, e.to_string()))?;
    let err = |e: csv::Error| CliError::format(path, e.to_string());
    match set {
        PredictionSet::Classification(rows) => {
            let scored = rows.first().is_some_and(|r| r.scores.is_some());
            let mut header = vec!["id".to_string(), "pred_code".to_string()];
            if scored {
                header.extend(score_header());
            }
            w.write_record(&header).map_err(err)?;
            for r in rows {
                let mut rec = vec![r.id.to_string(), r.code.to_string()];
                if let Some(s) = r.scores.filter(|_| scored) {
                    rec.extend(s.iter().map(|v| v.to_string()));
                }
                w.write_record(&rec).map_err(err)?;
            }
        }
        PredictionSet::Regression(rows) => {
            w.write_record(["id", "pred_alpha"]).map_err(err)?;
            for r in rows {
                w.write_record([r.id.to_string(), r.alpha.to_string()]).map_err(err)?;
            }
        }
    }
    w.into_inner()
        .map_err(|e| CliError::format(path, e.to_string()))?
        .flush()
        .map_err(|e| CliError::io(path, e))
}
