//! JSON dataset specification.
//!
//! ```json
//! {
//!   "task": "classification",
//!   "count": 100000,
//!   "length_range": [10, 50],
//!   "alpha_grid": {"start": 0.05, "stop": 1.95, "step": 0.05},
//!   "noise": {"snr": 1.0},
//!   "master_seed": 42,
//!   "split_fractions": [0.95, 0.05],
//!   "encodings": ["gasf", "gadf"]
//! }
//! ```
//!
//! `alpha_grid` may also be an explicit list, `noise` may be `"noiseless"`,
//! and `split_fractions` may carry a third (test) share.

use std::path::Path;

use gafdiff_core::dataset::{alpha_grid, DatasetSpec, Encodings, NoiseSpec, SplitFractions, Task};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaGridField {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NoiseField {
    Keyword(String),
    Snr { snr: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub task: String,
    pub count: u64,
    pub length_range: [usize; 2],
    pub alpha_grid: AlphaGridField,
    pub noise: NoiseField,
    pub master_seed: u64,
    pub split_fractions: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encodings: Option<Vec<String>>,
}

/// Parses `noiseless`, `inf` or a positive SNR.
pub fn parse_noise(s: &str) -> Result<NoiseSpec> {
    match s.trim().to_ascii_lowercase().as_str() {
        "noiseless" | "none" | "inf" => Ok(NoiseSpec::Noiseless),
        v => v
            .parse::<f64>()
            .ok()
            .filter(|x| *x > 0.0 && x.is_finite())
            .map(NoiseSpec::Snr)
            .ok_or_else(|| CliError::Validation(format!("invalid snr {s:?}"))),
    }
}

/// Parses a list such as `gasf,gadf`; `raw` is accepted and the list may be empty.
pub fn parse_encodings<S: AsRef<str>>(names: &[S]) -> Result<Encodings> {
    let mut enc = Encodings {
        gasf: false,
        gadf: false,
        raw: false,
    };
    for name in names {
        match name.as_ref().trim().to_ascii_lowercase().as_str() {
            "gasf" => enc.gasf = true,
            "gadf" => enc.gadf = true,
            "raw" => enc.raw = true,
            "" => {}
            other => return Err(CliError::Validation(format!("unknown encoding {other:?}"))),
        }
    }
    Ok(enc)
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    /// Converts to a validated [`DatasetSpec`].
    pub fn to_spec(&self) -> Result<DatasetSpec> {
        let task: Task = self.task.parse()?;
        let alpha_grid = match &self.alpha_grid {
            AlphaGridField::List(v) => v.clone(),
            AlphaGridField::Range { start, stop, step } => alpha_grid(*start, *stop, *step)?,
        };
        let noise = match &self.noise {
            NoiseField::Keyword(k) => parse_noise(k)?,
            NoiseField::Snr { snr } => parse_noise(&snr.to_string())?,
        };
        let split_fractions = match self.split_fractions[..] {
            [train, validation] => SplitFractions {
                train,
                validation,
                test: 0.0,
            },
            [train, validation, test] => SplitFractions {
                train,
                validation,
                test,
            },
            _ => {
                return Err(CliError::Validation(
                    "split_fractions must have two or three entries".to_string(),
                ))
            }
        };
        let encodings = match &self.encodings {
            Some(names) => parse_encodings(names)?,
            None => Encodings::default(),
        };
        let spec = DatasetSpec {
            task,
            count: self.count,
            length_range: (self.length_range[0], self.length_range[1]),
            alpha_grid,
            noise,
            encodings,
            master_seed: self.master_seed,
            split_fractions,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"task": "regression", "count": 10, "length_range": [10, 50],
        "alpha_grid": {"start": 0.05, "stop": 1.95, "step": 0.05}, "noise": {"snr": 2},
        "master_seed": 7, "split_fractions": [0.95, 0.05]}"#;

    #[test]
    fn parses_protocol_spec() {
        let spec = serde_json::from_str::<SpecFile>(BASE).unwrap().to_spec().unwrap();
        assert_eq!(spec.alpha_grid, gafdiff_core::dataset::default_alpha_grid());
        assert_eq!(spec.noise, NoiseSpec::Snr(2.0));
        assert_eq!(spec.encodings, Encodings::default());
        assert_eq!(spec.task, Task::Regression);
    }

    #[test]
    fn accepts_list_grid_and_noiseless() {
        let text = BASE
            .replace(r#"{"start": 0.05, "stop": 1.95, "step": 0.05}"#, "[0.5, 1.0, 1.5]")
            .replace(r#"{"snr": 2}"#, r#""noiseless""#);
        let spec = serde_json::from_str::<SpecFile>(&text).unwrap().to_spec().unwrap();
        assert_eq!(spec.alpha_grid, vec![0.5, 1.0, 1.5]);
        assert_eq!(spec.noise, NoiseSpec::Noiseless);
    }

    #[test]
    fn rejects_bad_specs() {
        for (from, to) in [
            ("[10, 50]", "[5, 50]"),
            (r#""regression""#, r#""ranking""#),
            ("[0.95, 0.05]", "[0.9, 0.05]"),
            (r#"{"snr": 2}"#, r#"{"snr": -1}"#),
            (r#"{"start": 0.05, "stop": 1.95, "step": 0.05}"#, "[0.5]"),
            (r#""count": 10"#, r#""count": 0"#),
        ] {
            let spec = serde_json::from_str::<SpecFile>(&BASE.replace(from, to)).unwrap();
            assert!(spec.to_spec().is_err(), "{to}");
        }
        assert!(serde_json::from_str::<SpecFile>(&BASE.replace("\"task\"", "\"tsk\"")).is_err());
    }

    #[test]
    fn encodings_and_noise_flags() {
        assert_eq!(parse_noise("inf").unwrap(), NoiseSpec::Noiseless);
        assert_eq!(parse_noise("0.5").unwrap(), NoiseSpec::Snr(0.5));
        assert!(parse_noise("0").is_err());
        let e = parse_encodings(&["GASF"]).unwrap();
        assert!(e.gasf && !e.gadf);
        assert!(parse_encodings(&["mtf"]).is_err());
    }
}
