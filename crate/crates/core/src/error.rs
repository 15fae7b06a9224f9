use alloc::string::String;
use alloc::vec::Vec;

use crate::model::DiffusionModelKind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("alpha {0} outside (0, 2)")]
    AlphaOutOfRange(f64),
    #[error("alpha outside model domain: {model} does not accept alpha = {alpha}")]
    AlphaOutsideModelDomain { model: DiffusionModelKind, alpha: f64 },
    #[error("trajectory length {length} too short (need at least {min})")]
    LengthTooShort { length: usize, min: usize },
    #[error("trajectory length {length} exceeds padded length {target}")]
    LengthTooLong { length: usize, target: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("invalid lag range: {0}")]
    InvalidLag(String),
    #[error("cannot fit power law: non-positive value at lag {0}")]
    NonPositiveMsd(usize),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("invalid dataset spec: {0}")]
    InvalidSpec(String),
    #[error("record index {index} out of range for count {count}")]
    IndexOutOfRange { index: u64, count: u64 },
    #[error("prediction ids do not match manifest (missing: {missing:?}, extra: {extra:?}, duplicate: {duplicate:?})")]
    IdMismatch {
        missing: Vec<u64>,
        extra: Vec<u64>,
        duplicate: Vec<u64>,
    },
    #[error("invalid class code {0}")]
    InvalidClass(u32),
    #[error("invalid prediction set: {0}")]
    InvalidPredictions(String),
}
