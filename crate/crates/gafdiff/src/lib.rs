//! Dataset emission, file formats and the `gafdiff` command line.
//!
//! Numerics live in [`gafdiff_core`]; this crate adds NPY shards, the CSV
//! manifest and prediction formats, JSON specs and reports, PNG export and
//! record-parallel generation.

pub mod cli;
pub mod error;
pub mod estimate;
pub mod image;
pub mod manifest;
pub mod npy;
pub mod pipeline;
pub mod predictions;
pub mod report;
pub mod spec_file;

pub use error::{CliError, Result};
