//! Core numerics for classifying anomalous diffusion from images.
//!
//! The crate synthesizes one-dimensional trajectories from five diffusive
//! regimes (ATTM, CTRW, FBM, LW, SBM), encodes series as Gramian Angular
//! Summation/Difference Fields, estimates anomalous exponents from mean
//! squared displacements, and scores classifier/regressor outputs.
//!
//! Everything here is pure computation over explicit random streams; file
//! formats, parallel dataset emission and the command line live in the
//! `gafdiff` crate. The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unused_must_use, rust_2018_idioms)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod dataset;
pub mod error;
pub mod estimate;
pub mod gaf;
pub mod metrics;
pub mod model;
pub mod rng;
pub mod simulate;

pub use error::{Error, Result};
pub use model::{AlphaExponent, DiffusionModelKind, Trajectory};
pub use rng::RngStream;
