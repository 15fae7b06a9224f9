//! Gramian Angular Fields.
//!
//! A series is rescaled to [-1, 1], mapped to angles phi = arccos(x) with
//! radii r_i = i/N, and turned into the N x N matrices
//! GASF[i][j] = cos(phi_i + phi_j) and GADF[i][j] = sin(phi_i - phi_j).
//! Both are built from cached cos/sin vectors, which makes GASF exactly
//! symmetric and GADF exactly antisymmetric with a zero diagonal.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GafKind {
    Gasf,
    Gadf,
}

impl GafKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Gasf => "gasf",
            Self::Gadf => "gadf",
        }
    }
}

impl fmt::Display for GafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GafKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gasf" => Ok(Self::Gasf),
            "gadf" => Ok(Self::Gadf),
            _ => Err(Error::InvalidSpec(alloc::format!("unknown GAF kind {s:?}"))),
        }
    }
}

/// Series rescaled into [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSeries(Vec<f64>);

impl NormalizedSeries {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Polar coordinates of a normalized series, with the cos/sin of every angle
/// cached for the field computations.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarEncoding {
    pub phi: Vec<f64>,
    pub r: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl PolarEncoding {
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// Row-major N x N field.
#[derive(Debug, Clone, PartialEq)]
pub struct GafImage {
    pub kind: GafKind,
    pub size: usize,
    pub data: Vec<f64>,
}

impl GafImage {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.size + col]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size).map(|i| self.get(i, i)).collect()
    }

    /// Entries narrowed to `f32` for storage.
    pub fn to_f32(&self) -> Vec<f32> {
        self.data.iter().map(|&v| v as f32).collect()
    }

    /// Image rotated by 180 degrees: out[i][j] = self[N-1-i][N-1-j].
    pub fn rot180(&self) -> GafImage {
        let mut data = self.data.clone();
        data.reverse();
        GafImage {
            kind: self.kind,
            size: self.size,
            data,
        }
    }
}

/// x̃_i = ((x_i − max) + (x_i − min)) / (max − min). A constant series maps to
/// all zeros.
pub fn normalize(series: &[f64]) -> Result<NormalizedSeries> {
    if series.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(i) = series.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let (min, max) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if max == min {
        return Ok(NormalizedSeries(alloc::vec![0.0; series.len()]));
    }
    // halving is exact and keeps max - min finite for any finite input
    let s = if (max - min).is_finite() { 1.0 } else { 0.5 };
    let (max, min) = (max * s, min * s);
    let range = max - min;
    Ok(NormalizedSeries(
        series
            .iter()
            .map(|&x| (((x * s - max) + (x * s - min)) / range).clamp(-1.0, 1.0))
            .collect(),
    ))
}

pub fn polar_encode(series: &NormalizedSeries) -> PolarEncoding {
    let n = series.len();
    let x: Vec<f64> = series.values().iter().map(|&v| v.clamp(-1.0, 1.0)).collect();
    // cos(acos x) = x and sin(acos x) = sqrt(1 - x^2) >= 0 on [0, pi]
    PolarEncoding {
        r: (1..=n).map(|i| i as f64 / n as f64).collect(),
        phi: x.iter().map(|&v| libm::acos(v)).collect(),
        sin: x.iter().map(|&v| libm::sqrt((1.0 - v) * (1.0 + v))).collect(),
        cos: x,
    }
}

fn field(pe: &PolarEncoding, kind: GafKind, entry: impl Fn(f64, f64, f64, f64) -> f64) -> GafImage {
    let n = pe.len();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(entry(pe.cos[i], pe.sin[i], pe.cos[j], pe.sin[j]).clamp(-1.0, 1.0));
        }
    }
    GafImage { kind, size: n, data }
}

/// cos(phi_i + phi_j) = cos_i cos_j − sin_i sin_j.
pub fn gasf(pe: &PolarEncoding) -> GafImage {
    field(pe, GafKind::Gasf, |ci, si, cj, sj| ci * cj - si * sj)
}

/// sin(phi_i − phi_j) = sin_i cos_j − cos_i sin_j.
pub fn gadf(pe: &PolarEncoding) -> GafImage {
    field(pe, GafKind::Gadf, |ci, si, cj, sj| si * cj - ci * sj)
}

/// normalize → polar_encode → gasf | gadf.
pub fn encode(series: &[f64], kind: GafKind) -> Result<GafImage> {
    let pe = polar_encode(&normalize(series)?);
    Ok(match kind {
        GafKind::Gasf => gasf(&pe),
        GafKind::Gadf => gadf(&pe),
    })
}
