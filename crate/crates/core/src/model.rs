use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// The five diffusive regimes. Integer codes follow alphabetical order and
/// are part of the label file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiffusionModelKind {
    Attm = 0,
    Ctrw = 1,
    Fbm = 2,
    Lw = 3,
    Sbm = 4,
}

impl DiffusionModelKind {
    pub const ALL: [DiffusionModelKind; 5] = [Self::Attm, Self::Ctrw, Self::Fbm, Self::Lw, Self::Sbm];
    pub const COUNT: usize = 5;

    pub fn code(self) -> u32 {
        self as u32
    }

    pub fn from_code(code: u32) -> Result<Self> {
        Self::ALL
            .get(code as usize)
            .copied()
            .ok_or(Error::InvalidClass(code))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Attm => "ATTM",
            Self::Ctrw => "CTRW",
            Self::Fbm => "FBM",
            Self::Lw => "LW",
            Self::Sbm => "SBM",
        }
    }

    /// Whether `alpha` lies in this model's exponent domain:
    /// ATTM/CTRW (0, 1], LW [1, 2), FBM/SBM (0, 2).
    pub fn accepts(self, alpha: f64) -> bool {
        if !(alpha > 0.0 && alpha < 2.0) {
            return false;
        }
        match self {
            Self::Attm | Self::Ctrw => alpha <= 1.0,
            Self::Lw => alpha >= 1.0,
            Self::Fbm | Self::Sbm => true,
        }
    }

    pub fn check(self, alpha: AlphaExponent) -> Result<()> {
        if self.accepts(alpha.get()) {
            Ok(())
        } else {
            Err(Error::AlphaOutsideModelDomain {
                model: self,
                alpha: alpha.get(),
            })
        }
    }
}

impl fmt::Display for DiffusionModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DiffusionModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidPredictions(alloc::format!("unknown model name {s:?}")))
    }
}

/// Anomalous diffusion exponent, restricted to the open interval (0, 2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaExponent(f64);

impl AlphaExponent {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 2.0 {
            Ok(Self(value))
        } else {
            Err(Error::AlphaOutOfRange(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Hurst index H = alpha / 2.
    pub fn hurst(self) -> f64 {
        self.0 / 2.0
    }
}

/// One-dimensional trajectory sampled at t = 0, 1, ..., L-1 with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub positions: Vec<f64>,
    pub model: DiffusionModelKind,
    pub alpha: AlphaExponent,
    pub stream: RngStream,
    /// Signal-to-noise ratio of added localization noise, `None` when clean.
    pub snr: Option<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

impl AsRef<[f64]> for Trajectory {
    fn as_ref(&self) -> &[f64] {
        &self.positions
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_alphabetical() {
        let names: Vec<_> = DiffusionModelKind::ALL.iter().map(|m| m.name()).collect();
        assert_eq!(names, ["ATTM", "CTRW", "FBM", "LW", "SBM"]);
        for (i, m) in DiffusionModelKind::ALL.iter().enumerate() {
            assert_eq!(m.code() as usize, i);
            assert_eq!(DiffusionModelKind::from_code(i as u32).unwrap(), *m);
            assert_eq!(m.name().parse::<DiffusionModelKind>().unwrap(), *m);
        }
        assert!(DiffusionModelKind::from_code(5).is_err());
    }

    #[test]
    fn domains() {
        use DiffusionModelKind::*;
        assert!(Attm.accepts(1.0) && !Attm.accepts(1.05));
        assert!(Ctrw.accepts(0.05) && !Ctrw.accepts(1.5));
        assert!(Lw.accepts(1.0) && !Lw.accepts(0.5) && !Lw.accepts(2.0));
        assert!(Fbm.accepts(1.95) && Sbm.accepts(0.05));
        assert!(!Fbm.accepts(0.0) && !Sbm.accepts(2.0));
    }

    #[test]
    fn alpha_bounds() {
        assert!(AlphaExponent::new(0.0).is_err());
        assert!(AlphaExponent::new(2.0).is_err());
        assert!(AlphaExponent::new(f64::NAN).is_err());
        assert_eq!(AlphaExponent::new(1.5).unwrap().hurst(), 0.75);
    }
}
