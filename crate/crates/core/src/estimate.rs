//! Mean squared displacement estimators and power-law fits.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// MSD values indexed by positive integer lag.
#[derive(Debug, Clone, PartialEq)]
pub struct MsdCurve {
    pub lags: Vec<usize>,
    pub values: Vec<f64>,
}

impl MsdCurve {
    pub fn value_at(&self, lag: usize) -> Option<f64> {
        self.lags.iter().position(|&l| l == lag).map(|i| self.values[i])
    }

    /// The same curve multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> MsdCurve {
        MsdCurve {
            lags: self.lags.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }
}

/// Least-squares fit of log(MSD) = alpha log(lag) + intercept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

/// Time-averaged MSD: (1/(L−τ)) Σ_t (x(t+τ) − x(t))² for τ = 1..=max_lag.
pub fn ta_msd(positions: &[f64], max_lag: usize) -> Result<MsdCurve> {
    let len = positions.len();
    if max_lag == 0 || max_lag >= len {
        return Err(Error::InvalidLag(format!("max_lag {max_lag} must satisfy 1 <= max_lag < {len}")));
    }
    let values = (1..=max_lag)
        .map(|lag| {
            let sum: f64 = positions
                .windows(lag + 1)
                .map(|w| {
                    let d = w[lag] - w[0];
                    d * d
                })
                .sum();
            sum / (len - lag) as f64
        })
        .collect();
    Ok(MsdCurve {
        lags: (1..=max_lag).collect(),
        values,
    })
}

/// Ensemble MSD from the origin: mean over trajectories of (x(t) − x(0))²,
/// t = 1..=max_lag. Summation runs sequentially in input order, so the
/// result is bit-reproducible.
pub fn ensemble_msd<T: AsRef<[f64]>>(trajectories: &[T], max_lag: usize) -> Result<MsdCurve> {
    if trajectories.is_empty() {
        return Err(Error::EmptyInput);
    }
    if max_lag == 0 {
        return Err(Error::InvalidLag("max_lag must be positive".into()));
    }
    let mut sums = alloc::vec![0.0; max_lag];
    for (k, traj) in trajectories.iter().enumerate() {
        let x = traj.as_ref();
        if x.len() <= max_lag {
            return Err(Error::LengthMismatch(format!(
                "trajectory {k} has length {} but max_lag is {max_lag}",
                x.len()
            )));
        }
        for (t, s) in sums.iter_mut().enumerate() {
            let d = x[t + 1] - x[0];
            *s += d * d;
        }
    }
    let n = trajectories.len() as f64;
    Ok(MsdCurve {
        lags: (1..=max_lag).collect(),
        values: sums.into_iter().map(|s| s / n).collect(),
    })
}

/// Fits the log-log slope over lags in `[lag_lo, lag_hi]`.
pub fn fit_alpha(curve: &MsdCurve, lag_lo: usize, lag_hi: usize) -> Result<PowerLawFit> {
    if lag_lo == 0 || lag_lo >= lag_hi {
        return Err(Error::InvalidLag(format!("fit range [{lag_lo}, {lag_hi}] needs 1 <= lo < hi")));
    }
    let mut points = Vec::new();
    for (&lag, &value) in curve.lags.iter().zip(&curve.values) {
        if lag < lag_lo || lag > lag_hi {
            continue;
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveMsd(lag));
        }
        points.push((libm::log(lag as f64), libm::log(value)));
    }
    if points.len() < 2 || !curve.lags.contains(&lag_hi) {
        return Err(Error::InvalidLag(format!("curve does not cover [{lag_lo}, {lag_hi}]")));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let alpha = sxy / sxx;
    let intercept = my - alpha * mx;
    let sse: f64 = points
        .iter()
        .map(|p| {
            let r = p.1 - (alpha * p.0 + intercept);
            r * r
        })
        .sum();
    Ok(PowerLawFit {
        alpha,
        intercept,
        residual: libm::sqrt(sse / n),
    })
}

/// Minimum trajectory length for [`estimate_alpha_single`].
pub const MIN_SINGLE_LENGTH: usize = 8;

/// Per-trajectory exponent estimate; `alpha` is NaN when `degenerate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleEstimate {
    pub alpha: f64,
    pub residual: f64,
    pub degenerate: bool,
}

/// taMSD fit over lags 1..=⌊L/4⌋.
pub fn estimate_alpha_single(positions: &[f64]) -> Result<SingleEstimate> {
    let len = positions.len();
    if len < MIN_SINGLE_LENGTH {
        return Err(Error::LengthTooShort {
            length: len,
            min: MIN_SINGLE_LENGTH,
        });
    }
    let hi = len / 4;
    let curve = ta_msd(positions, hi)?;
    match fit_alpha(&curve, 1, hi) {
        Ok(fit) => Ok(SingleEstimate {
            alpha: fit.alpha,
            residual: fit.residual,
            degenerate: false,
        }),
        Err(Error::NonPositiveMsd(_)) => Ok(SingleEstimate {
            alpha: f64::NAN,
            residual: f64::NAN,
            degenerate: true,
        }),
        Err(e) => Err(e),
    }
}
