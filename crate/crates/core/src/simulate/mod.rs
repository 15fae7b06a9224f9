//! Trajectory simulators for the five diffusive regimes.
//!
//! All simulators sample positions at integer times t = 0..L-1 starting from
//! the origin, draw every random number from an explicit [`RngStream`], and
//! are normalized so that the ensemble MSD grows as t^alpha over the whole
//! sampled range (not only asymptotically):
//!
//! | model | construction | ensemble MSD |
//! |-------|--------------|--------------|
//! | CTRW  | N(0,1) jumps after Mittag-Leffler waiting times (tail t^-1-alpha) | t^alpha / Gamma(1+alpha) |
//! | LW    | unit-speed flights, equilibrium start, exponential-mixture flight law with tail t^-(4-alpha) | K t^alpha for t >= 1 |
//! | ATTM  | Brownian segments, D proportional to 1/E[duration] | t^alpha |
//! | FBM   | exact fractional Gaussian noise, H = alpha/2 | t^alpha |
//! | SBM   | independent increments with Var = (t+1)^alpha - t^alpha | t^alpha |

mod attm;
mod ctrw;
pub mod fbm;
mod fft;
mod lw;
mod sbm;

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::model::{AlphaExponent, DiffusionModelKind, Trajectory};
use crate::rng::RngStream;

pub(crate) use attm::attm_positions;
pub(crate) use ctrw::ctrw_positions;
pub use fbm::{fgn, fgn_cholesky, fgn_circulant, fgn_autocovariance};
pub(crate) use lw::{lw_positions, FlightLaw};
pub(crate) use sbm::sbm_positions;

/// Shortest trajectory any simulator accepts.
pub const MIN_LENGTH: usize = 2;

fn check_length(length: usize) -> Result<()> {
    if length < MIN_LENGTH {
        Err(Error::LengthTooShort {
            length,
            min: MIN_LENGTH,
        })
    } else {
        Ok(())
    }
}

/// Random factor W of the Kozubowski representation of a Mittag-Leffler
/// variate, tau = Exp(1) * W. Also the inverse rate of the exponential
/// mixture that the Mittag-Leffler law is built from. W == 1 for alpha >= 1.
pub(crate) fn mittag_leffler_scale<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    if alpha >= 1.0 {
        return 1.0;
    }
    let v: f64 = rng.sample(rand::distr::Open01);
    let a = alpha * core::f64::consts::PI;
    let base = libm::sin(a) / libm::tan(a * v) - libm::cos(a);
    libm::pow(base.max(f64::MIN_POSITIVE), 1.0 / alpha)
}

pub(crate) fn mittag_leffler_wait<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let e: f64 = Exp1.sample(rng);
    (e * mittag_leffler_scale(alpha, rng)).max(f64::MIN_POSITIVE)
}

fn build(
    model: DiffusionModelKind,
    alpha: AlphaExponent,
    length: usize,
    stream: &RngStream,
    positions: impl FnOnce(&mut rand_chacha::ChaCha8Rng) -> Vec<f64>,
) -> Result<Trajectory> {
    model.check(alpha)?;
    check_length(length)?;
    let mut rng = stream.rng();
    Ok(Trajectory {
        positions: positions(&mut rng),
        model,
        alpha,
        stream: *stream,
        snr: None,
    })
}

/// Continuous-time random walk, alpha in (0, 1].
pub fn simulate_ctrw(alpha: AlphaExponent, length: usize, stream: &RngStream) -> Result<Trajectory> {
    build(DiffusionModelKind::Ctrw, alpha, length, stream, |rng| {
        ctrw_positions(alpha.get(), length, rng).0
    })
}

/// Lévy walk, alpha in [1, 2).
pub fn simulate_lw(alpha: AlphaExponent, length: usize, stream: &RngStream) -> Result<Trajectory> {
    build(DiffusionModelKind::Lw, alpha, length, stream, |rng| {
        lw_positions(&FlightLaw::new(alpha.get()), length, rng)
    })
}

/// Prefactor K of the Lévy walk ensemble MSD K t^alpha, valid for t >= 1.
pub fn lw_msd_prefactor(alpha: AlphaExponent) -> f64 {
    FlightLaw::new(alpha.get()).msd_prefactor()
}

/// Annealed transient time motion, alpha in (0, 1].
pub fn simulate_attm(alpha: AlphaExponent, length: usize, stream: &RngStream) -> Result<Trajectory> {
    build(DiffusionModelKind::Attm, alpha, length, stream, |rng| {
        attm_positions(alpha.get(), length, rng)
    })
}

/// Fractional Brownian motion with Hurst index alpha / 2.
pub fn simulate_fbm(alpha: AlphaExponent, length: usize, stream: &RngStream) -> Result<Trajectory> {
    build(DiffusionModelKind::Fbm, alpha, length, stream, |rng| {
        let mut positions = Vec::with_capacity(length);
        positions.push(0.0);
        let mut x = 0.0;
        for dx in fgn(length - 1, alpha.hurst(), rng) {
            x += dx;
            positions.push(x);
        }
        positions
    })
}

/// Scaled Brownian motion, alpha in (0, 2).
pub fn simulate_sbm(alpha: AlphaExponent, length: usize, stream: &RngStream) -> Result<Trajectory> {
    build(DiffusionModelKind::Sbm, alpha, length, stream, |rng| {
        sbm_positions(alpha.get(), length, rng)
    })
}

/// Dispatches to the model-specific simulator.
pub fn simulate(
    model: DiffusionModelKind,
    alpha: AlphaExponent,
    length: usize,
    stream: &RngStream,
) -> Result<Trajectory> {
    match model {
        DiffusionModelKind::Attm => simulate_attm(alpha, length, stream),
        DiffusionModelKind::Ctrw => simulate_ctrw(alpha, length, stream),
        DiffusionModelKind::Fbm => simulate_fbm(alpha, length, stream),
        DiffusionModelKind::Lw => simulate_lw(alpha, length, stream),
        DiffusionModelKind::Sbm => simulate_sbm(alpha, length, stream),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> AlphaExponent {
        AlphaExponent::new(v).unwrap()
    }

    #[test]
    fn rejects_alpha_outside_model_domain() {
        let s = RngStream::new(1, 0);
        let err = simulate(DiffusionModelKind::Lw, a(0.5), 20, &s).unwrap_err();
        assert!(matches!(err, Error::AlphaOutsideModelDomain { model: DiffusionModelKind::Lw, .. }));
        assert!(alloc::format!("{err}").contains("alpha outside model domain"));
        assert!(simulate_ctrw(a(1.2), 20, &s).is_err());
        assert!(simulate_attm(a(1.05), 20, &s).is_err());
        assert!(simulate_lw(a(0.95), 20, &s).is_err());
    }

    #[test]
    fn rejects_short_length() {
        let s = RngStream::new(1, 0);
        for m in DiffusionModelKind::ALL {
            let alpha = if m == DiffusionModelKind::Lw { a(1.5) } else { a(0.7) };
            assert!(matches!(simulate(m, alpha, 1, &s), Err(Error::LengthTooShort { .. })));
        }
    }

    #[test]
    fn origin_anchored_finite_and_deterministic() {
        for m in DiffusionModelKind::ALL {
            for (i, &alpha) in [0.05, 0.3, 0.7, 1.0, 1.3, 1.95].iter().enumerate() {
                if !m.accepts(alpha) {
                    continue;
                }
                let s = RngStream::new(99, i as u64);
                let t1 = simulate(m, a(alpha), 50, &s).unwrap();
                let t2 = simulate(m, a(alpha), 50, &s).unwrap();
                assert_eq!(t1.len(), 50);
                assert_eq!(t1.positions[0], 0.0);
                assert!(t1.positions.iter().all(|x| x.is_finite()), "{m} {alpha}");
                assert_eq!(
                    t1.positions.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
                    t2.positions.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
                );
                assert_eq!(t1.model, m);
                assert_eq!(t1.stream, s);
            }
        }
    }

    #[test]
    fn ctrw_short_trajectory() {
        let t = simulate(DiffusionModelKind::Ctrw, a(0.7), 10, &RngStream::new(5, 5)).unwrap();
        assert_eq!(t.len(), 10);
        assert_eq!(t.positions[0], 0.0);
    }

    #[test]
    fn mittag_leffler_mean_renewals() {
        // E[N(t)] = t^alpha / Gamma(1 + alpha) for the fractional Poisson process.
        let alpha = 0.6;
        let mut rng = RngStream::new(3, 0).rng();
        let horizon = 10.0;
        let n = 40_000;
        let mut total = 0usize;
        for _ in 0..n {
            let mut t = mittag_leffler_wait(alpha, &mut rng);
            while t <= horizon {
                total += 1;
                t += mittag_leffler_wait(alpha, &mut rng);
            }
        }
        let mean = total as f64 / n as f64;
        let expected = libm::pow(horizon, alpha) / libm::tgamma(1.0 + alpha);
        assert!((mean / expected - 1.0).abs() < 0.03, "{mean} vs {expected}");
    }
}
