//! Lévy walk with unit speed.
//!
//! Flight durations are exponential with a random rate R. The rate law is a
//! power-law continuum `c r^(2-alpha)` on (0, cutoff] plus an atom at
//! `cutoff * alpha / (alpha - 1)`, which gives a flight survival function
//! with tail t^-(3-alpha), i.e. psi(t) ~ t^-(sigma+1) with sigma = 3 - alpha.
//! The walk starts in equilibrium (the first flight is drawn from the
//! residual law), so the velocity autocorrelation is the completely monotone
//! function `C(u) = int G(r) e^(-r u) dr`. The atom weight and position are
//! chosen so that the linear and constant terms of the MSD cancel, leaving
//! `MSD(t) = 2 c Gamma(-alpha) t^alpha` up to terms of order e^(-cutoff t).
//!
//! alpha = 1 is the normal-diffusion limit and uses a single exponential
//! flight law with rate `cutoff`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1};

/// Largest rate of the power-law continuum. Deviations from a pure power law
/// decay as e^(-CUTOFF t).
pub(crate) const CUTOFF: f64 = 10.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct FlightLaw {
    alpha: f64,
    /// Rate of the compensating atom.
    atom_rate: f64,
    /// P(atom) under the equilibrium (first-flight) rate law G.
    atom_prob_first: f64,
    /// P(atom) under the flight rate law H(r) proportional to r G(r).
    atom_prob: f64,
    /// Prefactor K of MSD(t) = K t^alpha.
    msd_prefactor: f64,
}

impl FlightLaw {
    pub(crate) fn new(alpha: f64) -> Self {
        if alpha <= 1.0 {
            return Self {
                alpha: 1.0,
                atom_rate: CUTOFF,
                atom_prob_first: 1.0,
                atom_prob: 1.0,
                msd_prefactor: 2.0 / CUTOFF,
            };
        }
        let head = libm::pow(CUTOFF, 2.0 - alpha);
        let c = 1.0 / (head * (1.0 / (2.0 - alpha) + alpha / ((alpha - 1.0) * (alpha - 1.0))));
        let weight = c * alpha * head / ((alpha - 1.0) * (alpha - 1.0));
        let atom_rate = CUTOFF * alpha / (alpha - 1.0);
        let continuum_flux = c * libm::pow(CUTOFF, 3.0 - alpha) / (3.0 - alpha);
        let atom_flux = weight * atom_rate;
        Self {
            alpha,
            atom_rate,
            atom_prob_first: weight,
            atom_prob: atom_flux / (atom_flux + continuum_flux),
            msd_prefactor: 2.0 * c * libm::tgamma(-alpha),
        }
    }

    /// Prefactor K of the ensemble MSD K t^alpha (valid for t >= 1).
    pub(crate) fn msd_prefactor(&self) -> f64 {
        self.msd_prefactor
    }

    fn rate<R: Rng + ?Sized>(&self, atom_prob: f64, exponent: f64, rng: &mut R) -> f64 {
        if rng.random::<f64>() < atom_prob {
            self.atom_rate
        } else {
            let u: f64 = rng.sample(rand::distr::Open01);
            CUTOFF * libm::pow(u, 1.0 / exponent)
        }
    }

    fn first_flight<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let rate = self.rate(self.atom_prob_first, 2.0 - self.alpha, rng);
        let e: f64 = Exp1.sample(rng);
        e / rate
    }

    fn flight<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let rate = self.rate(self.atom_prob, 3.0 - self.alpha, rng);
        let e: f64 = Exp1.sample(rng);
        e / rate
    }
}

/// Samples the walk at integer times; flights run at speed 1 in a random
/// direction and positions are read exactly on the piecewise-linear path.
pub(crate) fn lw_positions<R: Rng + ?Sized>(law: &FlightLaw, length: usize, rng: &mut R) -> Vec<f64> {
    let mut positions = vec![0.0; length];
    let mut start = 0.0;
    let mut x = 0.0;
    let mut next_t = 1usize;
    let mut duration = law.first_flight(rng);
    loop {
        let dir = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let end = start + duration;
        while next_t < length && next_t as f64 <= end {
            positions[next_t] = x + dir * (next_t as f64 - start);
            next_t += 1;
        }
        if next_t >= length {
            break;
        }
        x += dir * duration;
        start = end;
        duration = law.flight(rng);
    }
    positions
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn steps_never_exceed_unit_speed() {
        let law = FlightLaw::new(1.5);
        let mut rng = RngStream::new(1, 2).rng();
        for _ in 0..200 {
            let x = lw_positions(&law, 50, &mut rng);
            assert_eq!(x[0], 0.0);
            assert!(x.windows(2).all(|w| (w[1] - w[0]).abs() <= 1.0 + 1e-12));
        }
    }

    #[test]
    fn displacement_constant_within_a_flight() {
        // Two consecutive steps inside one flight move by the same +-1.
        let law = FlightLaw::new(1.7);
        let mut rng = RngStream::new(4, 4).rng();
        let mut ballistic_pairs = 0;
        for _ in 0..200 {
            let x = lw_positions(&law, 50, &mut rng);
            for w in x.windows(3) {
                let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
                if (d1.abs() - 1.0).abs() < 1e-12 && (d1 - d2).abs() < 1e-12 {
                    ballistic_pairs += 1;
                }
                assert!(d1.abs() <= 1.0 + 1e-12);
            }
        }
        assert!(ballistic_pairs > 1000);
    }

    #[test]
    fn ballistic_limit_single_flights() {
        let count_single = |alpha: f64| {
            let law = FlightLaw::new(alpha);
            let mut rng = RngStream::new(8, 0).rng();
            let mut single = 0;
            for _ in 0..2000 {
                let x = lw_positions(&law, 50, &mut rng);
                if (x[49].abs() - 49.0).abs() < 1e-9 {
                    single += 1;
                    for (t, v) in x.iter().enumerate() {
                        assert!((v.abs() - t as f64).abs() < 1e-9);
                    }
                }
            }
            single
        };
        let mid = count_single(1.5);
        let near_two = count_single(1.98);
        assert!(near_two > mid, "{near_two} <= {mid}");
        assert!(near_two > 100);
    }

    #[test]
    fn rate_law_is_normalized() {
        for alpha in [1.05, 1.2, 1.5, 1.8, 1.95] {
            let law = FlightLaw::new(alpha);
            assert!(law.atom_prob_first > 0.0 && law.atom_prob_first < 1.0);
            assert!(law.atom_prob > 0.0 && law.atom_prob < 1.0);
            assert!(law.msd_prefactor() > 0.0 && law.msd_prefactor() <= 1.0);
        }
    }
}
