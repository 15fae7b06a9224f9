use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::mittag_leffler_wait;

/// Positions at integer times and the number of renewals that occurred.
///
/// Waiting times are Mittag-Leffler distributed (power-law tail with exponent
/// alpha), each renewal adds an N(0, 1) jump and the particle rests between
/// renewals. The renewal count then has mean t^alpha / Gamma(1 + alpha) at
/// every t, which is also the ensemble MSD.
pub(crate) fn ctrw_positions<R: Rng + ?Sized>(alpha: f64, length: usize, rng: &mut R) -> (Vec<f64>, usize) {
    let mut positions = vec![0.0; length];
    let mut x = 0.0;
    let mut renewals = 0;
    let mut next = mittag_leffler_wait(alpha, rng);
    for (t, slot) in positions.iter_mut().enumerate().skip(1) {
        while next <= t as f64 {
            let jump: f64 = StandardNormal.sample(rng);
            x += jump;
            renewals += 1;
            next += mittag_leffler_wait(alpha, rng);
        }
        *slot = x;
    }
    (positions, renewals)
}
