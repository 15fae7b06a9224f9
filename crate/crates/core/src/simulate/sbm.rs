use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Independent Gaussian increments with Var[x(t+1) - x(t)] = 2D((t+1)^alpha - t^alpha),
/// D = 1/2, so the ensemble MSD is exactly t^alpha.
pub(crate) fn sbm_positions<R: Rng + ?Sized>(alpha: f64, length: usize, rng: &mut R) -> Vec<f64> {
    let mut positions = Vec::with_capacity(length);
    positions.push(0.0);
    let mut x = 0.0;
    for t in 0..length.saturating_sub(1) {
        let var = libm::pow((t + 1) as f64, alpha) - libm::pow(t as f64, alpha);
        let z: f64 = StandardNormal.sample(rng);
        x += libm::sqrt(var) * z;
        positions.push(x);
    }
    positions
}
