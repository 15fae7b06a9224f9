//! Exact fractional Gaussian noise.
//!
//! The circulant embedding (Davies-Harte) method embeds the n x n Toeplitz
//! covariance in a 2m x 2m circulant matrix, m = next power of two >= n,
//! whose eigenvalues come from one FFT. When some eigenvalue is negative the
//! embedding is not a valid covariance and the Cholesky factor of the Toeplitz
//! matrix is used instead.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::fft::fft_in_place;

/// Autocovariance of unit-variance fGn at lag k:
/// ½(|k+1|^2H − 2|k|^2H + |k−1|^2H).
pub fn fgn_autocovariance(k: usize, hurst: f64) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * (libm::pow(k + 1.0, h2) - 2.0 * libm::pow(k, h2) + libm::pow((k - 1.0).abs(), h2))
}

/// Relative tolerance below which negative circulant eigenvalues are treated
/// as rounding noise.
const EIGEN_TOLERANCE: f64 = 1e-10;

/// Draws `n` fGn samples by circulant embedding, or `None` when the embedding
/// is not nonnegative definite.
pub fn fgn_circulant<R: Rng + ?Sized>(n: usize, hurst: f64, rng: &mut R) -> Option<Vec<f64>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let m = n.next_power_of_two();
    let size = 2 * m;
    let mut row = vec![Complex64::new(0.0, 0.0); size];
    for j in 0..=m {
        row[j] = Complex64::new(fgn_autocovariance(j, hurst), 0.0);
    }
    for j in 1..m {
        row[size - j] = row[j];
    }
    fft_in_place(&mut row);
    let max = row.iter().map(|c| c.re).fold(0.0, f64::max);
    if row.iter().any(|c| c.re < -EIGEN_TOLERANCE * max) {
        return None;
    }
    let mut w: Vec<Complex64> = row
        .iter()
        .map(|eig| {
            let scale = libm::sqrt(eig.re.max(0.0) / size as f64);
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(scale * re, scale * im)
        })
        .collect();
    fft_in_place(&mut w);
    Some(w[..n].iter().map(|c| c.re).collect())
}

/// Draws `n` fGn samples through the Cholesky factor of the Toeplitz covariance.
/// O(n^3); used when circulant embedding fails.
pub fn fgn_cholesky<R: Rng + ?Sized>(n: usize, hurst: f64, rng: &mut R) -> Vec<f64> {
    let gamma: Vec<f64> = (0..n).map(|k| fgn_autocovariance(k, hurst)).collect();
    let mut lower = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = gamma[i - j];
            for k in 0..j {
                s -= lower[i * n + k] * lower[j * n + k];
            }
            lower[i * n + j] = if i == j {
                libm::sqrt(s.max(0.0))
            } else if lower[j * n + j] > 0.0 {
                s / lower[j * n + j]
            } else {
                0.0
            };
        }
    }
    let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    (0..n)
        .map(|i| (0..=i).map(|k| lower[i * n + k] * z[k]).sum())
        .collect()
}

/// `n` samples of unit-variance fractional Gaussian noise with Hurst index `hurst`.
pub fn fgn<R: Rng + ?Sized>(n: usize, hurst: f64, rng: &mut R) -> Vec<f64> {
    match fgn_circulant(n, hurst, rng) {
        Some(noise) => noise,
        None => fgn_cholesky(n, hurst, rng),
    }
}
