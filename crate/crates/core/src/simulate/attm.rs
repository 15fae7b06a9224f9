use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::mittag_leffler_scale;

/// Brownian motion whose diffusivity is piecewise constant over segments
/// produced by `next_segment() -> (duration, diffusivity)`. Increments over
/// [t, t+1] are Gaussian with variance 2 * integral of D.
pub(crate) fn piecewise_brownian<R, F>(length: usize, rng: &mut R, mut next_segment: F) -> Vec<f64>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> (f64, f64),
{
    let mut positions = Vec::with_capacity(length);
    positions.push(0.0);
    let (duration, mut diffusivity) = next_segment(rng);
    let mut seg_end = duration;
    let mut x = 0.0;
    for t in 0..length.saturating_sub(1) {
        let step_end = (t + 1) as f64;
        let mut cursor = t as f64;
        let mut integrated = 0.0;
        while seg_end < step_end {
            integrated += diffusivity * (seg_end - cursor);
            cursor = seg_end;
            let (duration, d) = next_segment(rng);
            seg_end += duration;
            diffusivity = d;
        }
        integrated += diffusivity * (step_end - cursor);
        let z: f64 = StandardNormal.sample(rng);
        x += libm::sqrt(2.0 * integrated) * z;
        positions.push(x);
    }
    positions
}

/// ATTM with diffusivity tied to the mean segment duration.
///
/// Each segment draws a rate R from the exponential-mixture density of the
/// Mittag-Leffler law (R = 1/W), lasts Exp(1)/R and diffuses with
/// D = Gamma(1+alpha)/2 * R. Hence E[duration | D] is proportional to 1/D,
/// P(D) ~ D^(alpha-1) for small D, and the ensemble MSD equals t^alpha
/// exactly. alpha = 1 reduces to Brownian motion with D = 1/2.
pub(crate) fn attm_positions<R: Rng + ?Sized>(alpha: f64, length: usize, rng: &mut R) -> Vec<f64> {
    let scale = libm::tgamma(1.0 + alpha) / 2.0;
    piecewise_brownian(length, rng, |rng| {
        let w = mittag_leffler_scale(alpha, rng);
        let e: f64 = Exp1.sample(rng);
        (e * w, scale / w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn single_segment_variance_is_two_d() {
        let d = 0.3;
        let mut rng = RngStream::new(2, 0).rng();
        let x = piecewise_brownian(100_001, &mut rng, |_| (f64::INFINITY, d));
        let incs: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let n = incs.len() as f64;
        let mean = incs.iter().sum::<f64>() / n;
        let var = incs.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        assert!((var / (2.0 * d) - 1.0).abs() < 0.1, "var = {var}");
    }

    #[test]
    fn step_straddling_segments_integrates_diffusivity() {
        // Segments of length 0.5 alternating D = 1 and D = 0: every unit step
        // integrates exactly 0.5, variance 1.
        let mut rng = RngStream::new(2, 1).rng();
        let mut flip = false;
        let x = piecewise_brownian(50_001, &mut rng, |_| {
            flip = !flip;
            (0.5, if flip { 1.0 } else { 0.0 })
        });
        let n = (x.len() - 1) as f64;
        let var = x.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / n;
        assert!((var - 1.0).abs() < 0.03, "var = {var}");
    }

    #[test]
    fn alpha_one_is_brownian() {
        let mut rng = RngStream::new(6, 0).rng();
        let x = attm_positions(1.0, 20_001, &mut rng);
        let n = (x.len() - 1) as f64;
        let var = x.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / n;
        assert!((var - 1.0).abs() < 0.05, "var = {var}");
    }
}
