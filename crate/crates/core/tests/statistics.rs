//! Monte-Carlo checks against analytic values.

use gafdiff_core::dataset::{add_noise, displacement_std, sample_spec_record, DatasetSpec, NoiseSpec, Task};
use gafdiff_core::estimate::{ensemble_msd, estimate_alpha_single, fit_alpha};
use gafdiff_core::rng::purpose;
use gafdiff_core::simulate::{fgn_autocovariance, lw_msd_prefactor, simulate};
use gafdiff_core::{AlphaExponent, DiffusionModelKind, RngStream};
use rand_distr::{Distribution, StandardNormal};

fn alpha(v: f64) -> AlphaExponent {
    AlphaExponent::new(v).unwrap()
}

fn ensemble(model: DiffusionModelKind, a: f64, n: u64, len: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| simulate(model, alpha(a), len, &RngStream::new(seed, i)).unwrap().positions)
        .collect()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn brownian(n: usize, len: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = RngStream::new(seed, 0).rng();
    (0..n)
        .map(|_| {
            let mut x = vec![0.0; len];
            for t in 1..len {
                let z: f64 = StandardNormal.sample(&mut rng);
                x[t] = x[t - 1] + z;
            }
            x
        })
        .collect()
}

#[test]
fn brownian_ensemble_msd_is_linear() {
    let paths = brownian(100_000, 21, 11);
    let msd = ensemble_msd(&paths, 20).unwrap();
    for (t, v) in msd.lags.iter().zip(&msd.values) {
        let r = v / *t as f64;
        assert!((r - 1.0).abs() < 0.02, "t={t}: MSD/t={r}");
    }
}

#[test]
fn brownian_single_estimates_center_on_one() {
    let est: Vec<f64> = brownian(10_000, 50, 12)
        .iter()
        .map(|x| estimate_alpha_single(x).unwrap().alpha)
        .collect();
    let m = median(est);
    assert!((m - 1.0).abs() < 0.1, "median {m}");
}

#[test]
fn fbm_single_estimates_center_on_alpha() {
    let est: Vec<f64> = ensemble(DiffusionModelKind::Fbm, 0.5, 10_000, 100, 13)
        .iter()
        .map(|x| estimate_alpha_single(x).unwrap().alpha)
        .collect();
    let m = median(est);
    assert!((m - 0.5).abs() < 0.1, "median {m}");
}

#[test]
fn fbm_ensemble_fit() {
    let paths = ensemble(DiffusionModelKind::Fbm, 0.5, 10_000, 100, 14);
    let fit = fit_alpha(&ensemble_msd(&paths, 50).unwrap(), 1, 50).unwrap();
    assert!((fit.alpha - 0.5).abs() < 0.05, "alpha_hat {}", fit.alpha);
}

#[test]
fn fbm_increment_covariance() {
    for a in [0.5, 1.0, 1.5] {
        let h = a / 2.0;
        let paths = ensemble(DiffusionModelKind::Fbm, a, 1_000, 101, 15);
        let incs: Vec<Vec<f64>> = paths.iter().map(|x| x.windows(2).map(|w| w[1] - w[0]).collect()).collect();
        for k in 0..4 {
            let mut sum = 0.0;
            let mut count = 0.0;
            for d in &incs {
                for t in 0..d.len() - k {
                    sum += d[t] * d[t + k];
                    count += 1.0;
                }
            }
            let got = sum / count;
            let want = fgn_autocovariance(k, h);
            assert!((got - want).abs() < 0.03, "alpha={a} k={k}: {got} vs {want}");
        }
    }
}

#[test]
fn sbm_increment_variances() {
    let a = 0.5;
    let paths = ensemble(DiffusionModelKind::Sbm, a, 100_000, 6, 16);
    for t in 0..5 {
        let var = paths.iter().map(|x| (x[t + 1] - x[t]).powi(2)).sum::<f64>() / paths.len() as f64;
        let want = ((t + 1) as f64).powf(a) - (t as f64).powf(a);
        assert!((var / want - 1.0).abs() < 0.03, "t={t}: {var} vs {want}");
    }
}

fn check_msd(model: DiffusionModelKind, a: f64, prefactor: f64, tol: f64, seed: u64) {
    let paths = ensemble(model, a, 20_000, 51, seed);
    let msd = ensemble_msd(&paths, 50).unwrap();
    for t in [5usize, 10, 25, 50] {
        let want = prefactor * (t as f64).powf(a);
        let got = msd.value_at(t).unwrap();
        assert!((got / want - 1.0).abs() < tol, "{model} alpha={a} t={t}: {got} vs {want}");
    }
}

#[test]
fn ctrw_msd_is_mean_renewal_count() {
    for a in [0.3, 0.5, 0.8, 1.0] {
        check_msd(DiffusionModelKind::Ctrw, a, 1.0 / libm::tgamma(1.0 + a), 0.06, 17);
    }
}

#[test]
fn attm_msd_is_exact_power_law() {
    for a in [0.3, 0.5, 0.8, 1.0] {
        check_msd(DiffusionModelKind::Attm, a, 1.0, 0.06, 18);
    }
}

#[test]
fn lw_msd_follows_prefactor() {
    for a in [1.2, 1.5, 1.8] {
        check_msd(DiffusionModelKind::Lw, a, lw_msd_prefactor(alpha(a)), 0.06, 19);
    }
}

#[test]
fn sbm_and_fbm_msd_unit_prefactor() {
    for a in [0.5, 1.0, 1.5] {
        check_msd(DiffusionModelKind::Fbm, a, 1.0, 0.05, 20);
        check_msd(DiffusionModelKind::Sbm, a, 1.0, 0.05, 21);
    }
}

#[test]
fn noise_matches_requested_snr() {
    for snr in [1.0, 2.0] {
        let spec = DatasetSpec::new(Task::Classification, 100_000, 22);
        let mut ratios = Vec::new();
        for i in 0..spec.count {
            let r = sample_spec_record(&spec, i).unwrap();
            let root = r.stream();
            let clean = simulate(r.model, alpha(r.alpha), r.raw_length, &root.derive(purpose::SIMULATE)).unwrap();
            let out = add_noise(&clean, NoiseSpec::Snr(snr), &root.derive(purpose::NOISE)).unwrap();
            if !out.applied {
                continue;
            }
            let sd = displacement_std(&clean.positions).unwrap();
            ratios.extend(out.trajectory.positions.iter().zip(&clean.positions).map(|(n, c)| (n - c) / sd));
        }
        let n = ratios.len() as f64;
        let mean = ratios.iter().sum::<f64>() / n;
        let sd = (ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        assert!((sd - 1.0 / snr).abs() < 0.01, "snr={snr}: {sd}");
    }
}

#[test]
fn noiseless_leaves_trajectory_untouched() {
    let clean = simulate(DiffusionModelKind::Fbm, alpha(1.0), 30, &RngStream::new(23, 0)).unwrap();
    let out = add_noise(&clean, NoiseSpec::Noiseless, &RngStream::new(23, 1)).unwrap();
    assert_eq!(out.trajectory, clean);
    assert!(!out.applied);
}

#[test]
fn model_frequencies_are_uniform() {
    let spec = DatasetSpec::new(Task::Classification, 1_000_000, 24);
    let mut counts = [0u64; 5];
    let mut lengths = [0u64; 51];
    for i in 0..spec.count {
        let r = sample_spec_record(&spec, i).unwrap();
        counts[r.model.code() as usize] += 1;
        lengths[r.raw_length] += 1;
        assert!(r.model.accepts(r.alpha));
    }
    for c in counts {
        let f = c as f64 / spec.count as f64;
        assert!((f - 0.2).abs() < 0.01, "{counts:?}");
    }
    // 41 lengths, each about 24 390; 6 sigma is about 930
    assert!(lengths[10..=50].iter().all(|&c| c.abs_diff(1_000_000 / 41) < 930), "{lengths:?}");
}
