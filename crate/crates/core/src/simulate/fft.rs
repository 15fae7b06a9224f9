use num_complex::Complex64;

/// In-place forward DFT, X_k = sum_j x_j e^(-2 pi i j k / n). `n` must be a
/// power of two.
pub(crate) fn fft_in_place(data: &mut [Complex64]) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} is not a power of two");
    if n < 2 {
        return;
    }
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let angle = -2.0 * core::f64::consts::PI / len as f64;
        let half = len / 2;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let theta = angle * k as f64;
                let w = Complex64::new(libm::cos(theta), libm::sin(theta));
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn matches_naive_dft() {
        let n = 16;
        let input: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(libm::sin(i as f64 * 0.7) + 0.1 * i as f64, libm::cos(i as f64 * 1.3)))
            .collect();
        let mut fast = input.clone();
        fft_in_place(&mut fast);
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in input.iter().enumerate() {
                let theta = -2.0 * core::f64::consts::PI * (j * k) as f64 / n as f64;
                acc += x * Complex64::new(libm::cos(theta), libm::sin(theta));
            }
            assert!((acc - fast[k]).norm_sqr() < 1e-20, "k = {k}");
        }
    }
}
