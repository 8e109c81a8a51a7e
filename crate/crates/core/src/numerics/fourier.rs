use std::f64::consts::PI;

use num_complex::Complex64 as C64;

/// Unitary discrete Fourier transform,
/// `out[k] = N^{-1/2} Σ_n v[n]·exp(sign·2πi·kn/N)`.
///
/// Direct O(N²) evaluation. Positive and negative `sign` are mutual inverses.
pub fn dft(v: &[C64], sign: i32) -> Vec<C64> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let dir = if sign >= 0 { 1.0 } else { -1.0 };
    let norm = 1.0 / (n as f64).sqrt();
    // Twiddles indexed by (k·j mod N) keep the phase argument exact.
    let twiddle: Vec<C64> =
        (0..n).map(|m| C64::from_polar(1.0, dir * 2.0 * PI * m as f64 / n as f64)).collect();
    (0..n)
        .map(|k| {
            let acc: C64 = v.iter().enumerate().map(|(j, &x)| x * twiddle[(k * j) % n]).sum();
            acc * norm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rng;

    fn norm(v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let v = [1.0, 0.0, 0.0, 0.0].map(|x| C64::new(x, 0.0));
        for z in dft(&v, 1) {
            assert!((z - C64::new(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn inversion_and_unitarity_for_lengths_up_to_64() {
        let mut rng = Rng::new(3);
        for n in 1..=64 {
            let v: Vec<C64> = (0..n).map(|_| {
                let (a, b) = rng.gauss_pair();
                C64::new(a, b)
            }).collect();
            let f = dft(&v, 1);
            assert!((norm(&f) - norm(&v)).abs() < 1e-12, "n={n}");
            let back = dft(&f, -1);
            let err = back.iter().zip(&v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12, "n={n} err={err}");
        }
    }

    #[test]
    fn pure_tone_lands_in_one_bin() {
        let n = 8;
        let v: Vec<C64> = (0..n).map(|j| C64::from_polar(1.0, -2.0 * PI * 3.0 * j as f64 / n as f64)).collect();
        let f = dft(&v, 1);
        assert!((f[3].norm() - (n as f64).sqrt()).abs() < 1e-12);
        assert!(f.iter().enumerate().filter(|(k, _)| *k != 3).all(|(_, z)| z.norm() < 1e-12));
    }
}
