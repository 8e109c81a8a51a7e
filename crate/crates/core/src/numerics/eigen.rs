//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq`, then applies
//! the ordinary real Jacobi rotation to the resulting real symmetric 2×2
//! block. Sweeps repeat until the off-diagonal Frobenius norm falls below
//! `1e-13 · ‖m‖_F`.

use num_complex::Complex64 as C64;

use super::matrix::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// U·diag(λ)·U†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = &self.eigenvectors;
        let n = self.eigenvalues.len();
        let mut scaled = u.clone();
        for i in 0..n {
            for (j, &lam) in self.eigenvalues.iter().enumerate() {
                scaled[(i, j)] *= lam;
            }
        }
        scaled.matmul(&u.adjoint()).expect("square factors")
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::validation(
            "square",
            format!("eigensolver needs a square matrix, got {}x{}", m.rows(), m.cols()),
        ));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::validation(
            "hermitian",
            format!("max |M - M†| = {:e} exceeds {HERMITIAN_TOL:e}·max|M|", m.hermitian_defect()),
        ));
    }
    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * m.frobenius_norm();

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {:e})",
                off_diagonal_norm(&a)
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            eigenvectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Annihilates `a[p][q]` with `J = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]`, `A ← J†AJ`, `V ← VJ`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    let jpp = C64::new(c, 0.0);
    let jpq = phase * s;
    let jqp = -phase.conj() * s;
    let jqq = C64::new(c, 0.0);

    let n = a.rows();
    // Columns: A ← A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    // Rows: A ← J† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rng;

    fn random_hermitian(n: usize, rng: &mut Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (re, im) = rng.gauss_pair();
                m[(i, j)] = C64::new(re, im);
            }
        }
        m.symmetrized()
    }

    #[test]
    fn identity_spectrum() {
        let s = hermitian_eigen(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_input_is_sorted_with_permuted_basis() {
        let s = hermitian_eigen(&ComplexMatrix::from_real_diag(&[2.0, -1.0])).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 2.0]);
        let perm = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(s.eigenvectors, perm);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        // det(X - λI) = λ² - 1
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let s = hermitian_eigen(&x).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pauli_y_eigenvalues() {
        let y = ComplexMatrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eigen(&y).unwrap();
        assert!((s.eigenvalues[0] + 1.0).abs() < 1e-15 && (s.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(s.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstruction_and_orthonormality() {
        let mut rng = Rng::new(11);
        for n in [1, 2, 3, 5, 8, 16, 32] {
            let m = random_hermitian(n, &mut rng);
            let s = hermitian_eigen(&m).unwrap();
            assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10, "n={n}");
            assert!(s.eigenvectors.unitarity_defect() <= 1e-10, "n={n}");
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let s = hermitian_eigen(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        let err = hermitian_eigen(&ComplexMatrix::zeros(2, 3)).unwrap_err();
        assert!(matches!(err, Error::Validation { check: "square", .. }));
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        let err = hermitian_eigen(&m).unwrap_err();
        assert!(matches!(err, Error::Validation { check: "hermitian", .. }));
    }
}
