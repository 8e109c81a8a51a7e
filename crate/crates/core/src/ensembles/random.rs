//! Seeded random ensembles for fuzzing.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::{ClassicalDistribution, DensityOperator, GaussianEnsemble};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Rng};

fn complex_gaussian(rng: &mut Rng) -> C64 {
    let (re, im) = rng.gauss_pair();
    C64::new(re, im)
}

/// Ginibre construction: `G·G† / Tr(G·G†)` with `G` a dim×rank complex Gaussian matrix.
pub fn random_density(dim: usize, rank: usize, rng: &mut Rng) -> Result<DensityOperator> {
    random_density_factored(&[dim], rank, rng)
}

/// Ginibre density operator on `dims[0] ⊗ dims[1] ⊗ …`.
pub fn random_density_factored(dims: &[usize], rank: usize, rng: &mut Rng) -> Result<DensityOperator> {
    let dim: usize = dims.iter().product();
    if rank == 0 || rank > dim {
        return Err(Error::validation("rank", format!("rank {rank} must lie in 1..={dim}")));
    }
    let entries = (0..dim * rank).map(|_| complex_gaussian(rng)).collect();
    let g = ComplexMatrix::from_vec(dim, rank, entries)?;
    let ggt = g.matmul(&g.adjoint())?;
    let tr = ggt.trace().re;
    DensityOperator::new(dims.to_vec(), ggt.scale(1.0 / tr))
}

/// Haar-style random unitary: Gram–Schmidt on the columns of a complex
/// Gaussian matrix. Column norms become the (positive) diagonal of R.
pub fn random_unitary(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be positive");
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect()).collect();
    for j in 0..dim {
        // Two passes of modified Gram–Schmidt keep the defect near machine precision.
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: C64 = done[k].iter().zip(&rest[0]).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(&done[k]) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// Flat-Dirichlet random distribution over the given axes.
pub fn random_classical(axes: &[usize], rng: &mut Rng) -> Result<ClassicalDistribution> {
    let n: usize = axes.iter().product();
    let weights: Vec<f64> = (0..n).map(|_| -(1.0 - rng.uniform()).ln()).collect();
    let total: f64 = weights.iter().sum();
    ClassicalDistribution::new(axes.to_vec(), weights.iter().map(|w| w / total).collect())
}

/// Zero-mean Gaussian with covariance `B·Bᵀ + εI`, B a 2n×2n standard normal matrix.
pub fn random_covariance(dof: usize, rng: &mut Rng) -> Result<GaussianEnsemble> {
    let m = 2 * dof;
    let b = DMatrix::from_fn(m, m, |_, _| rng.gauss_pair().0);
    let cov = &b * b.transpose() + DMatrix::identity(m, m) * 1e-3;
    GaussianEnsemble::centered(cov)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_is_pure() {
        let mut rng = Rng::new(5);
        for dim in 1..6 {
            let rho = random_density(dim, 1, &mut rng).unwrap();
            assert!((rho.purity() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn full_rank_has_full_support() {
        let rho = random_density(4, 4, &mut Rng::new(9)).unwrap();
        assert!(rho.eigenvalues()[0] > 1e-6);
    }

    #[test]
    fn rank_out_of_range() {
        let mut rng = Rng::new(0);
        assert!(random_density(3, 0, &mut rng).is_err());
        assert!(random_density(3, 4, &mut rng).is_err());
    }

    #[test]
    fn seeded_outputs_are_bit_identical() {
        let a = random_density(3, 2, &mut Rng::new(77)).unwrap();
        let b = random_density(3, 2, &mut Rng::new(77)).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_unitary(4, &mut Rng::new(77)), random_unitary(4, &mut Rng::new(77)));
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = Rng::new(12);
        let u1 = random_unitary(1, &mut rng);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-15);
        for dim in 2..=16 {
            assert!(random_unitary(dim, &mut rng).unitarity_defect() < 1e-10);
        }
    }
}
