use nalgebra::DMatrix;

use crate::ensembles::GaussianEnsemble;
use crate::error::{Error, Result};
use crate::information::{BoundReport, Relation};
use crate::numerics::Rng;

pub const SYMPLECTIC_TOL: f64 = 1e-10;
pub const HADAMARD_TOL: f64 = 1e-12;

/// J = ⊕ [[0, 1], [−1, 0]] in mode-wise ordering.
pub fn symplectic_form(dof: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * dof, 2 * dof);
    for k in 0..dof {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    j
}

/// max |MJMᵀ − J|
pub fn symplectic_defect(m: &DMatrix<f64>) -> f64 {
    if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
        return f64::INFINITY;
    }
    let j = symplectic_form(m.nrows() / 2);
    (m * &j * m.transpose() - j).amax()
}

pub fn apply_symplectic(g: &GaussianEnsemble, m: &DMatrix<f64>) -> Result<GaussianEnsemble> {
    let defect = symplectic_defect(m);
    if defect > SYMPLECTIC_TOL * m.amax().max(1.0).powi(2) {
        return Err(Error::validation("symplectic", format!("max |MJMᵀ − J| = {defect:e}")));
    }
    g.transformed(m)
}

/// Random linear canonical map built from single-mode squeezes, rotations
/// and shears interleaved with two-mode beam splitters.
pub fn random_symplectic(dof: usize, rng: &mut Rng) -> DMatrix<f64> {
    let dim = 2 * dof;
    let mut m = DMatrix::identity(dim, dim);
    for _layer in 0..3 {
        for k in 0..dof {
            let mut local = DMatrix::identity(dim, dim);
            let theta = 2.0 * std::f64::consts::PI * rng.uniform();
            let r = (0.6 * rng.gauss_pair().0).exp();
            let shear = rng.gauss_pair().0;
            // rotation · squeeze · shear, each with unit determinant
            let (c, s) = (theta.cos(), theta.sin());
            let rot = nalgebra::Matrix2::new(c, s, -s, c);
            let sq = nalgebra::Matrix2::new(r, 0.0, 0.0, 1.0 / r);
            let sh = nalgebra::Matrix2::new(1.0, shear, 0.0, 1.0);
            let block = rot * sq * sh;
            local.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&block);
            m = local * m;
        }
        for k in 0..dof.saturating_sub(1) {
            let phi = 2.0 * std::f64::consts::PI * rng.uniform();
            let (c, s) = (phi.cos(), phi.sin());
            let mut bs = DMatrix::identity(dim, dim);
            // Same orthogonal mixing on (x_k, x_{k+1}) and (p_k, p_{k+1}).
            for off in 0..2 {
                let (a, b) = (2 * k + off, 2 * k + 2 + off);
                bs[(a, a)] = c;
                bs[(a, b)] = s;
                bs[(b, a)] = -s;
                bs[(b, b)] = c;
            }
            m = bs * m;
        }
    }
    m
}

/// Projection onto position and momentum axes mode by mode:
/// `½ln det Σ ≤ Σ_j ½ln(Σ_{x_j x_j} Σ_{p_j p_j})`, i.e. Hadamard's inequality.
pub fn marginal_volume_check(g: &GaussianEnsemble) -> BoundReport {
    let cov = g.covariance();
    let ln_diag: f64 = (0..cov.nrows()).map(|i| cov[(i, i)].ln()).sum();
    BoundReport::new(g.log_det(), Relation::AtMost, ln_diag, "nats", HADAMARD_TOL)
        .with_detail("det", g.log_det().exp())
        .with_detail("diagonal_product", ln_diag.exp())
}
