use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const SYMMETRY_TOL: f64 = 1e-12;

/// Gaussian ensemble on a 2n-dimensional phase space.
///
/// Coordinates are ordered mode by mode, `(x₁, p₁, x₂, p₂, …)`, so products
/// are block-diagonal and each mode's 2×2 block sits on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianEnsemble {
    factor_dofs: Vec<usize>,
    mean: DVector<f64>,
    covariance: DMatrix<f64>,
}

impl GaussianEnsemble {
    pub fn new(mean: DVector<f64>, covariance: DMatrix<f64>) -> Result<Self> {
        let dof = mean.len() / 2;
        Self::with_factors(vec![dof], mean, covariance)
    }

    pub fn with_factors(factor_dofs: Vec<usize>, mean: DVector<f64>, covariance: DMatrix<f64>) -> Result<Self> {
        let dof: usize = factor_dofs.iter().sum();
        if dof == 0 || factor_dofs.contains(&0) {
            return Err(Error::validation("gaussian-dof", "degrees of freedom must be positive"));
        }
        if mean.len() != 2 * dof || covariance.nrows() != 2 * dof || covariance.ncols() != 2 * dof {
            return Err(Error::validation(
                "gaussian-dof",
                format!(
                    "dof {dof} needs mean of length {} and {}x{} covariance, got {} and {}x{}",
                    2 * dof, 2 * dof, 2 * dof, mean.len(), covariance.nrows(), covariance.ncols()
                ),
            ));
        }
        if mean.iter().chain(covariance.iter()).any(|x| !x.is_finite()) {
            return Err(Error::validation("finite", "non-finite mean or covariance entry"));
        }
        let scale = covariance.amax();
        let asym = (&covariance - covariance.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::validation("covariance-symmetric", format!("max |Σ - Σᵀ| = {asym:e}")));
        }
        let covariance = (&covariance + covariance.transpose()) * 0.5;
        if covariance.clone().cholesky().is_none() {
            return Err(Error::validation("covariance-positive-definite", "covariance is not positive definite"));
        }
        Ok(Self { factor_dofs, mean, covariance })
    }

    /// Zero-mean ensemble from a covariance given as nested rows.
    pub fn centered(covariance: DMatrix<f64>) -> Result<Self> {
        let mean = DVector::zeros(covariance.nrows());
        Self::new(mean, covariance)
    }

    pub fn from_diagonal(variances: &[f64]) -> Result<Self> {
        Self::centered(DMatrix::from_diagonal(&DVector::from_row_slice(variances)))
    }

    pub fn dof(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn factor_dofs(&self) -> &[usize] {
        &self.factor_dofs
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    /// ln det Σ via Cholesky.
    pub fn log_det(&self) -> f64 {
        let chol = self.covariance.clone().cholesky().expect("validated positive definite");
        2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>()
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.mean.len(), other.mean.len());
        let mut cov = DMatrix::zeros(a + b, a + b);
        cov.view_mut((0, 0), (a, a)).copy_from(&self.covariance);
        cov.view_mut((a, a), (b, b)).copy_from(&other.covariance);
        let mean = DVector::from_iterator(a + b, self.mean.iter().chain(other.mean.iter()).copied());
        let factors = self.factor_dofs.iter().chain(&other.factor_dofs).copied().collect();
        Self::with_factors(factors, mean, cov)
    }

    /// Principal submatrix for registered factor `keep`.
    pub fn reduce(&self, keep: usize) -> Result<Self> {
        if self.factor_dofs.len() < 2 || keep >= self.factor_dofs.len() {
            return Err(Error::validation(
                "subsystem-index",
                format!("cannot keep factor {keep} of a Gaussian with {} factors", self.factor_dofs.len()),
            ));
        }
        let start = 2 * self.factor_dofs[..keep].iter().sum::<usize>();
        let len = 2 * self.factor_dofs[keep];
        let cov = self.covariance.view((start, start), (len, len)).into_owned();
        let mean = self.mean.rows(start, len).into_owned();
        Self::new(mean, cov)
    }

    /// Single-mode marginal for mode `j` (2×2 block).
    pub fn mode(&self, j: usize) -> Result<Self> {
        if j >= self.dof() {
            return Err(Error::validation("subsystem-index", format!("mode {j} out of range {}", self.dof())));
        }
        Self::new(
            self.mean.rows(2 * j, 2).into_owned(),
            self.covariance.view((2 * j, 2 * j), (2, 2)).into_owned(),
        )
    }

    /// Affine image under x ↦ Mx: mean Mμ, covariance MΣMᵀ.
    pub fn transformed(&self, m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != self.mean.len() || m.ncols() != self.mean.len() {
            return Err(Error::validation("transform-shape", "transform does not match phase-space dimension"));
        }
        Self::with_factors(self.factor_dofs.clone(), m * &self.mean, m * &self.covariance * m.transpose())
    }

    pub(crate) fn merged(&self) -> Self {
        Self { factor_dofs: vec![self.dof()], ..self.clone() }
    }
}
