use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eigen, kron, partial_trace, ComplexMatrix, HERMITIAN_TOL};

pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-NEGATIVE_EIGEN_TOL, 0)` count as zero.
pub const NEGATIVE_EIGEN_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-10;

/// Validated density operator with its subsystem structure.
///
/// The spectrum is computed once at construction; it doubles as the
/// positivity check and feeds every entropy functional.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    factor_dims: Vec<usize>,
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityOperator {
    pub fn new(factor_dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.contains(&0) {
            return Err(Error::validation("factor-dims", format!("factor dims {factor_dims:?} must be nonempty and positive")));
        }
        let dim: usize = factor_dims.iter().product();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::validation(
                "factor-dims",
                format!("factor dims {factor_dims:?} do not match a {}x{} matrix", matrix.rows(), matrix.cols()),
            ));
        }
        if matrix.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation("finite", "matrix has non-finite entries"));
        }
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::validation(
                "hermitian",
                format!("max |ρ - ρ†| = {:e}", matrix.hermitian_defect()),
            ));
        }
        let matrix = matrix.symmetrized();
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation("unit-trace", format!("trace = {tr}")));
        }
        let spectrum = hermitian_eigen(&matrix)?;
        let smallest = spectrum.eigenvalues[0];
        if smallest < -NEGATIVE_EIGEN_TOL {
            return Err(Error::validation("positive-semidefinite", format!("smallest eigenvalue {smallest:e}")));
        }
        Ok(Self { factor_dims, matrix, eigenvalues: spectrum.eigenvalues })
    }

    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(vec![d], matrix)
    }

    /// |ψ><ψ| for a normalized-on-construction state vector.
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::validation("state-vector", "state vector has zero or non-finite norm"));
        }
        let v: Vec<C64> = amplitudes.iter().map(|z| z / norm).collect();
        Self::single(ComplexMatrix::outer(&v))
    }

    pub fn pure_real(amplitudes: &[f64]) -> Result<Self> {
        let v: Vec<C64> = amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::pure(&v)
    }

    /// Computational basis projector |k><k|.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::validation("state-vector", format!("basis index {k} out of range {dim}")));
        }
        let mut diag = vec![0.0; dim];
        diag[k] = 1.0;
        Self::diagonal(&diag)
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::single(ComplexMatrix::from_real_diag(probs))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn purity(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).sum()
    }

    /// Same operator regarded as one factor of the total dimension.
    pub fn merged(&self) -> Self {
        Self { factor_dims: vec![self.dim()], ..self.clone() }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let factor_dims = self.factor_dims.iter().chain(&other.factor_dims).copied().collect();
        Self::new(factor_dims, kron(&self.matrix, &other.matrix))
    }

    /// Reduced operator on factor `keep`.
    pub fn reduce(&self, keep: usize) -> Result<Self> {
        if self.factor_dims.len() < 2 || keep >= self.factor_dims.len() {
            return Err(Error::validation(
                "subsystem-index",
                format!("cannot keep factor {keep} of an operator with {} factors", self.factor_dims.len()),
            ));
        }
        Self::single(partial_trace(&self.matrix, &self.factor_dims, keep)?)
    }

    /// u·ρ·u†
    pub fn apply_unitary(&self, u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() || u.rows() != self.dim() {
            return Err(Error::validation("unitary", format!("{}x{} transform on dimension {}", u.rows(), u.cols(), self.dim())));
        }
        let defect = u.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::validation("unitary", format!("max |U†U - I| = {defect:e}")));
        }
        Self::new(self.factor_dims.clone(), self.matrix.conjugate_by(u)?)
    }

    /// Tr[ρ'ρ'']
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::validation("same-space", format!("dimensions {} vs {}", self.dim(), other.dim())));
        }
        // Tr[AB] = Σ_ij A_ij B_ji
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * other.matrix[(j, i)];
            }
        }
        Ok(acc.re)
    }

    pub(crate) fn weighted_sum(parts: &[(f64, &Self)]) -> Result<Self> {
        let first = parts[0].1;
        let mut m = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            m = m.add_scaled(&rho.matrix, *w)?;
        }
        Self::new(first.factor_dims.clone(), m)
    }
}

impl PartialEq for DensityOperator {
    fn eq(&self, other: &Self) -> bool {
        self.factor_dims == other.factor_dims && self.matrix == other.matrix
    }
}
