//! JSON documents for ensembles, transforms and volume contexts.
//!
//! Complex entries are `[re, im]` pairs. Conversion back to library types
//! goes through the ordinary constructors, so a document is validated
//! exactly like an in-memory value.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{ClassicalDistribution, DensityOperator, Ensemble, GaussianEnsemble, SignalEnsemble, Transform};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::semiclassical::OuProcess;
use crate::volume::VolumeContext;

pub type ComplexRows = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum EnsembleDocument {
    Classical {
        axes: Vec<usize>,
        probs: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Quantum {
        factor_dims: Vec<usize>,
        matrix: ComplexRows,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Gaussian {
        mean: Vec<f64>,
        covariance: Vec<Vec<f64>>,
        /// Degrees of freedom per factor; one factor holding every mode if absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dof: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Signal {
        states: Vec<EnsembleDocument>,
        priors: Vec<f64>,
    },
}

/// A parsed document: either one ensemble or a signal ensemble.
#[derive(Clone, Debug, PartialEq)]
pub enum Loaded {
    Ensemble { ensemble: Ensemble, labels: Option<Vec<String>> },
    Signal(SignalEnsemble),
}

impl Loaded {
    pub fn into_ensemble(self) -> Result<(Ensemble, Option<Vec<String>>)> {
        match self {
            Loaded::Ensemble { ensemble, labels } => Ok((ensemble, labels)),
            Loaded::Signal(_) => Err(Error::validation("document-kind", "expected a single ensemble, found a signal ensemble")),
        }
    }

    pub fn into_signal(self) -> Result<SignalEnsemble> {
        match self {
            Loaded::Signal(s) => Ok(s),
            Loaded::Ensemble { .. } => Err(Error::validation("document-kind", "expected a signal ensemble")),
        }
    }
}

pub fn complex_to_rows(m: &ComplexMatrix) -> ComplexRows {
    (0..m.rows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn rows_to_complex(rows: &ComplexRows) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
    ComplexMatrix::from_rows(&rows)
}

pub fn real_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn rows_to_real(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::validation("matrix-shape", "rows have different lengths"));
    }
    Ok(DMatrix::from_row_iterator(n, cols, rows.iter().flatten().copied()))
}

impl EnsembleDocument {
    pub fn from_ensemble(e: &Ensemble) -> Self {
        match e {
            Ensemble::Classical(c) => {
                EnsembleDocument::Classical { axes: c.axes().to_vec(), probs: c.probs().to_vec(), labels: None }
            }
            Ensemble::Quantum(q) => EnsembleDocument::Quantum {
                factor_dims: q.factor_dims().to_vec(),
                matrix: complex_to_rows(q.matrix()),
                labels: None,
            },
            Ensemble::Gaussian(g) => EnsembleDocument::Gaussian {
                mean: g.mean().iter().copied().collect(),
                covariance: real_to_rows(g.covariance()),
                dof: Some(g.factor_dofs().to_vec()),
                labels: None,
            },
        }
    }

    pub fn from_signal(s: &SignalEnsemble) -> Self {
        EnsembleDocument::Signal {
            states: s.states().iter().map(Self::from_ensemble).collect(),
            priors: s.priors().to_vec(),
        }
    }

    pub fn load(&self) -> Result<Loaded> {
        match self {
            EnsembleDocument::Signal { states, priors } => {
                let states = states
                    .iter()
                    .map(|d| d.load()?.into_ensemble().map(|(e, _)| e))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Loaded::Signal(SignalEnsemble::new(states, priors.clone())?))
            }
            EnsembleDocument::Classical { axes, probs, labels } => Ok(Loaded::Ensemble {
                ensemble: ClassicalDistribution::new(axes.clone(), probs.clone())?.into(),
                labels: labels.clone(),
            }),
            EnsembleDocument::Quantum { factor_dims, matrix, labels } => Ok(Loaded::Ensemble {
                ensemble: DensityOperator::new(factor_dims.clone(), rows_to_complex(matrix)?)?.into(),
                labels: labels.clone(),
            }),
            EnsembleDocument::Gaussian { mean, covariance, dof, labels } => {
                let cov = rows_to_real(covariance)?;
                let mean = DVector::from_column_slice(mean);
                let g = match dof {
                    Some(d) => GaussianEnsemble::with_factors(d.clone(), mean, cov)?,
                    None => GaussianEnsemble::new(mean, cov)?,
                };
                Ok(Loaded::Ensemble { ensemble: g.into(), labels: labels.clone() })
            }
        }
    }

    pub fn to_ensemble(&self) -> Result<Ensemble> {
        self.load()?.into_ensemble().map(|(e, _)| e)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::validation("document-parse", e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TransformDocument {
    Unitary(ComplexRows),
    Permutation(Vec<usize>),
    Symplectic(Vec<Vec<f64>>),
}

impl TransformDocument {
    pub fn from_transform(t: &Transform) -> Self {
        match t {
            Transform::Unitary(u) => TransformDocument::Unitary(complex_to_rows(u)),
            Transform::Permutation(p) => TransformDocument::Permutation(p.clone()),
            Transform::Symplectic(m) => TransformDocument::Symplectic(real_to_rows(m)),
        }
    }

    pub fn to_transform(&self) -> Result<Transform> {
        Ok(match self {
            TransformDocument::Unitary(rows) => Transform::Unitary(rows_to_complex(rows)?),
            TransformDocument::Permutation(p) => Transform::Permutation(p.clone()),
            TransformDocument::Symplectic(rows) => Transform::Symplectic(rows_to_real(rows)?),
        })
    }
}

/// Drift and diffusion matrices of a linear diffusion process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessDocument {
    /// Zero drift if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drift: Option<Vec<Vec<f64>>>,
    pub diffusion: Vec<Vec<f64>>,
}

impl ProcessDocument {
    pub fn to_process(&self) -> Result<OuProcess> {
        let diffusion = rows_to_real(&self.diffusion)?;
        match &self.drift {
            Some(a) => OuProcess::new(rows_to_real(a)?, diffusion),
            None => OuProcess::diffusion_only(diffusion),
        }
    }
}

/// Reads and parses any JSON document; `-` reads standard input.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::validation("document-read", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::validation("document-parse", format!("{}: {e}", path.display())))
}

/// Serialized [`VolumeContext`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDocument {
    #[serde(default)]
    pub k: BTreeMap<String, f64>,
    /// Constant for unregistered spaces; `null` makes them an error.
    #[serde(default = "one")]
    pub default_k: Option<f64>,
    #[serde(default = "unit")]
    pub hbar: f64,
}

fn one() -> Option<f64> {
    Some(1.0)
}

fn unit() -> f64 {
    1.0
}

impl ContextDocument {
    pub fn from_context(ctx: &VolumeContext) -> Self {
        Self { k: ctx.k_constants().clone(), default_k: ctx.default_k(), hbar: ctx.hbar() }
    }

    pub fn to_context(&self) -> Result<VolumeContext> {
        let mut ctx = match self.default_k {
            Some(k) => VolumeContext::new().with_default_k(k)?,
            None => VolumeContext::strict(),
        };
        ctx = ctx.with_hbar(self.hbar)?;
        for (label, &k) in &self.k {
            ctx = ctx.with_k(label.clone(), k)?;
        }
        Ok(ctx)
    }
}
