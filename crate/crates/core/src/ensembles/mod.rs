//! Classical, quantum and Gaussian ensembles.
//!
//! Every ensemble records its subsystem structure explicitly: axes for
//! classical tensors, factor dimensions for density operators, and degrees
//! of freedom per factor for Gaussians. Composition (`product`) appends
//! factors and reduction (`reduce`) keeps a single one.

mod classical;
mod gaussian;
mod quantum;
mod random;

use std::fmt;

pub use classical::{ClassicalDistribution, NORMALIZATION_TOL, ROUNDOFF_NEGATIVE};
pub use gaussian::{GaussianEnsemble, SYMMETRY_TOL};
pub use quantum::{DensityOperator, NEGATIVE_EIGEN_TOL, TRACE_TOL, UNITARY_TOL};
pub use random::{random_classical, random_covariance, random_density, random_density_factored, random_unitary};

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Classical,
    Quantum,
    Gaussian,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Classical => "classical",
            Kind::Quantum => "quantum",
            Kind::Gaussian => "gaussian",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ensemble {
    Classical(ClassicalDistribution),
    Quantum(DensityOperator),
    Gaussian(GaussianEnsemble),
}

impl From<ClassicalDistribution> for Ensemble {
    fn from(d: ClassicalDistribution) -> Self {
        Ensemble::Classical(d)
    }
}

impl From<DensityOperator> for Ensemble {
    fn from(d: DensityOperator) -> Self {
        Ensemble::Quantum(d)
    }
}

impl From<GaussianEnsemble> for Ensemble {
    fn from(g: GaussianEnsemble) -> Self {
        Ensemble::Gaussian(g)
    }
}

fn kind_mismatch(a: Kind, b: Kind) -> Error {
    Error::validation("same-kind", format!("cannot combine {a} with {b} ensembles"))
}

impl Ensemble {
    pub fn kind(&self) -> Kind {
        match self {
            Ensemble::Classical(_) => Kind::Classical,
            Ensemble::Quantum(_) => Kind::Quantum,
            Ensemble::Gaussian(_) => Kind::Gaussian,
        }
    }

    pub fn factor_count(&self) -> usize {
        match self {
            Ensemble::Classical(c) => c.axes().len(),
            Ensemble::Quantum(q) => q.factor_dims().len(),
            Ensemble::Gaussian(g) => g.factor_dofs().len(),
        }
    }

    /// Per-factor sizes: axis lengths, Hilbert dimensions, or degrees of freedom.
    pub fn factor_sizes(&self) -> Vec<usize> {
        match self {
            Ensemble::Classical(c) => c.axes().to_vec(),
            Ensemble::Quantum(q) => q.factor_dims().to_vec(),
            Ensemble::Gaussian(g) => g.factor_dofs().to_vec(),
        }
    }

    /// Labels of the elementary spaces this ensemble lives on, used to look
    /// up volume constants. Gaussian ensembles contribute one label per mode.
    pub fn space_labels(&self) -> Vec<String> {
        match self {
            Ensemble::Classical(c) => c.axes().iter().map(|d| format!("classical:{d}")).collect(),
            Ensemble::Quantum(q) => q.factor_dims().iter().map(|d| format!("quantum:{d}")).collect(),
            Ensemble::Gaussian(g) => vec!["gaussian:mode".to_string(); g.dof()],
        }
    }

    /// The same ensemble regarded as a single factor.
    pub fn merged(&self) -> Ensemble {
        match self {
            Ensemble::Classical(c) => c.flattened().into(),
            Ensemble::Quantum(q) => q.merged().into(),
            Ensemble::Gaussian(g) => g.merged().into(),
        }
    }

    /// Uncorrelated joint ensemble.
    pub fn product(&self, other: &Ensemble) -> Result<Ensemble> {
        match (self, other) {
            (Ensemble::Classical(a), Ensemble::Classical(b)) => Ok(a.product(b).into()),
            (Ensemble::Quantum(a), Ensemble::Quantum(b)) => Ok(a.product(b)?.into()),
            (Ensemble::Gaussian(a), Ensemble::Gaussian(b)) => Ok(a.product(b)?.into()),
            (a, b) => Err(kind_mismatch(a.kind(), b.kind())),
        }
    }

    /// Marginal / reduced / projected ensemble on factor `keep`.
    pub fn reduce(&self, keep: usize) -> Result<Ensemble> {
        match self {
            Ensemble::Classical(c) => Ok(c.marginal(keep)?.into()),
            Ensemble::Quantum(q) => Ok(q.reduce(keep)?.into()),
            Ensemble::Gaussian(g) => Ok(g.reduce(keep)?.into()),
        }
    }

    /// Tr[ρ'ρ''] (quantum) or Σ p'p'' (classical).
    pub fn overlap(&self, other: &Ensemble) -> Result<f64> {
        match (self, other) {
            (Ensemble::Classical(a), Ensemble::Classical(b)) => a.overlap(b),
            (Ensemble::Quantum(a), Ensemble::Quantum(b)) => a.overlap(b),
            (Ensemble::Gaussian(_), Ensemble::Gaussian(_)) => {
                Err(Error::Unsupported("overlap of Gaussian ensembles".into()))
            }
            (a, b) => Err(kind_mismatch(a.kind(), b.kind())),
        }
    }

    /// Largest entrywise difference to an ensemble of the same kind and shape.
    pub fn max_abs_diff(&self, other: &Ensemble) -> Option<f64> {
        match (self, other) {
            (Ensemble::Classical(a), Ensemble::Classical(b)) if a.outcomes() == b.outcomes() => Some(
                a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max),
            ),
            (Ensemble::Quantum(a), Ensemble::Quantum(b)) if a.dim() == b.dim() => {
                Some(a.matrix().max_abs_diff(b.matrix()))
            }
            (Ensemble::Gaussian(a), Ensemble::Gaussian(b)) if a.dof() == b.dof() => {
                Some((a.covariance() - b.covariance()).amax().max((a.mean() - b.mean()).amax()))
            }
            _ => None,
        }
    }

    pub fn as_quantum(&self) -> Option<&DensityOperator> {
        match self {
            Ensemble::Quantum(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_classical(&self) -> Option<&ClassicalDistribution> {
        match self {
            Ensemble::Classical(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_gaussian(&self) -> Option<&GaussianEnsemble> {
        match self {
            Ensemble::Gaussian(g) => Some(g),
            _ => None,
        }
    }
}

/// A canonical transformation in one of the supported realizations.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    Unitary(ComplexMatrix),
    /// Relabeling of flattened classical outcomes: outcome `i` moves to `perm[i]`.
    Permutation(Vec<usize>),
    /// Linear symplectic map on Gaussian phase space.
    Symplectic(nalgebra::DMatrix<f64>),
}

impl Transform {
    pub fn apply(&self, e: &Ensemble) -> Result<Ensemble> {
        match (self, e) {
            (Transform::Unitary(u), Ensemble::Quantum(q)) => Ok(q.apply_unitary(u)?.into()),
            (Transform::Permutation(p), Ensemble::Classical(c)) => Ok(c.permuted(p)?.into()),
            (Transform::Symplectic(m), Ensemble::Gaussian(g)) => {
                Ok(crate::semiclassical::apply_symplectic(g, m)?.into())
            }
            (t, e) => Err(Error::validation(
                "transform-kind",
                format!("{} transform cannot act on a {} ensemble", t.name(), e.kind()),
            )),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Transform::Unitary(_) => "unitary",
            Transform::Permutation(_) => "permutation",
            Transform::Symplectic(_) => "symplectic",
        }
    }
}

/// Signal states of one kind and shape, with prior probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalEnsemble {
    states: Vec<Ensemble>,
    priors: Vec<f64>,
}

impl SignalEnsemble {
    pub fn new(states: Vec<Ensemble>, priors: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::validation("signal-nonempty", "signal ensemble has no states"));
        }
        if states.len() != priors.len() {
            return Err(Error::validation(
                "signal-priors",
                format!("{} states but {} priors", states.len(), priors.len()),
            ));
        }
        // Reuse the classical validation for the prior vector.
        let priors = ClassicalDistribution::from_probs(priors)
            .map_err(|e| match e {
                Error::Validation { detail, .. } => Error::validation("signal-priors", detail),
                other => other,
            })?
            .probs()
            .to_vec();
        let kind = states[0].kind();
        let shape = shape_of(&states[0]);
        for (i, s) in states.iter().enumerate() {
            if s.kind() != kind {
                return Err(kind_mismatch(kind, s.kind()));
            }
            if shape_of(s) != shape {
                return Err(Error::validation("signal-dims", format!("state {i} has a different dimension")));
            }
        }
        Ok(Self { states, priors })
    }

    pub fn states(&self) -> &[Ensemble] {
        &self.states
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn kind(&self) -> Kind {
        self.states[0].kind()
    }
}

fn shape_of(e: &Ensemble) -> usize {
    match e {
        Ensemble::Classical(c) => c.outcomes(),
        Ensemble::Quantum(q) => q.dim(),
        Ensemble::Gaussian(g) => g.dof(),
    }
}

/// Σ pᵢ ρᵢ. Gaussian mixtures are not Gaussian and are rejected.
pub fn mix(signals: &SignalEnsemble) -> Result<Ensemble> {
    weighted_mix(signals.states(), signals.priors())
}

pub(crate) fn weighted_mix(states: &[Ensemble], weights: &[f64]) -> Result<Ensemble> {
    match &states[0] {
        Ensemble::Classical(_) => {
            let parts: Vec<_> = weights.iter().zip(states).map(|(&w, s)| (w, s.as_classical().expect("same kind"))).collect();
            Ok(ClassicalDistribution::weighted_sum(&parts)?.into())
        }
        Ensemble::Quantum(_) => {
            let parts: Vec<_> = weights.iter().zip(states).map(|(&w, s)| (w, s.as_quantum().expect("same kind"))).collect();
            Ok(DensityOperator::weighted_sum(&parts)?.into())
        }
        Ensemble::Gaussian(_) => Err(Error::Unsupported("a mixture of Gaussian ensembles is not Gaussian".into())),
    }
}
