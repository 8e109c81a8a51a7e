use crate::error::{Error, Result};

/// Entries in `[-ROUNDOFF_NEGATIVE, 0)` are treated as roundoff and clipped.
pub const ROUNDOFF_NEGATIVE: f64 = 1e-14;
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Probability tensor over a product of finite axes, flattened row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalDistribution {
    axes: Vec<usize>,
    probs: Vec<f64>,
}

impl ClassicalDistribution {
    pub fn new(axes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if axes.is_empty() || axes.contains(&0) {
            return Err(Error::validation("classical-axes", format!("axis sizes {axes:?} must be nonempty and positive")));
        }
        let outcomes: usize = axes.iter().product();
        if outcomes != probs.len() {
            return Err(Error::validation(
                "classical-axes",
                format!("axes {axes:?} need {outcomes} probabilities, got {}", probs.len()),
            ));
        }
        let mut probs = probs;
        let mut clipped = false;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::validation("classical-nonnegative", format!("entry {i} is not finite")));
            }
            if *p < -ROUNDOFF_NEGATIVE {
                return Err(Error::validation("classical-nonnegative", format!("entry {i} = {p:e} is negative")));
            }
            if *p < 0.0 {
                *p = 0.0;
                clipped = true;
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::validation("classical-normalized", format!("probabilities sum to {total}")));
        }
        if clipped {
            probs.iter_mut().for_each(|p| *p /= total);
        }
        Ok(Self { axes, probs })
    }

    /// Single-axis distribution.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Self::new(vec![probs.len()], probs)
    }

    pub fn uniform(axes: Vec<usize>) -> Result<Self> {
        let n: usize = axes.iter().product();
        Self::new(axes, vec![1.0 / n as f64; n])
    }

    pub fn point_mass(axes: Vec<usize>, outcome: usize) -> Result<Self> {
        let n: usize = axes.iter().product();
        if outcome >= n {
            return Err(Error::validation("classical-axes", format!("outcome {outcome} out of range {n}")));
        }
        let mut probs = vec![0.0; n];
        probs[outcome] = 1.0;
        Self::new(axes, probs)
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn outcomes(&self) -> usize {
        self.probs.len()
    }

    /// Same probabilities viewed as a single flat axis.
    pub fn flattened(&self) -> Self {
        Self { axes: vec![self.outcomes()], probs: self.probs.clone() }
    }

    /// Outer product; axes are concatenated.
    pub fn product(&self, other: &Self) -> Self {
        let probs = self
            .probs
            .iter()
            .flat_map(|&a| other.probs.iter().map(move |&b| a * b))
            .collect();
        let axes = self.axes.iter().chain(&other.axes).copied().collect();
        Self { axes, probs }
    }

    /// Marginal on axis `keep`.
    pub fn marginal(&self, keep: usize) -> Result<Self> {
        if self.axes.len() < 2 || keep >= self.axes.len() {
            return Err(Error::validation(
                "subsystem-index",
                format!("cannot keep axis {keep} of a distribution with {} axes", self.axes.len()),
            ));
        }
        let dk = self.axes[keep];
        let inner: usize = self.axes[keep + 1..].iter().product();
        let mut out = vec![0.0; dk];
        for (flat, &p) in self.probs.iter().enumerate() {
            out[(flat / inner) % dk] += p;
        }
        Ok(Self { axes: vec![dk], probs: out })
    }

    /// Relabels flattened outcome `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.outcomes();
        if perm.len() != n {
            return Err(Error::validation("permutation", format!("permutation of length {} on {n} outcomes", perm.len())));
        }
        let mut seen = vec![false; n];
        for &target in perm {
            if target >= n || std::mem::replace(&mut seen[target], true) {
                return Err(Error::validation("permutation", format!("{perm:?} is not a bijection")));
            }
        }
        let mut probs = vec![0.0; n];
        for (src, &dst) in perm.iter().enumerate() {
            probs[dst] = self.probs[src];
        }
        Ok(Self { axes: self.axes.clone(), probs })
    }

    /// Σ p'·p''
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        if self.axes != other.axes {
            return Err(Error::validation("same-space", format!("axes {:?} vs {:?}", self.axes, other.axes)));
        }
        Ok(self.probs.iter().zip(&other.probs).map(|(a, b)| a * b).sum())
    }

    pub(crate) fn weighted_sum(parts: &[(f64, &Self)]) -> Result<Self> {
        let axes = parts[0].1.axes.clone();
        let mut probs = vec![0.0; parts[0].1.outcomes()];
        for (w, d) in parts {
            for (acc, p) in probs.iter_mut().zip(&d.probs) {
                *acc += w * p;
            }
        }
        Self::new(axes, probs)
    }
}
