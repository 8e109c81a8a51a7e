//! Executable checks of the four volume properties and seeded fuzzers.
//!
//! Every check reports a signed violation, positive when the property fails,
//! together with a serialized witness that reproduces the worst case.
//!
//! | id    | property                                       |
//! |-------|------------------------------------------------|
//! | i     | invariance under canonical transformations     |
//! | ii    | `V(ρ₁⊗ρ₂) = V(ρ₁)V(ρ₂)`                         |
//! | iii   | `V(ρ₁₂) ≤ V(ρ₁)V(ρ₂)`                           |
//! | iv    | equal mixture of disjoint equal volumes is `2V` |
//! | renyi | iii with Rényi volumes, expected to fail       |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cli::document::{ContextDocument, EnsembleDocument, TransformDocument};
use crate::ensembles::{
    random_classical, random_density_factored, random_unitary, weighted_mix, ClassicalDistribution,
    DensityOperator, Ensemble, Kind, Transform,
};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Rng};
use crate::volume::{entropy, ln_volume, renyi_volume, VolumeContext};

/// Relative tolerance shared by all property checks.
pub const AXIOM_TOL: f64 = 1e-9;
/// Largest overlap two inputs of the uniformity check may have.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Points in the default uniformity grid.
pub const UNIFORMITY_GRID: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "i")]
    Invariance,
    #[serde(rename = "ii")]
    Cartesian,
    #[serde(rename = "iii")]
    Projection,
    #[serde(rename = "iv")]
    Uniformity,
    #[serde(rename = "renyi")]
    RenyiProjection,
}

impl AxiomId {
    pub const ALL: [AxiomId; 5] =
        [AxiomId::Invariance, AxiomId::Cartesian, AxiomId::Projection, AxiomId::Uniformity, AxiomId::RenyiProjection];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomId::Invariance => "i",
            AxiomId::Cartesian => "ii",
            AxiomId::Projection => "iii",
            AxiomId::Uniformity => "iv",
            AxiomId::RenyiProjection => "renyi",
        }
    }

    /// What a correct implementation should observe.
    pub fn expectation(self) -> Expectation {
        match self {
            AxiomId::RenyiProjection => Expectation::Violated,
            _ => Expectation::Holds,
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::validation("axiom-id", format!("unknown axiom `{s}`; expected i, ii, iii, iv or renyi")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Violated,
}

/// Inputs that reproduce a reported violation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Witness {
    Invariance { ensemble: EnsembleDocument, transform: TransformDocument },
    Cartesian { first: EnsembleDocument, second: EnsembleDocument },
    Projection { joint: EnsembleDocument },
    Uniformity { first: EnsembleDocument, second: EnsembleDocument, lambda: f64 },
    Renyi { joint: EnsembleDocument, alpha: f64 },
}

impl Witness {
    /// Signed violation of the witnessed property.
    pub fn violation(&self, ctx: &VolumeContext) -> Result<f64> {
        match self {
            Witness::Invariance { ensemble, transform } => {
                let e = ensemble.to_ensemble()?;
                Ok(invariance_violation(&e, &transform.to_transform()?, ctx)?.0)
            }
            Witness::Cartesian { first, second } => {
                Ok(cartesian_violation(&first.to_ensemble()?, &second.to_ensemble()?, ctx)?.0)
            }
            Witness::Projection { joint } => Ok(projection_violation(&joint.to_ensemble()?, ctx)?.0),
            Witness::Uniformity { first, second, lambda } => {
                let (e1, e2) = (first.to_ensemble()?, second.to_ensemble()?);
                let v1 = volume_of(&e1, ctx)?;
                Ok(mixture_volume(&e1, &e2, *lambda, ctx)? - 2.0 * v1)
            }
            Witness::Renyi { joint, alpha } => Ok(renyi_violation(&joint.to_ensemble()?, *alpha, ctx)?.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub trials: usize,
    /// Trials whose violation exceeded the tolerance.
    pub failures: usize,
    /// Signed; positive means the property failed. Absent for zero trials.
    pub worst_violation: Option<f64>,
    /// Relative tolerance applied per trial.
    pub tolerance: f64,
    pub expectation: Expectation,
    /// Whether the observed outcome matches the expectation.
    pub passed: bool,
    pub witness: Option<Witness>,
    pub seed: Option<u64>,
    pub context: ContextDocument,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
}

impl AxiomReport {
    /// Recomputes the worst violation from the witness.
    pub fn reevaluate(&self) -> Result<Option<f64>> {
        match &self.witness {
            None => Ok(None),
            Some(w) => Ok(Some(w.violation(&self.context.to_context()?)?)),
        }
    }

    /// Whether any trial violated the property beyond tolerance.
    pub fn violation_found(&self) -> bool {
        self.failures > 0
    }
}

/// Worst-case bookkeeping across trials.
struct Tracker {
    axiom: AxiomId,
    trials: usize,
    failures: usize,
    worst: Option<(f64, f64, Witness)>,
    details: BTreeMap<String, f64>,
}

impl Tracker {
    fn new(axiom: AxiomId) -> Self {
        Self { axiom, trials: 0, failures: 0, worst: None, details: BTreeMap::new() }
    }

    /// `key` orders trials; the largest key is kept as the witness.
    fn record(&mut self, violation: f64, key: f64, failed: bool, witness: impl FnOnce() -> Witness) {
        self.trials += 1;
        if failed {
            self.failures += 1;
        }
        if self.worst.as_ref().is_none_or(|(k, _, _)| key > *k) {
            self.worst = Some((key, violation, witness()));
        }
    }

    fn finish(self, seed: Option<u64>, ctx: &VolumeContext) -> AxiomReport {
        let expectation = self.axiom.expectation();
        let passed = match expectation {
            Expectation::Holds => self.failures == 0,
            Expectation::Violated => self.failures > 0,
        };
        let (worst_violation, witness) = match self.worst {
            Some((_, v, w)) => (Some(v), Some(w)),
            None => (None, None),
        };
        AxiomReport {
            axiom: self.axiom,
            trials: self.trials,
            failures: self.failures,
            worst_violation,
            tolerance: AXIOM_TOL,
            expectation,
            passed,
            witness,
            seed,
            context: ContextDocument::from_context(ctx),
            details: self.details,
        }
    }
}

fn volume_of(e: &Ensemble, ctx: &VolumeContext) -> Result<f64> {
    Ok(ln_volume(e, ctx)?.exp())
}

fn doc(e: &Ensemble) -> EnsembleDocument {
    EnsembleDocument::from_ensemble(e)
}

/// (|V(Te) − V(e)|, V(e))
fn invariance_violation(e: &Ensemble, t: &Transform, ctx: &VolumeContext) -> Result<(f64, f64)> {
    let v = volume_of(e, ctx)?;
    let vt = volume_of(&t.apply(e)?, ctx)?;
    Ok(((vt - v).abs(), v))
}

/// (V(e1⊗e2) − V(e1)V(e2), V(e1)V(e2))
fn cartesian_violation(e1: &Ensemble, e2: &Ensemble, ctx: &VolumeContext) -> Result<(f64, f64)> {
    let joint = volume_of(&e1.product(e2)?, ctx)?;
    let split = volume_of(e1, ctx)? * volume_of(e2, ctx)?;
    Ok((joint - split, split))
}

fn two_factor_marginals(e: &Ensemble) -> Result<(Ensemble, Ensemble)> {
    if e.factor_count() != 2 {
        return Err(Error::validation(
            "two-factors",
            format!("projection checks need exactly two factors, found {}", e.factor_count()),
        ));
    }
    Ok((e.reduce(0)?, e.reduce(1)?))
}

/// (V(e12) − V(e1)V(e2), V(e1)V(e2))
fn projection_violation(e12: &Ensemble, ctx: &VolumeContext) -> Result<(f64, f64)> {
    let (m1, m2) = two_factor_marginals(e12)?;
    let split = volume_of(&m1, ctx)? * volume_of(&m2, ctx)?;
    Ok((volume_of(e12, ctx)? - split, split))
}

fn renyi_violation(e12: &Ensemble, alpha: f64, ctx: &VolumeContext) -> Result<(f64, f64)> {
    let (m1, m2) = two_factor_marginals(e12)?;
    let split = renyi_volume(&m1, alpha, ctx)? * renyi_volume(&m2, alpha, ctx)?;
    Ok((renyi_volume(e12, alpha, ctx)? - split, split))
}

fn mixture_volume(e1: &Ensemble, e2: &Ensemble, lambda: f64, ctx: &VolumeContext) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::validation("lambda-range", format!("mixing weight {lambda} outside [0, 1]")));
    }
    volume_of(&weighted_mix(&[e1.clone(), e2.clone()], &[lambda, 1.0 - lambda])?, ctx)
}

pub fn check_invariance(e: &Ensemble, t: &Transform, ctx: &VolumeContext) -> Result<AxiomReport> {
    let (v, scale) = invariance_violation(e, t, ctx)?;
    let mut tr = Tracker::new(AxiomId::Invariance);
    tr.record(v, v / scale, v > AXIOM_TOL * scale, || Witness::Invariance {
        ensemble: doc(e),
        transform: TransformDocument::from_transform(t),
    });
    Ok(tr.finish(None, ctx))
}

pub fn check_cartesian(e1: &Ensemble, e2: &Ensemble, ctx: &VolumeContext) -> Result<AxiomReport> {
    let (v, scale) = cartesian_violation(e1, e2, ctx)?;
    let mut tr = Tracker::new(AxiomId::Cartesian);
    tr.record(v, v.abs() / scale, v.abs() > AXIOM_TOL * scale, || Witness::Cartesian {
        first: doc(e1),
        second: doc(e2),
    });
    Ok(tr.finish(None, ctx))
}

pub fn check_projection(e12: &Ensemble, ctx: &VolumeContext) -> Result<AxiomReport> {
    let (v, scale) = projection_violation(e12, ctx)?;
    let mut tr = Tracker::new(AxiomId::Projection);
    tr.record(v, v / scale, v > AXIOM_TOL * scale, || Witness::Projection { joint: doc(e12) });
    Ok(tr.finish(None, ctx))
}

/// Evenly spaced grid on [0, 1].
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.5],
        n => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

/// Sweeps `V(λe1 + (1−λ)e2)` over `lambdas`. Passes when the maximum sits at
/// λ = ½ to within grid resolution, no value exceeds `2V(e1)`, and each
/// mixture entropy matches `H(λ) + λS₁ + (1−λ)S₂`.
pub fn check_uniformity(e1: &Ensemble, e2: &Ensemble, lambdas: &[f64], ctx: &VolumeContext) -> Result<AxiomReport> {
    if lambdas.is_empty() {
        return Err(Error::validation("lambda-range", "the λ grid is empty"));
    }
    let overlap = e1.overlap(e2)?;
    if overlap > ORTHOGONALITY_TOL {
        return Err(Error::validation("orthogonal-support", format!("inputs overlap by {overlap:e}")));
    }
    let v1 = volume_of(e1, ctx)?;
    let v2 = volume_of(e2, ctx)?;
    if (v1 - v2).abs() > AXIOM_TOL * v1 {
        return Err(Error::validation("equal-volume", format!("volumes differ: {v1} vs {v2}")));
    }
    let (s1, s2) = (entropy(e1)?.nats, entropy(e2)?.nats);

    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let resolution = sorted.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max) / 2.0;

    if let Some(bad) = lambdas.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(Error::validation("lambda-range", format!("mixing weight {bad} outside [0, 1]")));
    }
    let mut peak = (f64::NEG_INFINITY, 0.5);
    let mut decomposition_error: f64 = 0.0;
    for &lambda in lambdas {
        let mixed = weighted_mix(&[e1.clone(), e2.clone()], &[lambda, 1.0 - lambda])?;
        let v = volume_of(&mixed, ctx)?;
        let expected = binary_entropy(lambda) + lambda * s1 + (1.0 - lambda) * s2;
        decomposition_error = decomposition_error.max((entropy(&mixed)?.nats - expected).abs());
        if v > peak.0 {
            peak = (v, lambda);
        }
    }
    let (peak_volume, argmax) = peak;
    let violation = peak_volume - 2.0 * v1;
    let centered = (argmax - 0.5).abs() <= resolution + 1e-12;
    let failed = violation > AXIOM_TOL * v1 || !centered || decomposition_error > AXIOM_TOL;

    let mut tr = Tracker::new(AxiomId::Uniformity);
    tr.record(violation, violation / v1, failed, || Witness::Uniformity {
        first: doc(e1),
        second: doc(e2),
        lambda: argmax,
    });
    tr.details.insert("argmax_lambda".into(), argmax);
    tr.details.insert("peak_volume".into(), peak_volume);
    tr.details.insert("reference_volume".into(), v1);
    tr.details.insert("grid_points".into(), lambdas.len() as f64);
    tr.details.insert("decomposition_error".into(), decomposition_error);
    Ok(tr.finish(None, ctx))
}

fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Random search for `V_α(ρ₁₂) > V_α(ρ₁)V_α(ρ₂)` over classical joints on
/// `dims.0 × dims.1`. Finding nothing is reported, not an error.
pub fn renyi_projection_violation_search(
    alpha: f64,
    dims: (usize, usize),
    trials: usize,
    rng: &mut Rng,
) -> Result<AxiomReport> {
    let cfg = FuzzConfig {
        trials,
        seed: rng.next_u64(),
        dims: DimRange::new(dims.0.min(dims.1), dims.0.max(dims.1))?,
        kind: Kind::Classical,
        alpha,
    };
    fuzz_with(AxiomId::RenyiProjection, &cfg, &VolumeContext::new(), |r| {
        random_classical(&[dims.0, dims.1], r).map(Ensemble::from)
    })
}

/// Inclusive range of factor dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRange {
    pub min: usize,
    pub max: usize,
}

impl DimRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min < 1 || min > max {
            return Err(Error::validation("dims", format!("invalid dimension range {min}-{max}")));
        }
        Ok(Self { min, max })
    }

    fn draw(self, rng: &mut Rng) -> usize {
        rng.range_inclusive(self.min, self.max)
    }
}

impl FromStr for DimRange {
    type Err = Error;

    /// `"3"` or `"2-4"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim().parse::<usize>().map_err(|_| Error::validation("dims", format!("`{s}` is not N or MIN-MAX")))
        };
        match s.split_once('-') {
            Some((lo, hi)) => Self::new(parse(lo)?, parse(hi)?),
            None => {
                let n = parse(s)?;
                Self::new(n, n)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub dims: DimRange,
    pub kind: Kind,
    /// Order used by the Rényi search.
    pub alpha: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self { trials: 1000, seed: 0, dims: DimRange { min: 2, max: 4 }, kind: Kind::Quantum, alpha: 2.0 }
    }
}

fn random_state(kind: Kind, dims: &[usize], rng: &mut Rng) -> Result<Ensemble> {
    match kind {
        Kind::Quantum => {
            let total: usize = dims.iter().product();
            let rank = rng.range_inclusive(1, total);
            Ok(random_density_factored(dims, rank, rng)?.into())
        }
        Kind::Classical => Ok(random_classical(dims, rng)?.into()),
        Kind::Gaussian => Err(Error::Unsupported("fuzzing is implemented for classical and quantum ensembles".into())),
    }
}

/// Two equal-volume ensembles with disjoint supports on a space of size `2m`.
fn orthogonal_pair(kind: Kind, m: usize, rng: &mut Rng) -> Result<(Ensemble, Ensemble)> {
    let q = random_classical(&[m], rng)?;
    let mut low = q.probs().to_vec();
    low.extend(std::iter::repeat_n(0.0, m));
    let mut high = vec![0.0; m];
    high.extend_from_slice(q.probs());
    match kind {
        Kind::Classical => {
            let perm = rng.permutation(2 * m);
            let a = ClassicalDistribution::from_probs(low)?.permuted(&perm)?;
            let b = ClassicalDistribution::from_probs(high)?.permuted(&perm)?;
            Ok((a.into(), b.into()))
        }
        Kind::Quantum => {
            let u = random_unitary(2 * m, rng);
            let a = DensityOperator::diagonal(&low)?.apply_unitary(&u)?;
            let b = DensityOperator::diagonal(&high)?.apply_unitary(&u)?;
            Ok((a.into(), b.into()))
        }
        Kind::Gaussian => Err(Error::Unsupported("Gaussian mixtures are not Gaussian".into())),
    }
}

/// Runs `cfg.trials` seeded trials of one property. Trial `t` draws from the
/// `t`-th fork of the master stream, so any trial can be replayed alone.
pub fn fuzz(axiom: AxiomId, cfg: &FuzzConfig, ctx: &VolumeContext) -> Result<AxiomReport> {
    let kind = cfg.kind;
    let dims = cfg.dims;
    match axiom {
        AxiomId::Invariance | AxiomId::Projection | AxiomId::RenyiProjection => fuzz_with(axiom, cfg, ctx, |r| {
            let d = [dims.draw(r), dims.draw(r)];
            random_state(kind, &d, r)
        }),
        AxiomId::Cartesian | AxiomId::Uniformity => fuzz_with(axiom, cfg, ctx, |r| {
            let d = [dims.draw(r)];
            random_state(kind, &d, r)
        }),
    }
}

fn fuzz_with(
    axiom: AxiomId,
    cfg: &FuzzConfig,
    ctx: &VolumeContext,
    draw: impl Fn(&mut Rng) -> Result<Ensemble>,
) -> Result<AxiomReport> {
    if axiom == AxiomId::RenyiProjection && !(cfg.alpha > 0.0 && cfg.alpha != 1.0 && cfg.alpha.is_finite()) {
        return Err(Error::validation("renyi-alpha", format!("α must be positive and ≠ 1, got {}", cfg.alpha)));
    }
    let mut master = Rng::new(cfg.seed);
    let mut tr = Tracker::new(axiom);
    let mut worst_trial = None;
    for t in 0..cfg.trials {
        let mut rng = master.fork();
        let before = tr.worst.as_ref().map(|w| w.0);
        match axiom {
            AxiomId::Invariance => {
                let e = draw(&mut rng)?;
                let transform = match &e {
                    Ensemble::Quantum(q) => Transform::Unitary(random_unitary(q.dim(), &mut rng)),
                    Ensemble::Classical(c) => Transform::Permutation(rng.permutation(c.outcomes())),
                    Ensemble::Gaussian(_) => unreachable!("rejected by draw"),
                };
                let (v, scale) = invariance_violation(&e, &transform, ctx)?;
                tr.record(v, v / scale, v > AXIOM_TOL * scale, || Witness::Invariance {
                    ensemble: doc(&e),
                    transform: TransformDocument::from_transform(&transform),
                });
            }
            AxiomId::Cartesian => {
                let e1 = draw(&mut rng)?;
                let e2 = draw(&mut rng)?;
                let (v, scale) = cartesian_violation(&e1, &e2, ctx)?;
                tr.record(v, v.abs() / scale, v.abs() > AXIOM_TOL * scale, || Witness::Cartesian {
                    first: doc(&e1),
                    second: doc(&e2),
                });
            }
            AxiomId::Projection => {
                let e = draw(&mut rng)?;
                let (v, scale) = projection_violation(&e, ctx)?;
                tr.record(v, v / scale, v > AXIOM_TOL * scale, || Witness::Projection { joint: doc(&e) });
            }
            AxiomId::Uniformity => {
                let m = cfg.dims.draw(&mut rng);
                let (e1, e2) = orthogonal_pair(cfg.kind, m, &mut rng)?;
                let single = check_uniformity(&e1, &e2, &uniform_grid(UNIFORMITY_GRID), ctx)?;
                let v = single.worst_violation.expect("one trial");
                let scale = single.details["reference_volume"];
                let failed = single.failures > 0;
                tr.record(v, v / scale, failed, || single.witness.expect("one trial"));
            }
            AxiomId::RenyiProjection => {
                let e = draw(&mut rng)?;
                let (v, scale) = renyi_violation(&e, cfg.alpha, ctx)?;
                tr.record(v, v / scale, v > AXIOM_TOL * scale, || Witness::Renyi { joint: doc(&e), alpha: cfg.alpha });
            }
        }
        if tr.worst.as_ref().map(|w| w.0) != before {
            worst_trial = Some(t);
        }
    }
    if let Some(t) = worst_trial {
        tr.details.insert("worst_trial".into(), t as f64);
    }
    Ok(tr.finish(Some(cfg.seed), ctx))
}

/// The 2×2 joint `[[0.8, 0.1], [0.1, 0.0]]`, whose collision probabilities
/// violate the α = 2 projection inequality.
pub fn pinned_renyi_witness() -> ClassicalDistribution {
    ClassicalDistribution::new(vec![2, 2], vec![0.8, 0.1, 0.1, 0.0]).expect("valid distribution")
}

/// Hadamard gate, a convenient invariance probe for qubits.
pub fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]]).expect("square")
}
