//! Communication bounds derived from ensemble volumes.
//!
//! Signal states `ρᵢ` sent with priors `pᵢ` form the ensemble `ρ = Σ pᵢρᵢ`.
//! Counting non-overlapping signal volumes inside `V(ρ)` bounds the
//! information per signal by `χ = S(ρ) − Σ pᵢ S(ρᵢ)`, which is both the
//! Shannon bound (classical states) and the Holevo bound (quantum states).
//! Block codes of length `L` are built explicitly so that the chain
//! `V(ρ^(L)) ≤ Π V(ρ̄_l) ≤ V(ρ)^L` can be checked on concrete ensembles.
//! Every multiplicative quantity is handled as a logarithm.

use std::collections::BTreeMap;
use std::f64::consts::LOG2_E;

use serde::{Deserialize, Serialize};

use crate::ensembles::{mix, weighted_mix, ClassicalDistribution, Ensemble, SignalEnsemble};
use crate::error::{Error, Result};
use crate::numerics::Rng;
use crate::volume::{entropy, ln_volume, shannon_of, EntropyValue, VolumeContext};

/// Tolerance for the inequality chains in this module.
pub const BOUND_TOL: f64 = 1e-9;
/// Tolerance for the per-slot frequency constraint of a block code.
pub const FREQUENCY_TOL: f64 = 1e-9;
/// Largest total dimension a block ensemble may reach.
pub const MAX_BLOCK_DIM: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// lhs ≤ rhs, slack = rhs − lhs
    AtMost,
    /// lhs ≥ rhs, slack = lhs − rhs
    AtLeast,
}

/// One evaluated inequality. Positive slack means the inequality holds with room.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub slack: f64,
    pub units: String,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub fn new(lhs: f64, relation: Relation, rhs: f64, units: &str, tolerance: f64) -> Self {
        let slack = match relation {
            Relation::AtMost => rhs - lhs,
            Relation::AtLeast => lhs - rhs,
        };
        Self {
            lhs,
            rhs,
            relation,
            slack,
            units: units.to_string(),
            tolerance,
            passed: slack >= -tolerance,
            details: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn with_detail(mut self, key: &str, value: f64) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    /// Slack recomputed from the stored sides.
    pub fn recomputed_slack(&self) -> f64 {
        match self.relation {
            Relation::AtMost => self.rhs - self.lhs,
            Relation::AtLeast => self.lhs - self.rhs,
        }
    }
}

/// A value held as its natural logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: f64,
}

impl LogValue {
    pub fn value(self) -> f64 {
        self.ln.exp()
    }
}

/// χ = S(Σ pᵢρᵢ) − Σ pᵢ S(ρᵢ)
pub fn holevo_chi(s: &SignalEnsemble) -> Result<EntropyValue> {
    let mixed = entropy(&mix(s)?)?.nats;
    let mut average = 0.0;
    for (p, state) in s.priors().iter().zip(s.states()) {
        average += p * entropy(state)?.nats;
    }
    Ok(EntropyValue::from_nats(mixed - average))
}

/// Single-measurement capacity `log₂(V(ρ)/V₀)` in bits.
///
/// The left side is the information actually gained, 0 unless the caller
/// supplies a measured value through [`BoundReport::lhs`]. A volume below
/// `v0` yields zero capacity and a warning.
pub fn single_measurement_bound(rho: &Ensemble, v0: f64, ctx: &VolumeContext) -> Result<BoundReport> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::validation("v0-positive", format!("minimum signal volume must be positive, got {v0}")));
    }
    let ln_v = ln_volume(rho, ctx)?;
    let raw = (ln_v - v0.ln()) * LOG2_E;
    let mut report = BoundReport::new(0.0, Relation::AtMost, raw.max(0.0), "bits", BOUND_TOL)
        .with_detail("ln_volume", ln_v)
        .with_detail("ln_v0", v0.ln());
    if raw < 0.0 {
        report.warnings.push(format!("V(ρ) is below V₀; capacity clamped to zero (raw {raw:.6} bits)"));
    }
    Ok(report)
}

/// Channel-limit information bound `χ·log₂e` bits per signal.
pub fn information_rate_bound(s: &SignalEnsemble) -> Result<BoundReport> {
    let chi = holevo_chi(s)?;
    Ok(BoundReport::new(0.0, Relation::AtMost, chi.bits(), "bits", BOUND_TOL)
        .with_detail("chi_nats", chi.nats)
        .with_detail("chi_bits", chi.bits()))
}

/// χ ≤ H(priors)
pub fn lanford_robinson(s: &SignalEnsemble) -> Result<BoundReport> {
    let chi = holevo_chi(s)?.nats;
    Ok(BoundReport::new(chi, Relation::AtMost, shannon_of(s.priors()), "nats", BOUND_TOL))
}

/// `ln Π V(ρᵢ)^{pᵢL}`
pub fn typical_volume(s: &SignalEnsemble, length: usize, ctx: &VolumeContext) -> Result<LogValue> {
    if length == 0 {
        return Err(Error::validation("block-length", "block length must be at least 1"));
    }
    let mut acc = 0.0;
    for (p, state) in s.priors().iter().zip(s.states()) {
        if *p > 0.0 {
            acc += p * ln_volume(state, ctx)?;
        }
    }
    Ok(LogValue { ln: length as f64 * acc })
}

/// `ln` of the typical block count `exp(L·H(p))`.
pub fn typical_count(priors: &[f64], length: usize) -> Result<LogValue> {
    let p = ClassicalDistribution::from_probs(priors.to_vec())?;
    Ok(LogValue { ln: length as f64 * shannon_of(p.probs()) })
}

/// A distribution over length-`L` sequences of signal indices.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCode {
    base: SignalEnsemble,
    length: usize,
    blocks: Vec<Vec<usize>>,
    block_priors: Vec<f64>,
}

impl BlockCode {
    /// Validates indices, priors, and that signal `i` still appears with
    /// relative frequency `pᵢ` per transmitted slot.
    pub fn new(base: SignalEnsemble, length: usize, blocks: Vec<Vec<usize>>, block_priors: Vec<f64>) -> Result<Self> {
        if length == 0 {
            return Err(Error::validation("block-length", "block length must be at least 1"));
        }
        if blocks.is_empty() || blocks.len() != block_priors.len() {
            return Err(Error::validation("block-priors", format!("{} blocks but {} priors", blocks.len(), block_priors.len())));
        }
        let block_priors = ClassicalDistribution::from_probs(block_priors)
            .map_err(|e| match e {
                Error::Validation { detail, .. } => Error::validation("block-priors", detail),
                other => other,
            })?
            .probs()
            .to_vec();
        for (b, block) in blocks.iter().enumerate() {
            if block.len() != length {
                return Err(Error::validation("block-length", format!("block {b} has length {} ≠ {length}", block.len())));
            }
            if let Some(&bad) = block.iter().find(|&&i| i >= base.len()) {
                return Err(Error::validation("block-index", format!("block {b} uses signal {bad} of {}", base.len())));
            }
        }
        let code = Self { base, length, blocks, block_priors };
        let freq = code.symbol_frequencies();
        for (i, (f, p)) in freq.iter().zip(code.base.priors()).enumerate() {
            if (f - p).abs() > FREQUENCY_TOL {
                return Err(Error::validation(
                    "block-frequency",
                    format!("signal {i} appears with frequency {f} but has prior {p}"),
                ));
            }
        }
        Ok(code)
    }

    /// Every sequence, weighted by the product of priors (independent slots).
    pub fn independent(base: SignalEnsemble, length: usize) -> Result<Self> {
        let priors = base.priors().to_vec();
        let mut blocks = Vec::new();
        let mut weights = Vec::new();
        for seq in all_sequences(priors.len(), length) {
            let w: f64 = seq.iter().map(|&i| priors[i]).product();
            if w > 0.0 {
                blocks.push(seq);
                weights.push(w);
            }
        }
        Self::new(base, length, blocks, weights)
    }

    /// All arrangements of the composition `nᵢ = pᵢL`, equally weighted.
    /// Requires every `pᵢL` to be an integer.
    pub fn type_class(base: SignalEnsemble, length: usize) -> Result<Self> {
        let counts: Vec<usize> = base
            .priors()
            .iter()
            .map(|p| {
                let n = p * length as f64;
                if (n - n.round()).abs() > FREQUENCY_TOL {
                    Err(Error::validation("block-frequency", format!("prior {p} times length {length} is not an integer")))
                } else {
                    Ok(n.round() as usize)
                }
            })
            .collect::<Result<_>>()?;
        let blocks: Vec<Vec<usize>> = all_sequences(counts.len(), length)
            .filter(|seq| (0..counts.len()).all(|i| seq.iter().filter(|&&s| s == i).count() == counts[i]))
            .collect();
        let w = 1.0 / blocks.len() as f64;
        let n = blocks.len();
        Self::new(base, length, blocks, vec![w; n])
    }

    /// Random code meeting the frequency constraint exactly.
    ///
    /// Slot marginals `μ_l = p + t·δ_l` are drawn with `Σ_l δ_l = 0`, so their
    /// average is `p`. The joint is a random mixture of the independent
    /// coupling `⊗ μ_l` and a comonotone coupling of the `μ_l` under random
    /// symbol orderings; both couplings have exactly the marginals `μ_l`.
    pub fn random_constrained(base: SignalEnsemble, length: usize, rng: &mut Rng) -> Result<Self> {
        if length == 0 {
            return Err(Error::validation("block-length", "block length must be at least 1"));
        }
        let p = base.priors().to_vec();
        let d = p.len();
        let marginals = perturbed_marginals(&p, length, rng);

        let mut joint: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        let w_indep = rng.uniform();
        if w_indep > 0.0 {
            for seq in all_sequences(d, length) {
                let w: f64 = seq.iter().enumerate().map(|(l, &i)| marginals[l][i]).product();
                if w > 0.0 {
                    *joint.entry(seq).or_insert(0.0) += w_indep * w;
                }
            }
        }
        let orders: Vec<Vec<usize>> = (0..length).map(|_| rng.permutation(d)).collect();
        for (seq, w) in comonotone_coupling(&marginals, &orders) {
            *joint.entry(seq).or_insert(0.0) += (1.0 - w_indep) * w;
        }
        let (blocks, weights): (Vec<_>, Vec<_>) = joint.into_iter().filter(|(_, w)| *w > 0.0).unzip();
        let total: f64 = weights.iter().sum();
        Self::new(base, length, blocks, weights.iter().map(|w| w / total).collect())
    }

    pub fn base(&self) -> &SignalEnsemble {
        &self.base
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_priors(&self) -> &[f64] {
        &self.block_priors
    }

    /// Σ_b prior_b · (occurrences of i in b) / L
    pub fn symbol_frequencies(&self) -> Vec<f64> {
        let mut freq = vec![0.0; self.base.len()];
        for (block, w) in self.blocks.iter().zip(&self.block_priors) {
            for &i in block {
                freq[i] += w / self.length as f64;
            }
        }
        freq
    }

    /// Weights of each signal in slot `l`.
    pub fn slot_weights(&self, slot: usize) -> Vec<f64> {
        let mut weights = vec![0.0; self.base.len()];
        for (block, w) in self.blocks.iter().zip(&self.block_priors) {
            weights[block[slot]] += w;
        }
        weights
    }

    /// ρ̄_l, the average state transmitted in slot `l`.
    pub fn slot_average(&self, slot: usize) -> Result<Ensemble> {
        if slot >= self.length {
            return Err(Error::validation("subsystem-index", format!("slot {slot} out of range {}", self.length)));
        }
        weighted_mix(self.base.states(), &self.slot_weights(slot))
    }
}

fn all_sequences(alphabet: usize, length: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = alphabet.pow(length as u32);
    (0..total).map(move |mut code| {
        let mut seq = vec![0; length];
        for slot in (0..length).rev() {
            seq[slot] = code % alphabet;
            code /= alphabet;
        }
        seq
    })
}

fn perturbed_marginals(p: &[f64], length: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    let d = p.len();
    let g: Vec<Vec<f64>> = (0..length).map(|_| (0..d).map(|_| rng.gauss_pair().0).collect()).collect();
    let row_mean: Vec<f64> = g.iter().map(|r| r.iter().sum::<f64>() / d as f64).collect();
    let col_mean: Vec<f64> = (0..d).map(|i| g.iter().map(|r| r[i]).sum::<f64>() / length as f64).collect();
    let grand: f64 = row_mean.iter().sum::<f64>() / length as f64;
    // Double centering: rows and columns of δ sum to zero.
    let delta: Vec<Vec<f64>> =
        (0..length).map(|l| (0..d).map(|i| g[l][i] - row_mean[l] - col_mean[i] + grand).collect()).collect();
    let mut t_max = f64::INFINITY;
    for row in &delta {
        for (i, &di) in row.iter().enumerate() {
            if di < 0.0 {
                t_max = t_max.min(p[i] / -di);
            }
        }
    }
    let t = if t_max.is_finite() { rng.uniform() * t_max } else { 0.0 };
    delta.iter().map(|row| row.iter().zip(p).map(|(di, pi)| (pi + t * di).max(0.0)).collect()).collect()
}

/// Quantile coupling: a single uniform variate selects every slot's symbol
/// through that slot's cumulative distribution in the given symbol order.
fn comonotone_coupling(marginals: &[Vec<f64>], orders: &[Vec<usize>]) -> Vec<(Vec<usize>, f64)> {
    let mut cuts = vec![0.0, 1.0];
    for (mu, order) in marginals.iter().zip(orders) {
        let mut acc = 0.0;
        for &i in order {
            acc += mu[i];
            cuts.push(acc.min(1.0));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let seq = marginals
            .iter()
            .zip(orders)
            .map(|(mu, order)| {
                let mut acc = 0.0;
                for &i in order {
                    acc += mu[i];
                    if mid < acc {
                        return i;
                    }
                }
                *order.iter().rev().find(|&&i| mu[i] > 0.0).unwrap_or(&order[order.len() - 1])
            })
            .collect();
        out.push((seq, hi - lo));
    }
    out
}

/// ρ^(L) = Σ_b prior_b · ρ_{b₁} ⊗ … ⊗ ρ_{b_L}, one registered factor per slot.
pub fn block_ensemble(code: &BlockCode) -> Result<Ensemble> {
    let states: Vec<Ensemble> = code.base.states().iter().map(Ensemble::merged).collect();
    let slot_size = states[0].factor_sizes()[0];
    let total = (slot_size as f64).powi(code.length as i32);
    if total > MAX_BLOCK_DIM as f64 {
        return Err(Error::Unsupported(format!(
            "block ensemble of dimension {total} exceeds the limit {MAX_BLOCK_DIM}"
        )));
    }
    let mut products = Vec::with_capacity(code.blocks.len());
    for block in &code.blocks {
        let mut joint = states[block[0]].clone();
        for &i in &block[1..] {
            joint = joint.product(&states[i])?;
        }
        products.push(joint);
    }
    weighted_mix(&products, &code.block_priors)
}

/// The two inequalities `V(ρ^(L)) ≤ Π V(ρ̄_l) ≤ V(ρ)^L` plus the concavity
/// step, all in log-volume (nats).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockBounds {
    pub length: usize,
    pub ln_block_volume: f64,
    pub ln_slot_volume_product: f64,
    pub ln_mixture_volume_power: f64,
    /// ln V(ρ^(L)) ≤ Σ ln V(ρ̄_l)
    pub projection: BoundReport,
    /// Σ ln V(ρ̄_l) ≤ L·ln V(ρ)
    pub slot_chain: BoundReport,
    /// Σ S(ρ̄_l)/L ≤ S(ρ)
    pub concavity: BoundReport,
    pub passed: bool,
}

pub fn block_volume_bounds(code: &BlockCode, ctx: &VolumeContext) -> Result<BlockBounds> {
    let length = code.length as f64;
    // K of one slot is the base state's constant; merging factors must not change it.
    let ln_k = ctx.ln_k_for(&code.base.states()[0])?;
    let ln_block = length * ln_k + entropy(&block_ensemble(code)?)?.nats;

    let mut slot_entropies = Vec::with_capacity(code.length);
    for l in 0..code.length {
        slot_entropies.push(entropy(&code.slot_average(l)?)?.nats);
    }
    let ln_slots: f64 = slot_entropies.iter().map(|s| ln_k + s).sum();
    let s_mix = entropy(&mix(&code.base)?)?.nats;
    let ln_power = length * (ln_k + s_mix);

    let projection = BoundReport::new(ln_block, Relation::AtMost, ln_slots, "nats", BOUND_TOL);
    let slot_chain = BoundReport::new(ln_slots, Relation::AtMost, ln_power, "nats", BOUND_TOL);
    let concavity = BoundReport::new(
        slot_entropies.iter().sum::<f64>() / length,
        Relation::AtMost,
        s_mix,
        "nats",
        BOUND_TOL,
    );
    let passed = projection.passed && slot_chain.passed && concavity.passed;
    Ok(BlockBounds {
        length: code.length,
        ln_block_volume: ln_block,
        ln_slot_volume_product: ln_slots,
        ln_mixture_volume_power: ln_power,
        projection,
        slot_chain,
        concavity,
        passed,
    })
}

/// Finite-length rate `L⁻¹·log₂[V(ρ^(L))/V_α]` in bits per signal.
pub fn finite_block_rate(code: &BlockCode, ctx: &VolumeContext) -> Result<f64> {
    let bounds = block_volume_bounds(code, ctx)?;
    let typical = typical_volume(&code.base, code.length, ctx)?;
    Ok((bounds.ln_block_volume - typical.ln) / code.length as f64 * LOG2_E)
}
