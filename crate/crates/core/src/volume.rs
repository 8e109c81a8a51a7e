//! Entropy functionals and the ensemble volume `V = K·e^S`.
//!
//! Entropies are carried in nats. `K` is looked up per elementary space in a
//! [`VolumeContext`] and multiplied across factors, so a composite space's
//! constant is never stored on its own.

use std::collections::BTreeMap;
use std::f64::consts::{E, LOG2_E, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ensembles::{ClassicalDistribution, DensityOperator, Ensemble, GaussianEnsemble, NEGATIVE_EIGEN_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Nats,
    Bits,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        })
    }
}

/// An entropy, stored in nats.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EntropyValue {
    pub nats: f64,
}

impl EntropyValue {
    pub fn from_nats(nats: f64) -> Self {
        Self { nats }
    }

    pub fn bits(self) -> f64 {
        self.nats * LOG2_E
    }

    pub fn in_unit(self, unit: Unit) -> f64 {
        match unit {
            Unit::Nats => self.nats,
            Unit::Bits => self.bits(),
        }
    }
}

/// Space constants and physical constants for volume evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeContext {
    k_constants: BTreeMap<String, f64>,
    default_k: Option<f64>,
    hbar: f64,
}

impl Default for VolumeContext {
    fn default() -> Self {
        Self { k_constants: BTreeMap::new(), default_k: Some(1.0), hbar: 1.0 }
    }
}

impl VolumeContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Context that refuses spaces without an explicitly registered constant.
    pub fn strict() -> Self {
        Self { default_k: None, ..Self::default() }
    }

    pub fn with_k(mut self, label: impl Into<String>, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::validation("k-positive", format!("K must be positive and finite, got {k}")));
        }
        self.k_constants.insert(label.into(), k);
        Ok(self)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::validation("hbar-positive", format!("ħ must be positive, got {hbar}")));
        }
        self.hbar = hbar;
        Ok(self)
    }

    /// Ties classical phase-space constants to quantum ones: each Gaussian
    /// mode gets `K_C = K_Q / h`, where `K_Q` is the pure-state volume of the
    /// matching quantum space.
    pub fn with_correspondence(self, k_quantum: f64) -> Result<Self> {
        let h = self.planck();
        self.with_k("gaussian:mode", k_quantum / h)
    }

    /// Constant used for spaces without a registered one.
    pub fn with_default_k(mut self, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::validation("k-positive", format!("K must be positive and finite, got {k}")));
        }
        self.default_k = Some(k);
        Ok(self)
    }

    pub fn default_k(&self) -> Option<f64> {
        self.default_k
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// h = 2πħ
    pub fn planck(&self) -> f64 {
        2.0 * PI * self.hbar
    }

    pub fn k_constants(&self) -> &BTreeMap<String, f64> {
        &self.k_constants
    }

    pub fn k_of(&self, label: &str) -> Result<f64> {
        match (self.k_constants.get(label), self.default_k) {
            (Some(&k), _) => Ok(k),
            (None, Some(k)) => Ok(k),
            (None, None) => Err(Error::validation("k-registered", format!("no volume constant registered for space `{label}`"))),
        }
    }

    /// Product of constants over elementary spaces.
    pub fn k_for_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64> {
        labels.iter().map(|l| self.k_of(l.as_ref())).product()
    }

    pub fn ln_k_for(&self, e: &Ensemble) -> Result<f64> {
        Ok(self.k_for_labels(&e.space_labels())?.ln())
    }
}

/// −Σ p ln p with 0·ln 0 = 0.
pub fn shannon_entropy(c: &ClassicalDistribution) -> EntropyValue {
    EntropyValue::from_nats(shannon_of(c.probs()))
}

pub(crate) fn shannon_of(probs: &[f64]) -> f64 {
    -probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()).sum::<f64>()
}

fn clipped_spectrum(rho: &DensityOperator) -> Result<Vec<f64>> {
    rho.eigenvalues()
        .iter()
        .map(|&l| {
            if l < -NEGATIVE_EIGEN_TOL {
                Err(Error::validation("positive-semidefinite", format!("eigenvalue {l:e}")))
            } else {
                Ok(l.max(0.0))
            }
        })
        .collect()
}

/// −Σ λ ln λ over the eigenvalues of ρ.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<EntropyValue> {
    Ok(EntropyValue::from_nats(shannon_of(&clipped_spectrum(rho)?)))
}

/// n·ln(2πe) + ½·ln det Σ
pub fn gaussian_entropy(g: &GaussianEnsemble) -> EntropyValue {
    EntropyValue::from_nats(g.dof() as f64 * (2.0 * PI * E).ln() + 0.5 * g.log_det())
}

/// Entropy of any supported ensemble.
pub fn entropy(e: &Ensemble) -> Result<EntropyValue> {
    match e {
        Ensemble::Classical(c) => Ok(shannon_entropy(c)),
        Ensemble::Quantum(q) => von_neumann_entropy(q),
        Ensemble::Gaussian(g) => Ok(gaussian_entropy(g)),
    }
}

/// Probabilities or eigenvalues of a discrete ensemble.
pub(crate) fn weights_of(e: &Ensemble) -> Result<Vec<f64>> {
    match e {
        Ensemble::Classical(c) => Ok(c.probs().to_vec()),
        Ensemble::Quantum(q) => clipped_spectrum(q),
        Ensemble::Gaussian(_) => Err(Error::Unsupported("Rényi entropy of a Gaussian ensemble".into())),
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::validation("renyi-alpha", format!("α must be positive, finite and ≠ 1, got {alpha}")));
    }
    Ok(())
}

pub(crate) fn renyi_of(weights: &[f64], alpha: f64) -> f64 {
    let power_sum: f64 = weights.iter().filter(|&&w| w > 0.0).map(|w| w.powf(alpha)).sum();
    power_sum.ln() / (1.0 - alpha)
}

/// (1−α)⁻¹ ln Σ λ^α
pub fn renyi_entropy(e: &Ensemble, alpha: f64) -> Result<EntropyValue> {
    check_alpha(alpha)?;
    Ok(EntropyValue::from_nats(renyi_of(&weights_of(e)?, alpha)))
}

/// ln V = ln K + S
pub fn ln_volume(e: &Ensemble, ctx: &VolumeContext) -> Result<f64> {
    Ok(ctx.ln_k_for(e)? + entropy(e)?.nats)
}

/// `K(Γ)·exp(S(ρ))`.
pub fn volume(e: &Ensemble, ctx: &VolumeContext) -> Result<f64> {
    Ok(ln_volume(e, ctx)?.exp())
}

/// Volume with caller-supplied elementary space labels.
pub fn volume_labeled<S: AsRef<str>>(e: &Ensemble, labels: &[S], ctx: &VolumeContext) -> Result<f64> {
    Ok(ctx.k_for_labels(labels)? * entropy(e)?.nats.exp())
}

/// `K·(Σ λ^α)^{1/(1−α)}`
pub fn renyi_volume(e: &Ensemble, alpha: f64, ctx: &VolumeContext) -> Result<f64> {
    Ok((ctx.ln_k_for(e)? + renyi_entropy(e, alpha)?.nats).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermoReading {
    /// k·S
    pub entropy: f64,
    /// V/K, the number of zero-temperature volumes the ensemble spans.
    pub microstate_count: f64,
}

/// `k·ln(V/K)`, reported with the microstate count `V/K`.
pub fn thermodynamic_entropy(e: &Ensemble, ctx: &VolumeContext, k_boltzmann: f64) -> Result<ThermoReading> {
    if k_boltzmann.is_nan() || k_boltzmann <= 0.0 {
        return Err(Error::validation("k-boltzmann", "Boltzmann constant must be positive"));
    }
    let ln_ratio = ln_volume(e, ctx)? - ctx.ln_k_for(e)?;
    Ok(ThermoReading { entropy: k_boltzmann * ln_ratio, microstate_count: ln_ratio.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn classical(p: &[f64]) -> Ensemble {
        ClassicalDistribution::from_probs(p.to_vec()).unwrap().into()
    }

    #[test]
    fn shannon_anchors() {
        assert_abs_diff_eq!(entropy(&classical(&[0.25; 4])).unwrap().nats, 4.0_f64.ln(), epsilon = 1e-15);
        assert_eq!(entropy(&classical(&[0.0, 1.0, 0.0])).unwrap().nats, 0.0);
        // −0.9 ln 0.9 − 0.1 ln 0.1
        assert_abs_diff_eq!(entropy(&classical(&[0.9, 0.1])).unwrap().nats, 0.3250829733914482, epsilon = 1e-12);
    }

    #[test]
    fn von_neumann_anchors() {
        let pure: Ensemble = DensityOperator::pure_real(&[1.0, 2.0, -1.0]).unwrap().into();
        assert_abs_diff_eq!(entropy(&pure).unwrap().nats, 0.0, epsilon = 1e-12);
        let mixed: Ensemble = DensityOperator::maximally_mixed(5).unwrap().into();
        assert_abs_diff_eq!(entropy(&mixed).unwrap().nats, 5.0_f64.ln(), epsilon = 1e-14);
        let rho: Ensemble = DensityOperator::diagonal(&[0.75, 0.25]).unwrap().into();
        assert_abs_diff_eq!(entropy(&rho).unwrap().nats, 0.5623351446188083, epsilon = 1e-12);
    }

    #[test]
    fn renyi_anchors() {
        for alpha in [0.5, 2.0, 3.7] {
            assert_abs_diff_eq!(renyi_entropy(&classical(&[1.0 / 3.0; 3]), alpha).unwrap().nats, 3.0_f64.ln(), epsilon = 1e-14);
        }
        let pure: Ensemble = DensityOperator::pure_real(&[1.0, 1.0]).unwrap().into();
        assert_abs_diff_eq!(renyi_entropy(&pure, 2.0).unwrap().nats, 0.0, epsilon = 1e-12);
        let joint: Ensemble = ClassicalDistribution::new(vec![2, 2], vec![0.8, 0.1, 0.1, 0.0]).unwrap().into();
        // −ln(0.64 + 0.01 + 0.01)
        assert_abs_diff_eq!(renyi_entropy(&joint, 2.0).unwrap().nats, 0.4155154439616658, epsilon = 1e-12);
        assert_abs_diff_eq!(renyi_volume(&joint, 2.0, &VolumeContext::new()).unwrap(), 1.0 / 0.66, epsilon = 1e-12);
    }

    #[test]
    fn renyi_rejects_bad_alpha_and_gaussians() {
        let c = classical(&[0.5, 0.5]);
        for alpha in [1.0, 0.0, -1.0, f64::NAN] {
            assert!(matches!(renyi_entropy(&c, alpha), Err(Error::Validation { check: "renyi-alpha", .. })));
        }
        let g: Ensemble = GaussianEnsemble::from_diagonal(&[1.0, 1.0]).unwrap().into();
        assert!(matches!(renyi_entropy(&g, 2.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn gaussian_anchors() {
        let unit = GaussianEnsemble::from_diagonal(&[1.0, 1.0]).unwrap();
        // ln(2πe)
        assert_abs_diff_eq!(gaussian_entropy(&unit).nats, 2.8378770664093453, epsilon = 1e-12);
        let squeezed = GaussianEnsemble::from_diagonal(&[4.0, 1.0]).unwrap();
        // ln(2πe·2)
        assert_abs_diff_eq!(gaussian_entropy(&squeezed).nats, 3.5310242469692907, epsilon = 1e-12);
        let (c, s) = (0.3_f64.cos(), 0.3_f64.sin());
        let r = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let rotated = GaussianEnsemble::centered(&r * squeezed.covariance() * r.transpose()).unwrap();
        assert_abs_diff_eq!(gaussian_entropy(&rotated).nats, gaussian_entropy(&squeezed).nats, epsilon = 1e-12);
        assert_abs_diff_eq!(volume(&unit.into(), &VolumeContext::new()).unwrap(), 2.0 * PI * E, epsilon = 1e-12);
    }

    #[test]
    fn volumes_and_constants() {
        let ctx = VolumeContext::new();
        let pure: Ensemble = DensityOperator::basis(2, 1).unwrap().into();
        assert_abs_diff_eq!(volume(&pure, &ctx).unwrap(), 1.0, epsilon = 1e-12);
        let half: Ensemble = DensityOperator::maximally_mixed(2).unwrap().into();
        assert_abs_diff_eq!(volume(&half, &ctx).unwrap(), 2.0, epsilon = 1e-12);

        let ctx = VolumeContext::new().with_k("quantum:2", 3.0).unwrap().with_k("quantum:3", 5.0).unwrap();
        let joint = half.product(&DensityOperator::basis(3, 0).unwrap().into()).unwrap();
        assert_abs_diff_eq!(volume(&joint, &ctx).unwrap(), 15.0 * 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(volume(&pure, &ctx).unwrap(), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(volume_labeled(&pure, &["custom"], &ctx).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn strict_context_requires_registration() {
        let pure: Ensemble = DensityOperator::basis(2, 1).unwrap().into();
        let err = volume(&pure, &VolumeContext::strict()).unwrap_err();
        assert!(matches!(err, Error::Validation { check: "k-registered", .. }));
        assert!(VolumeContext::new().with_k("x", 0.0).is_err());
        assert!(VolumeContext::new().with_hbar(-1.0).is_err());
    }

    #[test]
    fn thermodynamic_readings() {
        let ctx = VolumeContext::new().with_k("quantum:2", 7.0).unwrap();
        let pure: Ensemble = DensityOperator::basis(2, 0).unwrap().into();
        let t = thermodynamic_entropy(&pure, &ctx, 1.0).unwrap();
        assert_abs_diff_eq!(t.entropy, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.microstate_count, 1.0, epsilon = 1e-12);
        let mixed: Ensemble = DensityOperator::maximally_mixed(4).unwrap().into();
        let t = thermodynamic_entropy(&mixed, &ctx, 1.0).unwrap();
        assert_abs_diff_eq!(t.microstate_count, 4.0, epsilon = 1e-12);
        let rho: Ensemble = DensityOperator::diagonal(&[0.75, 0.25]).unwrap().into();
        let t = thermodynamic_entropy(&rho, &ctx, 1.0).unwrap();
        assert_abs_diff_eq!(t.entropy, 0.5623351446188083, epsilon = 1e-12);
        assert_abs_diff_eq!(t.microstate_count, 1.7547653506033232, epsilon = 1e-12);
        assert_abs_diff_eq!(thermodynamic_entropy(&rho, &ctx, 2.5).unwrap().entropy, 2.5 * 0.5623351446188083, epsilon = 1e-12);
    }

    #[test]
    fn correspondence_context_scales_mode_constant() {
        let ctx = VolumeContext::new().with_hbar(2.0).unwrap().with_correspondence(1.0).unwrap();
        assert_abs_diff_eq!(ctx.k_of("gaussian:mode").unwrap(), 1.0 / (4.0 * PI), epsilon = 1e-15);
    }

    #[test]
    fn units() {
        let e = EntropyValue::from_nats(2.0_f64.ln());
        assert_abs_diff_eq!(e.bits(), 1.0, epsilon = 1e-15);
        assert_eq!(e.in_unit(Unit::Nats), e.nats);
    }
}
