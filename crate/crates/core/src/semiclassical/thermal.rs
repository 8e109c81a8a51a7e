use std::f64::consts::{E, PI};

use crate::ensembles::GaussianEnsemble;
use crate::error::{Error, Result};
use crate::volume::gaussian_entropy;

/// Harmonic oscillator in thermal equilibrium at temperature `kT`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalOscillator {
    pub omega: f64,
    pub mass: f64,
    pub kt: f64,
    pub hbar: f64,
}

impl ThermalOscillator {
    pub fn new(omega: f64, mass: f64, kt: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("omega", omega), ("mass", mass), ("kT", kt), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation("oscillator-positive", format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self { omega, mass, kt, hbar })
    }

    /// Unit frequency and mass, `kT = ratio·ħω`.
    pub fn at_ratio(ratio: f64, hbar: f64) -> Result<Self> {
        Self::new(1.0, 1.0, ratio * hbar, hbar)
    }

    /// Classical equilibrium ensemble: Δx² = kT/(mω²), Δp² = m·kT.
    pub fn classical_state(&self) -> Result<GaussianEnsemble> {
        GaussianEnsemble::from_diagonal(&[self.kt / (self.mass * self.omega * self.omega), self.mass * self.kt])
    }

    /// ln(2πe·kT/ω)
    pub fn classical_entropy(&self) -> f64 {
        (2.0 * PI * E * self.kt / self.omega).ln()
    }

    /// Mean Bose occupancy 1/(e^{ħω/kT} − 1).
    pub fn occupancy(&self) -> f64 {
        1.0 / (self.hbar * self.omega / self.kt).exp_m1()
    }

    /// (n̄+1)ln(n̄+1) − n̄ ln n̄
    pub fn quantum_entropy(&self) -> f64 {
        let n = self.occupancy();
        // Rewritten as ln(n̄+1) + n̄·ln(1 + 1/n̄) to avoid cancellation at large n̄.
        (n + 1.0).ln() + n * (1.0 / n).ln_1p()
    }
}

/// `e^{S_C}/e^{S_Q}`, which tends to `h = 2πħ` at high temperature.
pub fn correspondence_ratio(osc: &ThermalOscillator) -> f64 {
    (osc.classical_entropy() - osc.quantum_entropy()).exp()
}

/// Ratio evaluated at each `kT/ħω` in `ratios`, unit mass and frequency.
pub fn correspondence_sweep(ratios: &[f64], hbar: f64) -> Result<Vec<(f64, f64)>> {
    ratios
        .iter()
        .map(|&r| Ok((r, correspondence_ratio(&ThermalOscillator::at_ratio(r, hbar)?))))
        .collect()
}

/// Checks the closed-form classical entropy against the Gaussian state's own entropy.
pub fn classical_entropy_from_state(osc: &ThermalOscillator) -> Result<f64> {
    Ok(gaussian_entropy(&osc.classical_state()?).nats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn high_temperature_limit_is_planck() {
        for hbar in [1.0, 2.0] {
            let r = correspondence_ratio(&ThermalOscillator::at_ratio(1e4, hbar).unwrap());
            assert!((r / (2.0 * PI * hbar) - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn ratio_increases_toward_limit() {
        let sweep = correspondence_sweep(&[10.0, 100.0, 1e3, 1e4], 1.0).unwrap();
        assert!(sweep.windows(2).all(|w| w[1].1 >= w[0].1));
        assert!(sweep.iter().all(|(_, r)| *r <= 2.0 * PI * (1.0 + 1e-3)));
    }

    #[test]
    fn closed_form_matches_gaussian_entropy() {
        let osc = ThermalOscillator::new(2.0, 3.0, 5.0, 1.0).unwrap();
        assert!((classical_entropy_from_state(&osc).unwrap() - osc.classical_entropy()).abs() < 1e-12);
    }

    #[test]
    fn low_temperature_entropy_vanishes() {
        let osc = ThermalOscillator::at_ratio(0.01, 1.0).unwrap();
        assert!(osc.quantum_entropy() < 1e-40);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(ThermalOscillator::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ThermalOscillator::new(-1.0, 1.0, 1.0, 1.0).is_err());
    }
}
