use std::f64::consts::{E, PI};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::information::{BoundReport, Relation};
use crate::numerics::dft;
use crate::volume::EntropyValue;

pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Edge amplitudes must stay below this fraction of the peak amplitude.
pub const LEAKAGE_TOL: f64 = 1e-6;
/// Lower bound on the entropic uncertainty slack for in-scope states.
pub const UNCERTAINTY_SLACK_TOL: f64 = 1e-3;

/// Wavefunction sampled on `x_j = origin + j·spacing`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridWavefunction {
    samples: Vec<C64>,
    spacing: f64,
    origin: f64,
    hbar: f64,
}

impl GridWavefunction {
    pub fn new(samples: Vec<C64>, spacing: f64, origin: f64, hbar: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::validation("grid", "wavefunction has no samples"));
        }
        if !(spacing > 0.0 && spacing.is_finite()) || !(hbar > 0.0 && hbar.is_finite()) || !origin.is_finite() {
            return Err(Error::validation("grid", "spacing and ħ must be positive and the origin finite"));
        }
        let norm: f64 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * spacing;
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::validation("wavefunction-normalized", format!("Σ|ψ|²·dx = {norm}")));
        }
        Ok(Self { samples, spacing, origin, hbar })
    }

    /// Samples `f` on the grid and normalizes the result.
    pub fn from_fn(n: usize, spacing: f64, origin: f64, hbar: f64, f: impl Fn(f64) -> C64) -> Result<Self> {
        let raw: Vec<C64> = (0..n).map(|j| f(origin + j as f64 * spacing)).collect();
        let norm = (raw.iter().map(|z| z.norm_sqr()).sum::<f64>() * spacing).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::validation("wavefunction-normalized", "wavefunction vanishes on the grid"));
        }
        Self::new(raw.into_iter().map(|z| z / norm).collect(), spacing, origin, hbar)
    }

    /// Grid spacing that gives position and momentum windows of equal reach,
    /// in standard deviations, for a minimum-uncertainty packet of width `sigma`.
    pub fn balanced_spacing(n: usize, sigma: f64) -> f64 {
        sigma * (4.0 * PI / n as f64).sqrt()
    }

    /// Minimum-uncertainty packet with Δx = `sigma`, centered on a symmetric grid.
    pub fn gaussian(n: usize, sigma: f64, hbar: f64) -> Result<Self> {
        let dx = Self::balanced_spacing(n, sigma);
        let origin = -(n as f64 / 2.0) * dx;
        Self::from_fn(n, dx, origin, hbar, |x| C64::new((-x * x / (4.0 * sigma * sigma)).exp(), 0.0))
    }

    /// Equal superposition of two width-`sigma` packets centered at ±separation/2.
    pub fn two_peaks(n: usize, sigma: f64, separation: f64, hbar: f64) -> Result<Self> {
        let dx = Self::balanced_spacing(n, sigma);
        let origin = -(n as f64 / 2.0) * dx;
        let half = separation / 2.0;
        Self::from_fn(n, dx, origin, hbar, |x| {
            let g = |c: f64| (-(x - c) * (x - c) / (4.0 * sigma * sigma)).exp();
            C64::new(g(-half) + g(half), 0.0)
        })
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|j| self.origin + j as f64 * self.spacing)
    }

    /// 2πħ/(N·dx)
    pub fn momentum_spacing(&self) -> f64 {
        2.0 * PI * self.hbar / (self.len() as f64 * self.spacing)
    }

    pub fn position_density(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Momentum grid (centered, ascending) and |φ(p)|² normalized so that
    /// Σ|φ|²·Δp = 1.
    pub fn momentum_density(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        let coeffs = dft(&self.samples, -1);
        let dp = self.momentum_spacing();
        let scale = self.spacing / dp;
        let half = n / 2;
        let mut momenta = Vec::with_capacity(n);
        let mut density = Vec::with_capacity(n);
        // Frequencies m ∈ [−N/2, N/2) live at index m mod N.
        for k in 0..n {
            let m = k as isize - half as isize;
            let idx = m.rem_euclid(n as isize) as usize;
            momenta.push(m as f64 * dp);
            density.push(coeffs[idx].norm_sqr() * scale);
        }
        (momenta, density)
    }

    fn check_leakage(&self) -> Result<()> {
        let edge_check = |values: &[f64], axis: &str| -> Result<()> {
            let peak = values.iter().copied().fold(0.0, f64::max);
            let edge = values[0].max(values[values.len() - 1]);
            // Densities are squared amplitudes.
            if edge.sqrt() > LEAKAGE_TOL * peak.sqrt() {
                return Err(Error::validation(
                    "boundary-leakage",
                    format!("{axis} edge amplitude is {:e} of the peak; widen the grid", (edge / peak).sqrt()),
                ));
            }
            Ok(())
        };
        edge_check(&self.position_density(), "position")?;
        edge_check(&self.momentum_density().1, "momentum")
    }
}

fn differential_entropy(density: &[f64], step: f64) -> f64 {
    -density.iter().filter(|&&d| d > 0.0).map(|&d| d * d.ln()).sum::<f64>() * step
}

fn rms_deviation(points: &[f64], density: &[f64], step: f64) -> f64 {
    let mean: f64 = points.iter().zip(density).map(|(x, d)| x * d).sum::<f64>() * step;
    let var: f64 = points.iter().zip(density).map(|(x, d)| (x - mean).powi(2) * d).sum::<f64>() * step;
    var.sqrt()
}

/// Differential entropies of |ψ(x)|² and |φ(p)|² by Riemann sums.
pub fn position_momentum_entropies(w: &GridWavefunction) -> Result<(EntropyValue, EntropyValue)> {
    w.check_leakage()?;
    let sx = differential_entropy(&w.position_density(), w.spacing);
    let (_, pd) = w.momentum_density();
    let sp = differential_entropy(&pd, w.momentum_spacing());
    Ok((EntropyValue::from_nats(sx), EntropyValue::from_nats(sp)))
}

/// S_X + S_P against ln(2πħ); the relation is approximate, so the report
/// records the slack and passes when it exceeds −1e−3.
pub fn entropic_uncertainty_check(w: &GridWavefunction) -> Result<BoundReport> {
    let (sx, sp) = position_momentum_entropies(w)?;
    Ok(BoundReport::new(sx.nats + sp.nats, Relation::AtLeast, (2.0 * PI * w.hbar).ln(), "nats", UNCERTAINTY_SLACK_TOL)
        .with_detail("position_entropy", sx.nats)
        .with_detail("momentum_entropy", sp.nats))
}

/// Δx·Δp from grid moments against ħ/e, with the entropy-implied lower bound
/// `e^{S_X+S_P}/(2πe)` reported alongside.
pub fn heisenberg_from_entropy(w: &GridWavefunction) -> Result<BoundReport> {
    let (sx, sp) = position_momentum_entropies(w)?;
    let xs: Vec<f64> = w.positions().collect();
    let dx = rms_deviation(&xs, &w.position_density(), w.spacing);
    let (ps, pd) = w.momentum_density();
    let dp = rms_deviation(&ps, &pd, w.momentum_spacing());
    let entropy_bound = (sx.nats + sp.nats).exp() / (2.0 * PI * E);
    let mut report = BoundReport::new(dx * dp, Relation::AtLeast, w.hbar / E, "action", UNCERTAINTY_SLACK_TOL)
        .with_detail("delta_x", dx)
        .with_detail("delta_p", dp)
        .with_detail("entropy_bound", entropy_bound);
    // Max-entropy step of the chain: a Gaussian has the largest entropy for given variance.
    if dx * dp < entropy_bound * (1.0 - 1e-9) {
        report.passed = false;
        report.warnings.push("moment product fell below the entropy-implied bound".into());
    }
    Ok(report)
}
