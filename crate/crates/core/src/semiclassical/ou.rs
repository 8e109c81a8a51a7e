use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::ensembles::{Ensemble, GaussianEnsemble};
use crate::error::{Error, Result};
use crate::volume::{ln_volume, VolumeContext};

/// Linear drift `A` and diffusion `D` of an Ornstein–Uhlenbeck process,
/// `dΣ/dt = AΣ + ΣAᵀ + D`, `dμ/dt = Aμ`.
#[derive(Clone, Debug, PartialEq)]
pub struct OuProcess {
    drift: DMatrix<f64>,
    diffusion: DMatrix<f64>,
}

impl OuProcess {
    pub fn new(drift: DMatrix<f64>, diffusion: DMatrix<f64>) -> Result<Self> {
        let n = drift.nrows();
        if drift.ncols() != n || diffusion.shape() != (n, n) || !n.is_multiple_of(2) || n == 0 {
            return Err(Error::validation("ou-shape", "drift and diffusion must be matching 2n×2n matrices"));
        }
        let asym = (&diffusion - diffusion.transpose()).amax();
        if asym > 1e-12 * diffusion.amax().max(1.0) {
            return Err(Error::validation("diffusion-symmetric", format!("max |D − Dᵀ| = {asym:e}")));
        }
        let diffusion = (&diffusion + diffusion.transpose()) * 0.5;
        let smallest = diffusion.clone().symmetric_eigen().eigenvalues.min();
        if smallest < -1e-12 {
            return Err(Error::validation("diffusion-psd", format!("smallest diffusion eigenvalue {smallest:e}")));
        }
        Ok(Self { drift, diffusion })
    }

    /// Pure diffusion, no drift.
    pub fn diffusion_only(diffusion: DMatrix<f64>) -> Result<Self> {
        let n = diffusion.nrows();
        Self::new(DMatrix::zeros(n, n), diffusion)
    }

    pub fn drift(&self) -> &DMatrix<f64> {
        &self.drift
    }

    pub fn diffusion(&self) -> &DMatrix<f64> {
        &self.diffusion
    }

    pub fn has_drift(&self) -> bool {
        self.drift.amax() != 0.0
    }

    pub fn diffusion_positive_definite(&self) -> bool {
        self.diffusion.clone().cholesky().is_some()
    }

    fn covariance_rate(&self, cov: &DMatrix<f64>) -> DMatrix<f64> {
        &self.drift * cov + cov * self.drift.transpose() + &self.diffusion
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub process: OuProcess,
    pub dt: f64,
    pub states: Vec<GaussianEnsemble>,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.states.len()).map(|k| k as f64 * self.dt)
    }
}

/// Classical RK4 on the covariance and mean; every point is revalidated.
pub fn ou_evolve(g: &GaussianEnsemble, process: &OuProcess, dt: f64, steps: usize) -> Result<Trajectory> {
    if g.mean().len() != process.drift.nrows() {
        return Err(Error::validation("ou-shape", "process dimension does not match the ensemble"));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::validation("time-step", format!("dt must be positive, got {dt}")));
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(g.clone());
    let mut cov = g.covariance().clone();
    let mut mean: DVector<f64> = g.mean().clone();
    for step in 1..=steps {
        let k1 = process.covariance_rate(&cov);
        let k2 = process.covariance_rate(&(&cov + &k1 * (dt / 2.0)));
        let k3 = process.covariance_rate(&(&cov + &k2 * (dt / 2.0)));
        let k4 = process.covariance_rate(&(&cov + &k3 * dt));
        cov += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);

        let a = &process.drift;
        let m1 = a * &mean;
        let m2 = a * (&mean + &m1 * (dt / 2.0));
        let m3 = a * (&mean + &m2 * (dt / 2.0));
        let m4 = a * (&mean + &m3 * dt);
        mean += (m1 + m2 * 2.0 + m3 * 2.0 + m4) * (dt / 6.0);

        cov = (&cov + cov.transpose()) * 0.5;
        let next = GaussianEnsemble::with_factors(g.factor_dofs().to_vec(), mean.clone(), cov.clone()).map_err(|e| {
            Error::Numerical(format!("step {step} left the positive-definite cone ({e}); reduce dt"))
        })?;
        states.push(next);
    }
    Ok(Trajectory { process: process.clone(), dt, states })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumePoint {
    pub time: f64,
    pub volume: f64,
}

/// Volume at each trajectory point. For drift-free processes with positive
/// definite diffusion the volume must grow at every step.
pub fn volume_trajectory(traj: &Trajectory, ctx: &VolumeContext) -> Result<Vec<VolumePoint>> {
    let mut out = Vec::with_capacity(traj.states.len());
    for (time, g) in traj.times().zip(&traj.states) {
        let e = Ensemble::Gaussian(g.clone());
        out.push(VolumePoint { time, volume: ln_volume(&e, ctx)?.exp() });
    }
    if !traj.process.has_drift() && traj.process.diffusion_positive_definite() {
        for (k, w) in out.windows(2).enumerate() {
            if w[1].volume.is_nan() || w[1].volume <= w[0].volume {
                return Err(Error::check_failed(
                    "volume-increase",
                    format!("volume did not increase at step {} ({} → {})", k + 1, w[0].volume, w[1].volume),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> GaussianEnsemble {
        GaussianEnsemble::from_diagonal(&[1.0, 1.0]).unwrap()
    }

    #[test]
    fn frozen_process_is_constant() {
        let p = OuProcess::new(DMatrix::zeros(2, 2), DMatrix::zeros(2, 2)).unwrap();
        let t = ou_evolve(&unit(), &p, 0.1, 10).unwrap();
        assert!(t.states.iter().all(|s| s == &unit()));
    }

    #[test]
    fn pure_diffusion_is_linear_in_time() {
        let p = OuProcess::diffusion_only(DMatrix::identity(2, 2)).unwrap();
        let t = ou_evolve(&unit(), &p, 0.01, 100).unwrap();
        let last = t.states.last().unwrap().covariance();
        assert!((last - DMatrix::identity(2, 2) * 2.0).amax() < 1e-8);
        let v = volume_trajectory(&t, &VolumeContext::new()).unwrap();
        assert!((v.last().unwrap().volume / v[0].volume - 2.0).abs() < 1e-6);
    }

    #[test]
    fn rotation_preserves_determinant() {
        let omega = 1.3;
        let a = DMatrix::from_row_slice(2, 2, &[0.0, omega, -omega, 0.0]);
        let p = OuProcess::new(a, DMatrix::zeros(2, 2)).unwrap();
        let g = GaussianEnsemble::from_diagonal(&[4.0, 0.25]).unwrap();
        let t = ou_evolve(&g, &p, 0.01, 500).unwrap();
        for s in &t.states {
            assert!((s.log_det().exp() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn diffusion_must_be_psd() {
        let d = DMatrix::from_diagonal_element(2, 2, -1.0);
        assert!(matches!(OuProcess::diffusion_only(d), Err(Error::Validation { check: "diffusion-psd", .. })));
    }

    #[test]
    fn oversized_step_is_reported() {
        // RK4 amplifies the anisotropic part of Σ by |R(4i)| ≈ 7.6 per step.
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, -2.0, 0.0]);
        let p = OuProcess::new(a, DMatrix::zeros(2, 2)).unwrap();
        let g = GaussianEnsemble::from_diagonal(&[4.0, 0.25]).unwrap();
        let err = ou_evolve(&g, &p, 1.0, 3).unwrap_err();
        assert!(matches!(err, Error::Numerical(ref m) if m.contains("step 1")), "{err:?}");
    }
}
