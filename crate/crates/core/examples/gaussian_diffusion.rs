// Gaussian phase-space ensembles: volume growth under diffusion, volume
// conservation under rotation and symplectic maps, and the marginal bound.
//
// ```bash
// cargo run --example gaussian_diffusion
// ```

use ensvol::ensembles::{random_covariance, Ensemble, GaussianEnsemble};
use ensvol::numerics::Rng;
use ensvol::semiclassical::{
    apply_symplectic, marginal_volume_check, ou_evolve, random_symplectic, volume_trajectory, OuProcess,
};
use ensvol::volume::{volume, VolumeContext};
use nalgebra::DMatrix;

pub fn run_example() -> ensvol::Result<()> {
    let ctx = VolumeContext::new();
    let g = GaussianEnsemble::from_diagonal(&[1.0, 1.0])?;

    let diffusion = OuProcess::diffusion_only(DMatrix::identity(2, 2))?;
    let traj = ou_evolve(&g, &diffusion, 0.01, 100)?;
    let vols = volume_trajectory(&traj, &ctx)?;
    println!("pure diffusion: V(1)/V(0) = {:.8}", vols[100].volume / vols[0].volume);

    let rotation = OuProcess::new(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]), DMatrix::zeros(2, 2))?;
    let squeezed = GaussianEnsemble::from_diagonal(&[4.0, 0.25])?;
    let traj = ou_evolve(&squeezed, &rotation, 0.01, 300)?;
    let vols = volume_trajectory(&traj, &ctx)?;
    let spread = vols.iter().map(|p| p.volume).fold(0.0_f64, |m, v| m.max((v - vols[0].volume).abs()));
    println!("rotation: volume varies by at most {spread:.2e}");

    let mut rng = Rng::new(3);
    let g2 = random_covariance(2, &mut rng)?;
    let m = random_symplectic(2, &mut rng);
    let before = volume(&Ensemble::from(g2.clone()), &ctx)?;
    let after = volume(&Ensemble::from(apply_symplectic(&g2, &m)?), &ctx)?;
    println!("symplectic map: V {before:.6} → {after:.6}");

    let h = marginal_volume_check(&g2);
    println!("det Σ = {:.6} ≤ Π Σ_ii = {:.6}", h.details["det"], h.details["diagonal_product"]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
