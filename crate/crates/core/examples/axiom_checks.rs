// The four volume properties checked on hand-picked inputs, and the Rényi
// witness that breaks the projection property for α = 2.
//
// ```bash
// cargo run --example axiom_checks
// ```

use ensvol::axioms::{
    check_cartesian, check_invariance, check_projection, check_uniformity, hadamard, pinned_renyi_witness,
    uniform_grid, Witness, UNIFORMITY_GRID,
};
use ensvol::cli::document::EnsembleDocument;
use ensvol::ensembles::{random_density, DensityOperator, Ensemble, Transform};
use ensvol::numerics::Rng;
use ensvol::volume::VolumeContext;

pub fn run_example() -> ensvol::Result<()> {
    let ctx = VolumeContext::new();
    let mut rng = Rng::new(42);

    let rho: Ensemble = random_density(2, 2, &mut rng)?.into();
    let r = check_invariance(&rho, &Transform::Unitary(hadamard()), &ctx)?;
    println!("(i)   Hadamard drift          {:+.3e}  passed={}", r.worst_violation.unwrap(), r.passed);

    let a: Ensemble = DensityOperator::maximally_mixed(2)?.into();
    let b: Ensemble = DensityOperator::maximally_mixed(3)?.into();
    let r = check_cartesian(&a, &b, &ctx)?;
    println!("(ii)  I/2 ⊗ I/3 vs 2·3        {:+.3e}  passed={}", r.worst_violation.unwrap(), r.passed);

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityOperator::pure_real(&[h, 0.0, 0.0, h])?;
    let bell: Ensemble = DensityOperator::new(vec![2, 2], bell.matrix().clone())?.into();
    let r = check_projection(&bell, &ctx)?;
    println!("(iii) Bell state slack        {:+.6}  passed={}", r.worst_violation.unwrap(), r.passed);

    let up: Ensemble = DensityOperator::basis(2, 0)?.into();
    let down: Ensemble = DensityOperator::basis(2, 1)?.into();
    let r = check_uniformity(&up, &down, &uniform_grid(UNIFORMITY_GRID), &ctx)?;
    println!(
        "(iv)  peak V = {:.6} at λ = {}  passed={}",
        r.details["peak_volume"], r.details["argmax_lambda"], r.passed
    );

    let joint = EnsembleDocument::from_ensemble(&pinned_renyi_witness().into());
    for alpha in [2.0, 0.5] {
        let v = Witness::Renyi { joint: joint.clone(), alpha }.violation(&ctx)?;
        println!("Rényi α = {alpha}: V(joint) − V(m₁)V(m₂) = {v:+.6}");
    }
    let shannon = Witness::Projection { joint }.violation(&ctx)?;
    println!("Shannon:   V(joint) − V(m₁)V(m₂) = {shannon:+.6}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
