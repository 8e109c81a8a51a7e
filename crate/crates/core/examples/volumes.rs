// Entropies and volumes for each ensemble kind, and how space constants
// enter through a `VolumeContext`.
//
// ```bash
// cargo run --example volumes
// ```

use ensvol::ensembles::{ClassicalDistribution, DensityOperator, Ensemble, GaussianEnsemble};
use ensvol::volume::{entropy, renyi_entropy, thermodynamic_entropy, volume, VolumeContext};

pub fn run_example() -> ensvol::Result<()> {
    let ctx = VolumeContext::new();

    let coin: Ensemble = ClassicalDistribution::from_probs(vec![0.9, 0.1])?.into();
    let qubit: Ensemble = DensityOperator::diagonal(&[0.75, 0.25])?.into();
    let mode: Ensemble = GaussianEnsemble::from_diagonal(&[1.0, 1.0])?.into();

    for (name, e) in [("biased coin", &coin), ("mixed qubit", &qubit), ("unit gaussian", &mode)] {
        println!("{name:>14}: S = {:.6} nats, V = {:.6}", entropy(e)?.nats, volume(e, &ctx)?);
    }
    assert!((entropy(&coin)?.nats - 0.3250829733914482).abs() < 1e-12);

    // Pure states have volume K; the maximally mixed qubit doubles it.
    let ctx2 = VolumeContext::new().with_k("quantum:2", 3.0)?;
    let pure: Ensemble = DensityOperator::basis(2, 0)?.into();
    let mixed: Ensemble = DensityOperator::maximally_mixed(2)?.into();
    println!("K = 3: V(pure) = {}, V(I/2) = {}", volume(&pure, &ctx2)?, volume(&mixed, &ctx2)?);

    // Constants multiply over factors.
    let pair = pure.product(&mixed)?;
    println!("K = 3 on both factors: V(pure ⊗ I/2) = {}", volume(&pair, &ctx2)?);

    let c: Ensemble = ClassicalDistribution::from_probs(vec![0.8, 0.1, 0.1, 0.0])?.into();
    println!("Rényi-2 entropy of (0.8, 0.1, 0.1, 0) = {:.6}", renyi_entropy(&c, 2.0)?.nats);

    let reading = thermodynamic_entropy(&mixed, &ctx2, 1.380649e-23)?;
    println!("k·S = {:.4e} J/K over {} microstates", reading.entropy, reading.microstate_count);
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
