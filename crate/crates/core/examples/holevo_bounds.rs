// Holevo χ of a two-signal qubit alphabet, its upper bounds, and the
// single-measurement bound for a given resolution volume.
//
// ```bash
// cargo run --example holevo_bounds
// ```

use ensvol::ensembles::{mix, DensityOperator, SignalEnsemble};
use ensvol::information::{holevo_chi, information_rate_bound, lanford_robinson, single_measurement_bound};
use ensvol::volume::VolumeContext;

pub fn run_example() -> ensvol::Result<()> {
    let zero = DensityOperator::basis(2, 0)?;
    let plus = DensityOperator::pure_real(&[1.0, 1.0])?;
    let signals = SignalEnsemble::new(vec![zero.into(), plus.into()], vec![0.5, 0.5])?;

    let chi = holevo_chi(&signals)?;
    println!("χ = {:.7} nats = {:.7} bits", chi.nats, chi.bits());

    let lr = lanford_robinson(&signals)?;
    println!("χ ≤ H(p): {:.7} ≤ {:.7}, slack {:.7}", lr.lhs, lr.rhs, lr.slack);

    let rate = information_rate_bound(&signals)?;
    println!("rate bound: {:.7} bits per signal", rate.rhs);

    let ctx = VolumeContext::new();
    for v0 in [1.0, 1.2, 2.0] {
        let b = single_measurement_bound(&mix(&signals)?, v0, &ctx)?;
        println!("V₀ = {v0}: at most {:.4} bits from one measurement", b.rhs);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
