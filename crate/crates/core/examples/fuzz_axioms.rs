// Seeded fuzzing of every property over random quantum and classical
// ensembles. Reports carry a witness that replays the worst trial.
//
// ```bash
// cargo run --release --example fuzz_axioms
// ```

use ensvol::axioms::{fuzz, renyi_projection_violation_search, AxiomId, FuzzConfig};
use ensvol::ensembles::Kind;
use ensvol::numerics::Rng;
use ensvol::volume::VolumeContext;

pub fn run_example() -> ensvol::Result<()> {
    let ctx = VolumeContext::new();
    for kind in [Kind::Quantum, Kind::Classical] {
        for axiom in [AxiomId::Invariance, AxiomId::Cartesian, AxiomId::Projection, AxiomId::Uniformity] {
            let cfg = FuzzConfig { trials: 100, seed: 7, kind, ..FuzzConfig::default() };
            let r = fuzz(axiom, &cfg, &ctx)?;
            let replay = r.reevaluate()?.unwrap_or(0.0);
            println!(
                "{kind:>9} {axiom:>3}: worst {:+.3e} (replay {:+.3e}), failures {}",
                r.worst_violation.unwrap_or(0.0),
                replay,
                r.failures
            );
        }
    }

    let r = renyi_projection_violation_search(2.0, (2, 2), 10_000, &mut Rng::new(7))?;
    println!("Rényi α = 2: {} of {} random 2×2 joints violate projection", r.failures, r.trials);
    println!("worst witness: {}", serde_json::to_string(&r.witness).unwrap());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
