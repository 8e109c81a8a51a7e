// Block codes over a signal alphabet: the volume chain
// `V(ρ^(L)) ≤ Π V(ρ̄_l) ≤ V(ρ)^L`, typical-set sizes and finite-length rates.
//
// ```bash
// cargo run --example block_codes
// ```

use ensvol::ensembles::{DensityOperator, SignalEnsemble};
use ensvol::information::{block_volume_bounds, finite_block_rate, typical_count, typical_volume, BlockCode};
use ensvol::numerics::Rng;
use ensvol::volume::VolumeContext;

pub fn run_example() -> ensvol::Result<()> {
    let ctx = VolumeContext::new();
    let zero = DensityOperator::basis(2, 0)?;
    let plus = DensityOperator::pure_real(&[1.0, 1.0])?;
    let signals = SignalEnsemble::new(vec![zero.into(), plus.into()], vec![0.5, 0.5])?;

    for length in [2, 3] {
        let tv = typical_volume(&signals, length, &ctx)?;
        let tc = typical_count(signals.priors(), length)?;
        println!("L = {length}: ln V_typ = {:.6}, ln N_typ = {:.6}", tv.ln, tc.ln);

        let indep = BlockCode::independent(signals.clone(), length)?;
        let b = block_volume_bounds(&indep, &ctx)?;
        println!("  independent: slacks {:.2e} / {:.2e}", b.projection.slack, b.slot_chain.slack);

        // Equal priors fix exactly L/2 of each signal, which needs even L.
        if length % 2 == 0 {
            let tclass = BlockCode::type_class(signals.clone(), length)?;
            let b = block_volume_bounds(&tclass, &ctx)?;
            println!("  type class: {} blocks, projection slack {:.6}", tclass.blocks().len(), b.projection.slack);
        }

        let mut rng = Rng::new(length as u64);
        let mut worst = f64::INFINITY;
        for _ in 0..20 {
            let code = BlockCode::random_constrained(signals.clone(), length, &mut rng)?;
            let b = block_volume_bounds(&code, &ctx)?;
            worst = worst.min(b.projection.slack.min(b.slot_chain.slack));
        }
        println!("  20 random codes: smallest slack {worst:.3e}");
        println!("  rate {:.6} bits per signal", finite_block_rate(&indep, &ctx)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
