// Position and momentum entropies of wavefunctions sampled on a grid, and
// the uncertainty relations they imply.
//
// ```bash
// cargo run --release --example uncertainty
// ```

use ensvol::semiclassical::{entropic_uncertainty_check, heisenberg_from_entropy, GridWavefunction};

pub fn run_example() -> ensvol::Result<()> {
    let packet = GridWavefunction::gaussian(1024, 1.0, 1.0)?;
    let e = entropic_uncertainty_check(&packet)?;
    println!("Gaussian: S_X + S_P = {:.6}, bound ln 2πħ = {:.6}, slack {:.6}", e.lhs, e.rhs, e.slack);
    let h = heisenberg_from_entropy(&packet)?;
    println!("          Δx·Δp = {:.6} ≥ ħ/e = {:.6}", h.lhs, h.rhs);

    let cat = GridWavefunction::two_peaks(1024, 0.5, 4.0, 1.0)?;
    let e = entropic_uncertainty_check(&cat)?;
    let h = heisenberg_from_entropy(&cat)?;
    println!("two peaks: entropy slack {:.6}, Δx·Δp = {:.4}", e.slack, h.lhs);

    // A packet too wide for its grid is refused rather than mis-measured.
    let wide = GridWavefunction::from_fn(128, 0.05, -3.2, 1.0, |x| (-x * x / 8.0).exp().into())?;
    match entropic_uncertainty_check(&wide) {
        Err(err) => println!("wide packet: {err}"),
        Ok(r) => println!("wide packet unexpectedly accepted: {r:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
