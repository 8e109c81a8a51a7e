// Classical and quantum entropies of a thermal oscillator. The ratio of
// their volumes approaches Planck's constant at high temperature.
//
// ```bash
// cargo run --example correspondence
// ```

use ensvol::semiclassical::{classical_entropy_from_state, correspondence_sweep, ThermalOscillator};

pub fn run_example() -> ensvol::Result<()> {
    for hbar in [1.0, 2.0] {
        let h = 2.0 * std::f64::consts::PI * hbar;
        println!("ħ = {hbar}, h = {h:.6}");
        for (ratio, value) in correspondence_sweep(&[1.0, 10.0, 100.0, 1e3, 1e4], hbar)? {
            println!("  kT/ħω = {ratio:>7}: e^(S_C − S_Q) = {value:.9}  ({:+.2e})", value / h - 1.0);
        }
    }
    let osc = ThermalOscillator::new(2.0, 0.5, 3.0, 1.0)?;
    println!(
        "closed-form S_C = {:.12}, from the Gaussian state = {:.12}",
        osc.classical_entropy(),
        classical_entropy_from_state(&osc)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
