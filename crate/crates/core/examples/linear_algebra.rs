// The dense complex toolkit underneath the quantum ensembles: Hermitian
// eigendecomposition, Kronecker products and partial traces.
//
// ```bash
// cargo run --example linear_algebra
// ```

use ensvol::numerics::{dft, hermitian_eigen, kron, partial_trace, Complex64, ComplexMatrix};

pub fn run_example() -> ensvol::Result<()> {
    let i = Complex64::i();
    let y = ComplexMatrix::from_rows(&[vec![0.0.into(), -i], vec![i, 0.0.into()]])?;
    let spec = hermitian_eigen(&y)?;
    println!("eigenvalues of σ_y: {:?}", spec.eigenvalues);
    assert!(spec.reconstruct().max_abs_diff(&y) < 1e-12);

    let a = ComplexMatrix::from_real_diag(&[0.9, 0.1]);
    let b = ComplexMatrix::from_real_diag(&[0.5, 0.3, 0.2]);
    let ab = kron(&a, &b);
    let back = partial_trace(&ab, &[2, 3], 1)?;
    println!("Tr_A(A ⊗ B) recovers B to {:.1e}", back.max_abs_diff(&b));

    let impulse: Vec<Complex64> = (0..8).map(|k| if k == 0 { 1.0.into() } else { 0.0.into() }).collect();
    let flat = dft(&impulse, -1);
    println!("DFT of an impulse: every coefficient = {:.6}", flat[3].re);
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
