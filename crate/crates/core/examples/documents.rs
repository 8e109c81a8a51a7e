// JSON ensemble documents and the command line driven in-process.
//
// ```bash
// cargo run --example documents
// ```

use ensvol::cli::document::EnsembleDocument;
use ensvol::cli::{run, RunReport};
use ensvol::ensembles::{DensityOperator, Ensemble, SignalEnsemble};

pub fn run_example() -> ensvol::Result<()> {
    let zero = DensityOperator::basis(2, 0)?;
    let plus = DensityOperator::pure_real(&[1.0, 1.0])?;
    let signals = SignalEnsemble::new(vec![zero.into(), plus.into()], vec![0.5, 0.5])?;
    let doc = EnsembleDocument::from_signal(&signals);
    println!("{}", doc.to_json());

    let dir = std::env::temp_dir().join(format!("ensvol-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| ensvol::Error::Unsupported(e.to_string()))?;
    let path = dir.join("zero_plus.json");
    std::fs::write(&path, doc.to_json()).map_err(|e| ensvol::Error::Unsupported(e.to_string()))?;

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["ensvol", "chi", path.to_str().unwrap(), "--compact"], &mut out, &mut err);
    let report: RunReport = serde_json::from_slice(&out).expect("report is JSON");
    println!("exit {code}: χ = {} nats", report.results["chi_nats"]);

    let mixed: Ensemble = DensityOperator::maximally_mixed(2)?.into();
    let back = EnsembleDocument::parse(&EnsembleDocument::from_ensemble(&mixed).to_json())?.to_ensemble()?;
    assert_eq!(back, mixed);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> ensvol::Result<()> {
    run_example()
}
