mod volumes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/volumes.rs"));
}

mod linear_algebra {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/linear_algebra.rs"));
}

mod axiom_checks {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/axiom_checks.rs"));
}

mod fuzz_axioms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fuzz_axioms.rs"));
}

mod holevo_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/holevo_bounds.rs"));
}

mod block_codes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/block_codes.rs"));
}

mod gaussian_diffusion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gaussian_diffusion.rs"));
}

mod correspondence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/correspondence.rs"));
}

mod uncertainty {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/uncertainty.rs"));
}

mod documents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/documents.rs"));
}

#[test]
fn volumes_example_runs() {
    volumes::run_example().expect("volumes example should run");
}

#[test]
fn linear_algebra_example_runs() {
    linear_algebra::run_example().expect("linear_algebra example should run");
}

#[test]
fn axiom_checks_example_runs() {
    axiom_checks::run_example().expect("axiom_checks example should run");
}

#[test]
fn fuzz_axioms_example_runs() {
    fuzz_axioms::run_example().expect("fuzz_axioms example should run");
}

#[test]
fn holevo_bounds_example_runs() {
    holevo_bounds::run_example().expect("holevo_bounds example should run");
}

#[test]
fn block_codes_example_runs() {
    block_codes::run_example().expect("block_codes example should run");
}

#[test]
fn gaussian_diffusion_example_runs() {
    gaussian_diffusion::run_example().expect("gaussian_diffusion example should run");
}

#[test]
fn correspondence_example_runs() {
    correspondence::run_example().expect("correspondence example should run");
}

#[test]
fn uncertainty_example_runs() {
    uncertainty::run_example().expect("uncertainty example should run");
}

#[test]
fn documents_example_runs() {
    documents::run_example().expect("documents example should run");
}
