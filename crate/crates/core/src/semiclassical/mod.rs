//! Gaussian diffusion volumes, the classical/quantum correspondence
//! constant, and semiclassical uncertainty relations.

mod ou;
mod symplectic;
mod thermal;
mod wave;

pub use ou::{ou_evolve, volume_trajectory, OuProcess, Trajectory, VolumePoint};
pub use symplectic::{
    apply_symplectic, marginal_volume_check, random_symplectic, symplectic_defect, symplectic_form, HADAMARD_TOL,
    SYMPLECTIC_TOL,
};
pub use thermal::{classical_entropy_from_state, correspondence_ratio, correspondence_sweep, ThermalOscillator};
pub use wave::{
    entropic_uncertainty_check, heisenberg_from_entropy, position_momentum_entropies, GridWavefunction, LEAKAGE_TOL,
    UNCERTAINTY_SLACK_TOL,
};
