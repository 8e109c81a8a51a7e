//! Ensemble volumes for classical, quantum and Gaussian ensembles.
//!
//! The volume of an ensemble is `V(ρ) = K(Γ)·e^{S(ρ)}`, where `S` is the
//! Shannon, von Neumann or Gaussian differential entropy and `K(Γ)` is a
//! constant of the underlying space, multiplicative over subsystems. This
//! crate computes those volumes, checks the four properties that single the
//! measure out (invariance, Cartesian products, projections, uniform
//! mixtures), and uses them to evaluate communication bounds, diffusion
//! volumes and semiclassical uncertainty relations.
//!
//! ```
//! use ensvol::ensembles::{DensityOperator, Ensemble};
//! use ensvol::volume::{volume, VolumeContext};
//!
//! let rho: Ensemble = DensityOperator::maximally_mixed(2)?.into();
//! let v = volume(&rho, &VolumeContext::new())?;
//! assert!((v - 2.0).abs() < 1e-12);
//! # Ok::<(), ensvol::Error>(())
//! ```

pub mod axioms;
pub mod cli;
pub mod ensembles;
mod error;
pub mod information;
pub mod numerics;
pub mod semiclassical;
pub mod volume;

pub use error::{Error, Result};
