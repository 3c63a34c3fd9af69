//! Spectral solver for the time-harmonic elastodynamic half-plane under
//! prescribed surface tractions.
//!
//! The solver works entirely in spectral variables: surface tractions are
//! transformed along oscillatory kernels, a 2x2 algebraic system recovers
//! the surface-displacement transforms on a uniformized contour, and the
//! resulting jump densities are integrated back into displacement and
//! stress fields. Rayleigh waves enter as determinant zeros on the contour
//! and are handled by residue extraction, so generic loads radiate the
//! correct surface waves.
//!
//! Modules follow the pipeline:
//!
//! * [`medium`] material constants and derived wavenumbers
//! * [`spectral_maps`] Joukowski maps, the uniformization plane, branch cuts
//! * [`contours`] contour segments and quadrature rules
//! * [`boundary_data`] traction data and its spectral transforms
//! * [`global_relation`] the 2x2 system, determinant, Rayleigh roots, densities
//! * [`reconstruction`] contour-integral field evaluation
//! * [`lax_oracle`] independent field-side construction of the jump data
//! * [`verification`] manufactured solutions and residual suites
//! * [`cli`] run configuration and the subcommand pipelines
//!
//! See the crate examples for runnable entry points (`cargo run --example
//! rayleigh_speed`, etc.); the `halfplane` binary drives the same pipelines
//! from an INI-style config file.

pub mod boundary_data;
pub mod cli;
pub mod contours;
pub mod error;
pub mod global_relation;
pub mod lax_oracle;
pub mod medium;
pub mod reconstruction;
pub mod special;
pub mod spectral_maps;
pub mod verification;

mod quadrature;

pub use error::{Error, Result};
pub use medium::Medium;
