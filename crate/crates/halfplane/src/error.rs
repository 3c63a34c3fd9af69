use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("spectral map domain error: {0}")]
    Domain(String),

    #[error("evaluation at a branch point: {0}")]
    BranchPoint(String),

    #[error("branch selection failed inverting the uniformization map at {zt}")]
    BranchSelection { zt: Complex64 },

    #[error("point {xi} is not on any built contour segment")]
    Classification { xi: Complex64 },

    #[error("quadrature truncation insufficient for field point (z = {z}); refine or raise truncation")]
    RefinementNeeded { z: f64 },

    #[error("transform kernel diverges against data decay (Im kappa = {im_kappa})")]
    Convergence { im_kappa: f64 },

    #[error("system solve too close to a determinant zero at xi = {xi} (|D| = {det_mag:.3e})")]
    NearPole { xi: Complex64, det_mag: f64 },

    #[error("secular equation has no sign change in the search window")]
    SecularFailure,

    #[error("far-field fit is ill-conditioned: {0}")]
    FitFailure(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("grid too coarse for residual stencil: need step <= {required}, got {got}")]
    GridTooCoarse { required: f64, got: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
