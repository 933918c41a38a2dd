//! Numerical toolkit for spectral windows and shifted resolvents of √(−Δ)
//! on model manifolds: flat tori Tⁿ, round spheres Sⁿ, and synthetic Zoll
//! spectra with clustered eigenvalues.
//!
//! The crate is organised around six modules:
//!
//! * [`spectra`] — eigenvalue tables with multiplicities, Weyl counts,
//!   spectral windows, and shell-density scans.
//! * [`special`] — Bessel/Gegenbauer evaluation, zonal projector kernels,
//!   the Fourier transform of the sphere surface measure, and the smooth
//!   cutoff suite every multiplier construction shares.
//! * [`multipliers`] — one-dimensional Fourier multiplier checks for the
//!   shifted resolvent: half-line and pole-pair transforms, the localized
//!   wave multiplier, its remainder, and envelope fits.
//! * [`opnorms`] — grid-based lower bounds on operator norms L^{p'} → L^p
//!   via multi-start nonlinear power ascent, kernel sup norms, and scaling
//!   fits.
//! * [`expsums`] — lattice-shell exponential sums: quadruple counts,
//!   oscillatory Hlawka-type sums, and band/mollified kernel sups.
//! * [`harness`] — experiment configs, named recipes, deterministic RNG
//!   substreams, CSV/JSON reports, and the on-disk cache.
//!
//! The independent reference implementations used by the test suites live
//! in [`oracles`].

pub mod expsums;
mod fftutil;
pub mod harness;
pub mod multipliers;
pub mod opnorms;
pub mod oracles;
pub mod quad;
pub mod special;
pub mod spectra;

use thiserror::Error;

/// Unified error type for the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("lambda {lambda} exceeds the enumerated horizon {horizon}")]
    HorizonExceeded { lambda: f64, horizon: f64 },
    #[error("enumeration would visit ~{needed} lattice points, cap is {cap}")]
    EnumerationCap { needed: u64, cap: u64 },
    #[error("shift is within {dist:e} of an eigenvalue square (pole guard)")]
    PoleProximity { dist: f64 },
    #[error("window [{lo}, {hi}] contains no spectrum")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("cap contains no lattice modes")]
    EmptyCap,
    #[error("quadrature did not reach tolerance: achieved {achieved:e}, requested {requested:e}")]
    Quadrature { achieved: f64, requested: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),
    #[error("cache entry for key `{key}` is corrupt")]
    CacheCorrupt { key: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
