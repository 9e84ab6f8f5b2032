//! Simulation toolkit for localized negative energy densities and the weak
//! curvature they induce.
//!
//! The crate covers Gaussian ⟨T₀₀⟩ sources and their array superpositions
//! ([`stress_energy`]), the map to curvature including a 1+1D retarded
//! solver ([`curvature`]), detector observables ([`observables`]), the
//! parametric SNR model and noise floors ([`snr`]), parameter sweeps with
//! contour extraction ([`sweep`]), and config/recipe driven data emission
//! ([`io`]).

pub mod curvature;
pub mod error;
pub mod io;
pub mod model;
pub mod observables;
pub mod snr;
pub mod stress_energy;
pub mod sweep;

pub use error::{Error, Result};

/// Version string written into every metadata sidecar.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
