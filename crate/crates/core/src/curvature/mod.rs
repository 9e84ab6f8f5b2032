//! Stress-energy to curvature maps: the local weak-field response, gated
//! curvature pulses, the traveling compression profile, the 1+1D retarded
//! solver and dip tracking.

mod gated;
mod qix;
mod retarded;
mod static_map;
mod track;

pub use gated::{gated_pulse, GatedPulseSpec};
pub use qix::{qix_analytic, simulate_qix_chain, QixChainConfig, QixProfile};
pub use retarded::{solve_retarded, CFL_SLACK};
pub use static_map::{static_curvature, CurvatureMap, SignConvention};
pub use track::{track_dip, track_dip_with, DipPoint, DipTrack, DEFAULT_EDGE_FRACTION};
