//! Detector observables driven by a curvature amplitude.
//!
//! Each formula is implemented exactly as printed. Several are not
//! dimensionally consistent: `δR·L²` is a pure number but is used as a path
//! length, and the clock-drift and time-dependent path-shift forms carry a
//! stray time factor. Results are reported in the nominal units below.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};
use crate::model::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferometerSpec {
    /// Arm length L, m.
    pub arm_length: f64,
    /// Optical wavelength λ, m.
    pub wavelength: f64,
    /// Baseline L₀ for the time-dependent path shift, m.
    pub baseline: f64,
}

impl InterferometerSpec {
    pub fn new(arm_length: f64, wavelength: f64, baseline: f64) -> Result<Self> {
        ensure_positive("interferometer arm_length", arm_length)?;
        ensure_positive("interferometer wavelength", wavelength)?;
        ensure_positive("interferometer baseline", baseline)?;
        Ok(Self {
            arm_length,
            wavelength,
            baseline,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClockSpec {
    /// Spatial extent of significant curvature, m.
    pub extent: f64,
    /// Pulse duration, s.
    pub duration: f64,
    /// Fractional frequency stability floor.
    pub stability: f64,
}

impl ClockSpec {
    pub fn new(extent: f64, duration: f64, stability: f64) -> Result<Self> {
        ensure_positive("clock extent", extent)?;
        ensure_positive("clock duration", duration)?;
        ensure_positive("clock stability", stability)?;
        Ok(Self {
            extent,
            duration,
            stability,
        })
    }
}

/// Optical phase `Δφ = (2π/λ)·δR·L²`, rad.
pub fn phase_shift(delta_r: f64, spec: &InterferometerSpec) -> f64 {
    2.0 * PI / spec.wavelength * delta_r * spec.arm_length * spec.arm_length
}

/// `ΔL(t) = ½·δR(t)·L₀·t²`.
pub fn path_shift_t(delta_r_t: f64, spec: &InterferometerSpec, t: f64) -> f64 {
    0.5 * delta_r_t * spec.baseline * t * t
}

/// Fractional clock drift `Δτ/τ = δR·L²·Δt/12`.
pub fn clock_drift(delta_r: f64, spec: &ClockSpec) -> f64 {
    delta_r * spec.extent * spec.extent * spec.duration / 12.0
}

/// Fractional frequency shift `Δf/f = δR·L²/c²`.
pub fn clock_freq_shift(delta_r: f64, length: f64, constants: &PhysicalConstants) -> f64 {
    let c = constants.c();
    delta_r * length * length / (c * c)
}

/// Strain `h = ½·δR·L²`.
pub fn strain(delta_r: f64, length: f64) -> f64 {
    0.5 * delta_r * length * length
}
