//! Parametric array SNR model, platform curvature-noise floors and the
//! curvature-over-noise SNR.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::model::{PhysicalConstants, UnitMode};

/// Inputs to the parametric SNR model plus its normalization point.
///
/// Defaults are the threshold-contour parameter set (`N₀ = 10³`,
/// `d₀ = 0.05 m`), evaluated at the reference point itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SnrParameters {
    pub n_units: f64,
    /// Detector spacing / Casimir gap d, m.
    pub spacing: f64,
    pub finesse: f64,
    /// QET repetition rate f, Hz.
    pub rep_rate: f64,
    /// Squeezing parameter r (0 means unsqueezed).
    pub squeeze: f64,
    pub g_ent: f64,
    pub g_shape: f64,
    pub g_multi: f64,
    pub g_noise: f64,
    pub ref_n: f64,
    pub ref_d: f64,
}

impl Default for SnrParameters {
    fn default() -> Self {
        Self {
            n_units: 1e3,
            spacing: 0.05,
            finesse: 1e4,
            rep_rate: 1e5,
            squeeze: 1.5,
            g_ent: 10.0,
            g_shape: 5.0,
            g_multi: 3.0,
            g_noise: 1.0,
            ref_n: 1e3,
            ref_d: 0.05,
        }
    }
}

impl SnrParameters {
    /// The finesse-sweep parameter set: r = 1.5, f = 10⁵ Hz, all gains 2.
    pub fn finesse_sweep(finesse: f64) -> Self {
        Self {
            finesse,
            g_ent: 2.0,
            g_shape: 2.0,
            g_multi: 2.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("n_units", self.n_units)?;
        ensure_positive("spacing", self.spacing)?;
        ensure_positive("finesse", self.finesse)?;
        ensure_positive("rep_rate", self.rep_rate)?;
        if !(self.squeeze >= 0.0 && self.squeeze.is_finite()) {
            return Err(Error::invalid(
                "squeeze",
                format!("must be >= 0 (got {})", self.squeeze),
            ));
        }
        ensure_positive("g_ent", self.g_ent)?;
        ensure_positive("g_shape", self.g_shape)?;
        ensure_positive("g_multi", self.g_multi)?;
        ensure_positive("g_noise", self.g_noise)?;
        ensure_positive("ref_n", self.ref_n)?;
        ensure_positive("ref_d", self.ref_d)
    }

    /// Copy with `(n_units, spacing)` moved to the reference point.
    pub fn at_reference(&self) -> Self {
        Self {
            n_units: self.ref_n,
            spacing: self.ref_d,
            ..*self
        }
    }
}

/// Detector, technical and gap noise floors, quadrature-combined into the
/// effective noise factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseFloorTable3 {
    pub detector_floor: f64,
    pub technical_floor: f64,
    /// Gap noise is `gap_coeff / (d in µm)`.
    pub gap_coeff: f64,
}

impl Default for NoiseFloorTable3 {
    fn default() -> Self {
        Self {
            detector_floor: 1e-4,
            technical_floor: 1e-3,
            gap_coeff: 1e-2,
        }
    }
}

impl NoiseFloorTable3 {
    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("detector_floor", self.detector_floor),
            ("technical_floor", self.technical_floor),
            ("gap_coeff", self.gap_coeff),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(what, format!("must be >= 0 (got {v})")));
            }
        }
        Ok(())
    }

    pub fn gap_noise(&self, spacing_m: f64) -> f64 {
        self.gap_coeff / (spacing_m * 1e6)
    }

    /// `1 + √(detector² + technical² + gap(d)²)`.
    pub fn penalty(&self, spacing_m: f64) -> f64 {
        let gap = self.gap_noise(spacing_m);
        1.0 + (self.detector_floor.powi(2) + self.technical_floor.powi(2) + gap * gap).sqrt()
    }
}

/// `(N/d³ · F/π · G_ent·G_shape·G_multi) / (f^(-1/2) · e^(-r) · G_eff)` with
/// unit prefactor. `G_eff` is `g_noise`, times the noise-floor penalty when a
/// table is supplied.
pub fn snr_parametric(p: &SnrParameters, noise: Option<&NoiseFloorTable3>) -> Result<f64> {
    p.validate()?;
    if let Some(n) = noise {
        n.validate()?;
    }
    let signal = p.n_units / p.spacing.powi(3) * (p.finesse / PI) * p.g_ent * p.g_shape * p.g_multi;
    let g_eff = p.g_noise * noise.map_or(1.0, |n| n.penalty(p.spacing));
    let noise_term = (1.0 / p.rep_rate.sqrt()) * (-p.squeeze).exp() * g_eff;
    Ok(signal / noise_term)
}

/// SNR relative to the same model at `(ref_n, ref_d)`; exactly 1 there.
pub fn snr_normalized(p: &SnrParameters, noise: Option<&NoiseFloorTable3>) -> Result<f64> {
    Ok(snr_parametric(p, noise)? / snr_parametric(&p.at_reference(), noise)?)
}

/// Curvature noise floor of a sensing platform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "platform", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PlatformNoise {
    /// Shot-noise-limited interferometer: `(λ/L²)·T^(-1/2)/SNR_opt`.
    Interferometer {
        wavelength: f64,
        arm_length: f64,
        integration_time: f64,
        snr_opt: f64,
    },
    /// `δa_min/L`; units are nominal.
    Mems { da_min: f64, length: f64 },
    /// Clock stability inverted through `Δf/f ∼ δR·L²/c²`.
    Clock { stability: f64, length: f64 },
}

impl PlatformNoise {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PlatformNoise::Interferometer {
                wavelength,
                arm_length,
                integration_time,
                snr_opt,
            } => {
                ensure_positive("wavelength", wavelength)?;
                ensure_positive("arm_length", arm_length)?;
                ensure_positive("integration_time", integration_time)?;
                ensure_positive("snr_opt", snr_opt)
            }
            PlatformNoise::Mems { da_min, length } => {
                ensure_positive("da_min", da_min)?;
                ensure_positive("length", length)
            }
            PlatformNoise::Clock { stability, length } => {
                ensure_positive("stability", stability)?;
                ensure_positive("length", length)
            }
        }
    }
}

/// σ_R for the platform, m⁻². The clock floor uses `c` from `constants`
/// (`stability/L²` in natural units).
pub fn sigma_r_platform(noise: &PlatformNoise, constants: &PhysicalConstants) -> Result<f64> {
    noise.validate()?;
    Ok(match *noise {
        PlatformNoise::Interferometer {
            wavelength,
            arm_length,
            integration_time,
            snr_opt,
        } => wavelength / (arm_length * arm_length) / integration_time.sqrt() / snr_opt,
        PlatformNoise::Mems { da_min, length } => da_min / length,
        PlatformNoise::Clock { stability, length } => {
            let c2 = match constants.unit_mode() {
                UnitMode::Si => constants.c() * constants.c(),
                UnitMode::Natural => 1.0,
            };
            stability * c2 / (length * length)
        }
    })
}

/// `N·δR₀/σ_R`.
pub fn snr_curvature(n_units: f64, delta_r0: f64, sigma_r: f64) -> Result<f64> {
    ensure_positive("sigma_r", sigma_r)?;
    if !(n_units >= 0.0 && n_units.is_finite()) {
        return Err(Error::invalid("n_units", format!("must be >= 0 (got {n_units})")));
    }
    if !delta_r0.is_finite() {
        return Err(Error::invalid("delta_r0", "must be finite"));
    }
    Ok(n_units * delta_r0 / sigma_r)
}

/// Array size at which `snr_curvature` reaches 1.
pub fn threshold_units(delta_r0: f64, sigma_r: f64) -> Result<f64> {
    ensure_positive("delta_r0", delta_r0)?;
    ensure_positive("sigma_r", sigma_r)?;
    Ok(sigma_r / delta_r0)
}
