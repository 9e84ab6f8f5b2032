use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PhysicalConstants;
use crate::observables::{self, ClockSpec, InterferometerSpec};
use crate::snr::{self, NoiseFloorTable3, SnrParameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    SnrParametric,
    SnrNormalized,
    SnrCurvature,
    ArrayCurvature,
    ClockDrift,
    ClockFreqShift,
    PhaseShift,
    Strain,
}

/// A scalar model with its fixed parameters. Sweep axes override individual
/// parameters by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SweepModel {
    SnrParametric {
        params: SnrParameters,
        noise: Option<NoiseFloorTable3>,
    },
    SnrNormalized {
        params: SnrParameters,
        noise: Option<NoiseFloorTable3>,
    },
    SnrCurvature {
        n_units: f64,
        delta_r0: f64,
        sigma_r: f64,
    },
    /// Accumulated array curvature `N·δR₀`.
    ArrayCurvature {
        n_units: f64,
        delta_r0: f64,
    },
    ClockDrift {
        delta_r: f64,
        clock: ClockSpec,
    },
    ClockFreqShift {
        delta_r: f64,
        length: f64,
        constants: PhysicalConstants,
    },
    PhaseShift {
        delta_r: f64,
        interferometer: InterferometerSpec,
    },
    Strain {
        delta_r: f64,
        length: f64,
    },
}

impl SweepModel {
    /// The model with its default fixed parameters.
    pub fn with_defaults(kind: ModelKind, constants: PhysicalConstants) -> Self {
        match kind {
            ModelKind::SnrParametric => SweepModel::SnrParametric {
                params: SnrParameters::default(),
                noise: None,
            },
            ModelKind::SnrNormalized => SweepModel::SnrNormalized {
                params: SnrParameters::default(),
                noise: None,
            },
            ModelKind::SnrCurvature => SweepModel::SnrCurvature {
                n_units: 1.0,
                delta_r0: 1e-36,
                sigma_r: 1e-35,
            },
            ModelKind::ArrayCurvature => SweepModel::ArrayCurvature {
                n_units: 1.0,
                delta_r0: 1e-36,
            },
            ModelKind::ClockDrift => SweepModel::ClockDrift {
                delta_r: 1.2e-8,
                clock: ClockSpec {
                    extent: 1e-3,
                    duration: 1e-3,
                    stability: 1e-18,
                },
            },
            ModelKind::ClockFreqShift => SweepModel::ClockFreqShift {
                delta_r: 1e-36,
                length: 1.0,
                constants,
            },
            ModelKind::PhaseShift => SweepModel::PhaseShift {
                delta_r: 1e-36,
                interferometer: InterferometerSpec {
                    arm_length: 1.0,
                    wavelength: 1.064e-6,
                    baseline: 1.0,
                },
            },
            ModelKind::Strain => SweepModel::Strain {
                delta_r: 2e-35,
                length: 1.0,
            },
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            SweepModel::SnrParametric { .. } => ModelKind::SnrParametric,
            SweepModel::SnrNormalized { .. } => ModelKind::SnrNormalized,
            SweepModel::SnrCurvature { .. } => ModelKind::SnrCurvature,
            SweepModel::ArrayCurvature { .. } => ModelKind::ArrayCurvature,
            SweepModel::ClockDrift { .. } => ModelKind::ClockDrift,
            SweepModel::ClockFreqShift { .. } => ModelKind::ClockFreqShift,
            SweepModel::PhaseShift { .. } => ModelKind::PhaseShift,
            SweepModel::Strain { .. } => ModelKind::Strain,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            SweepModel::SnrParametric { .. } => "snr-parametric",
            SweepModel::SnrNormalized { .. } => "snr-normalized",
            SweepModel::SnrCurvature { .. } => "snr-curvature",
            SweepModel::ArrayCurvature { .. } => "array-curvature",
            SweepModel::ClockDrift { .. } => "clock-drift",
            SweepModel::ClockFreqShift { .. } => "clock-freq-shift",
            SweepModel::PhaseShift { .. } => "phase-shift",
            SweepModel::Strain { .. } => "strain",
        }
    }

    /// Column name and unit of the model output.
    pub fn output(&self) -> (&'static str, &'static str) {
        match self {
            SweepModel::SnrParametric { .. } => ("snr", "1"),
            SweepModel::SnrNormalized { .. } => ("snr_normalized", "1"),
            SweepModel::SnrCurvature { .. } => ("snr", "1"),
            SweepModel::ArrayCurvature { .. } => ("delta_r", "1/m^2"),
            SweepModel::ClockDrift { .. } => ("clock_drift", "1"),
            SweepModel::ClockFreqShift { .. } => ("freq_shift", "1"),
            SweepModel::PhaseShift { .. } => ("phase_shift", "rad"),
            SweepModel::Strain { .. } => ("strain", "1"),
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        const SNR: &[&str] = &[
            "n_units", "spacing", "finesse", "rep_rate", "squeeze", "g_ent", "g_shape", "g_multi", "g_noise", "ref_n",
            "ref_d",
        ];
        match self {
            SweepModel::SnrParametric { .. } | SweepModel::SnrNormalized { .. } => SNR,
            SweepModel::SnrCurvature { .. } => &["n_units", "delta_r0", "sigma_r"],
            SweepModel::ArrayCurvature { .. } => &["n_units", "delta_r0"],
            SweepModel::ClockDrift { .. } => &["delta_r", "extent", "duration"],
            SweepModel::ClockFreqShift { .. } => &["delta_r", "length"],
            SweepModel::PhaseShift { .. } => &["delta_r", "arm_length", "wavelength"],
            SweepModel::Strain { .. } => &["delta_r", "length"],
        }
    }

    /// Unit of a sweepable parameter, for CSV headers.
    pub fn param_unit(name: &str) -> &'static str {
        match name {
            "spacing" | "ref_d" | "extent" | "length" | "arm_length" | "wavelength" => "m",
            "rep_rate" => "Hz",
            "duration" => "s",
            "delta_r" | "delta_r0" | "sigma_r" => "1/m^2",
            _ => "1",
        }
    }

    fn slot_mut(&mut self, name: &str) -> Option<&mut f64> {
        match self {
            SweepModel::SnrParametric { params, .. } | SweepModel::SnrNormalized { params, .. } => match name {
                "n_units" => Some(&mut params.n_units),
                "spacing" => Some(&mut params.spacing),
                "finesse" => Some(&mut params.finesse),
                "rep_rate" => Some(&mut params.rep_rate),
                "squeeze" => Some(&mut params.squeeze),
                "g_ent" => Some(&mut params.g_ent),
                "g_shape" => Some(&mut params.g_shape),
                "g_multi" => Some(&mut params.g_multi),
                "g_noise" => Some(&mut params.g_noise),
                "ref_n" => Some(&mut params.ref_n),
                "ref_d" => Some(&mut params.ref_d),
                _ => None,
            },
            SweepModel::SnrCurvature {
                n_units,
                delta_r0,
                sigma_r,
            } => match name {
                "n_units" => Some(n_units),
                "delta_r0" => Some(delta_r0),
                "sigma_r" => Some(sigma_r),
                _ => None,
            },
            SweepModel::ArrayCurvature { n_units, delta_r0 } => match name {
                "n_units" => Some(n_units),
                "delta_r0" => Some(delta_r0),
                _ => None,
            },
            SweepModel::ClockDrift { delta_r, clock } => match name {
                "delta_r" => Some(delta_r),
                "extent" => Some(&mut clock.extent),
                "duration" => Some(&mut clock.duration),
                _ => None,
            },
            SweepModel::ClockFreqShift { delta_r, length, .. } | SweepModel::Strain { delta_r, length } => match name {
                "delta_r" => Some(delta_r),
                "length" => Some(length),
                _ => None,
            },
            SweepModel::PhaseShift {
                delta_r,
                interferometer,
            } => match name {
                "delta_r" => Some(delta_r),
                "arm_length" => Some(&mut interferometer.arm_length),
                "wavelength" => Some(&mut interferometer.wavelength),
                _ => None,
            },
        }
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let id = self.id();
        let names = self.param_names();
        match self.slot_mut(name) {
            Some(s) => {
                *s = value;
                Ok(())
            }
            None => Err(Error::invalid(
                "sweep parameter",
                format!("`{name}` is not a parameter of {id} (expected one of {names:?})"),
            )),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.clone().slot_mut(name).map(|v| *v)
    }

    /// Every settable parameter with its current value.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        self.param_names().iter().map(|&n| (n, self.get(n).unwrap())).collect()
    }

    pub fn evaluate(&self) -> Result<f64> {
        match self {
            SweepModel::SnrParametric { params, noise } => snr::snr_parametric(params, noise.as_ref()),
            SweepModel::SnrNormalized { params, noise } => snr::snr_normalized(params, noise.as_ref()),
            SweepModel::SnrCurvature {
                n_units,
                delta_r0,
                sigma_r,
            } => snr::snr_curvature(*n_units, *delta_r0, *sigma_r),
            SweepModel::ArrayCurvature { n_units, delta_r0 } => Ok(n_units * delta_r0),
            SweepModel::ClockDrift { delta_r, clock } => {
                ClockSpec::new(clock.extent, clock.duration, clock.stability)?;
                Ok(observables::clock_drift(*delta_r, clock))
            }
            SweepModel::ClockFreqShift {
                delta_r,
                length,
                constants,
            } => Ok(observables::clock_freq_shift(*delta_r, *length, constants)),
            SweepModel::PhaseShift {
                delta_r,
                interferometer,
            } => {
                let i = interferometer;
                InterferometerSpec::new(i.arm_length, i.wavelength, i.baseline)?;
                Ok(observables::phase_shift(*delta_r, i))
            }
            SweepModel::Strain { delta_r, length } => Ok(observables::strain(*delta_r, *length)),
        }
    }
}
