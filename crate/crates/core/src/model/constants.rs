use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// CODATA 2018 Newtonian constant of gravitation, m³·kg⁻¹·s⁻².
pub const G_SI: f64 = 6.674_30e-11;
/// Speed of light in vacuum, m/s (exact).
pub const C_SI: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    #[default]
    Si,
    /// `c = G = 1`; lengths and times share a unit.
    Natural,
}

impl std::str::FromStr for UnitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "si" => Ok(UnitMode::Si),
            "natural" => Ok(UnitMode::Natural),
            other => Err(Error::invalid(
                "unit mode",
                format!("expected `si` or `natural`, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    g: f64,
    c: f64,
    unit_mode: UnitMode,
}

impl PhysicalConstants {
    pub const fn si() -> Self {
        Self {
            g: G_SI,
            c: C_SI,
            unit_mode: UnitMode::Si,
        }
    }

    pub const fn natural() -> Self {
        Self {
            g: 1.0,
            c: 1.0,
            unit_mode: UnitMode::Natural,
        }
    }

    pub const fn for_mode(mode: UnitMode) -> Self {
        match mode {
            UnitMode::Si => Self::si(),
            UnitMode::Natural => Self::natural(),
        }
    }

    /// Custom SI-mode constants (e.g. `c = 3e8` for hand checks).
    pub fn custom(g: f64, c: f64) -> Result<Self> {
        ensure_positive("gravitational constant G", g)?;
        ensure_positive("speed of light c", c)?;
        Ok(Self {
            g,
            c,
            unit_mode: UnitMode::Si,
        })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn unit_mode(&self) -> UnitMode {
        self.unit_mode
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_mode_is_exactly_unity() {
        let k = PhysicalConstants::natural();
        assert_eq!(k.g(), 1.0);
        assert_eq!(k.c(), 1.0);
        assert_eq!(k.unit_mode(), UnitMode::Natural);
    }

    #[test]
    fn custom_rejects_non_positive() {
        assert!(PhysicalConstants::custom(0.0, 3e8).is_err());
        assert!(PhysicalConstants::custom(G_SI, -1.0).is_err());
        assert!(PhysicalConstants::custom(G_SI, f64::NAN).is_err());
        assert_eq!(PhysicalConstants::custom(G_SI, 3e8).unwrap().c(), 3e8);
    }

    #[test]
    fn unit_mode_parses_case_insensitively() {
        assert_eq!("SI".parse::<UnitMode>().unwrap(), UnitMode::Si);
        assert_eq!("natural".parse::<UnitMode>().unwrap(), UnitMode::Natural);
        assert!("geometric".parse::<UnitMode>().is_err());
    }
}
