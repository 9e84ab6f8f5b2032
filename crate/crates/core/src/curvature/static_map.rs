use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Result};
use crate::model::{PhysicalConstants, Quantity, ScalarField};

/// Which sign the curvature response carries.
///
/// `DipNegative` maps negative energy to a negative curvature dip, the way
/// the tabulated and plotted profiles show it. `LiteralEqNine` uses the
/// printed `δR = -8πG⟨T₀₀⟩`, which turns the same source into a bump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    #[default]
    DipNegative,
    LiteralEqNine,
}

impl SignConvention {
    pub fn factor(self) -> f64 {
        match self {
            SignConvention::DipNegative => 1.0,
            SignConvention::LiteralEqNine => -1.0,
        }
    }
}

/// Coupling from energy density to curvature.
///
/// `calibration` multiplies every curvature output (1.0 is the formula as
/// printed; the SI value of `8πGε` for the fiducial ε is about 1.7e-20, far
/// from the quoted 1e-36). `kappa` normalizes the retarded kernel and has
/// units of inverse length squared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureMap {
    pub constants: PhysicalConstants,
    pub sign: SignConvention,
    pub calibration: f64,
    pub kappa: f64,
}

impl CurvatureMap {
    pub fn new(constants: PhysicalConstants, sign: SignConvention) -> Self {
        Self {
            constants,
            sign,
            calibration: 1.0,
            kappa: 1.0,
        }
    }

    pub fn with_calibration(self, calibration: f64) -> Result<Self> {
        ensure_positive("curvature calibration", calibration)?;
        Ok(Self { calibration, ..self })
    }

    pub fn with_kappa(self, kappa: f64) -> Result<Self> {
        ensure_positive("retarded kernel kappa", kappa)?;
        Ok(Self { kappa, ..self })
    }

    /// `s·8πG·calibration`, the factor applied to ⟨T₀₀⟩.
    pub fn coupling(&self) -> f64 {
        self.sign.factor() * 8.0 * PI * self.constants.g() * self.calibration
    }

    pub fn static_curvature(&self, t00: &ScalarField) -> Result<ScalarField> {
        t00.require(Quantity::EnergyDensity, "static curvature")?;
        let k = self.coupling();
        let values = t00.values().iter().map(|v| k * v).collect();
        ScalarField::new(*t00.grid(), values, Quantity::Curvature)
    }
}

/// Pointwise weak-field map `δR = s·8πG·⟨T₀₀⟩` with unit calibration.
pub fn static_curvature(t00: &ScalarField, constants: &PhysicalConstants, sign: SignConvention) -> Result<ScalarField> {
    CurvatureMap::new(*constants, sign).static_curvature(t00)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Grid1D;

    fn t00(values: Vec<f64>) -> ScalarField {
        let g = Grid1D::new(0.0, 1.0, values.len()).unwrap();
        ScalarField::on_line(g, values, Quantity::EnergyDensity).unwrap()
    }

    #[test]
    fn vacuum_maps_to_flat() {
        let r = static_curvature(
            &t00(vec![0.0; 5]),
            &PhysicalConstants::si(),
            SignConvention::DipNegative,
        )
        .unwrap();
        assert!(r.values().iter().all(|&v| v == 0.0));
        assert_eq!(r.quantity(), Quantity::Curvature);
    }

    #[test]
    fn si_peak_is_formula_literal() {
        // 8π·6.6743e-11·1e-11
        let oracle = 8.0 * PI * 6.674_30e-11 * 1e-11;
        assert!((oracle - 1.677_434_547_828_348_3e-20).abs() < 1e-33);
        let src = t00(vec![0.0, -1e-11, 0.0]);
        let dip = static_curvature(&src, &PhysicalConstants::si(), SignConvention::DipNegative).unwrap();
        assert!((dip.values()[1] + oracle).abs() < 1e-32);
        let lit = static_curvature(&src, &PhysicalConstants::si(), SignConvention::LiteralEqNine).unwrap();
        assert_eq!(lit.values()[1], -dip.values()[1]);
    }

    #[test]
    fn rejects_curvature_input() {
        let g = Grid1D::new(0.0, 1.0, 2).unwrap();
        let r = ScalarField::on_line(g, vec![0.0, 0.0], Quantity::Curvature).unwrap();
        assert!(static_curvature(&r, &PhysicalConstants::si(), SignConvention::DipNegative).is_err());
    }

    #[test]
    fn calibration_scales_output() {
        let map = CurvatureMap::new(PhysicalConstants::natural(), SignConvention::DipNegative)
            .with_calibration(2.0)
            .unwrap();
        let r = map.static_curvature(&t00(vec![-1.0, 0.0])).unwrap();
        assert_eq!(r.values()[0], -16.0 * PI);
        assert!(map.with_calibration(0.0).is_err());
    }
}
