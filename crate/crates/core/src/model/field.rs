use serde::{Deserialize, Serialize};

use super::grid::{Grid1D, GridST};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// ⟨T₀₀⟩, J/m³.
    EnergyDensity,
    /// δR, m⁻².
    Curvature,
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::EnergyDensity => "t00",
            Quantity::Curvature => "delta_r",
        }
    }

    pub fn unit(&self) -> &'static str {
        match self {
            Quantity::EnergyDensity => "J/m^3",
            Quantity::Curvature => "1/m^2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldGrid {
    Line(Grid1D),
    SpaceTime(GridST),
}

impl FieldGrid {
    pub fn len(&self) -> usize {
        match self {
            FieldGrid::Line(g) => g.len(),
            FieldGrid::SpaceTime(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn space(&self) -> &Grid1D {
        match self {
            FieldGrid::Line(g) => g,
            FieldGrid::SpaceTime(g) => g.space(),
        }
    }
}

/// A sampled real scalar on a 1D or space-time grid. Values are always finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarField {
    grid: FieldGrid,
    values: Vec<f64>,
    quantity: Quantity,
}

impl ScalarField {
    pub fn new(grid: FieldGrid, values: Vec<f64>, quantity: Quantity) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(
                "scalar field",
                format!("{} values for a grid of {} points", values.len(), grid.len()),
            ));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                location: format!("{} sample {i}", quantity.name()),
                value: *v,
            });
        }
        Ok(Self { grid, values, quantity })
    }

    pub fn on_line(grid: Grid1D, values: Vec<f64>, quantity: Quantity) -> Result<Self> {
        Self::new(FieldGrid::Line(grid), values, quantity)
    }

    pub fn on_space_time(grid: GridST, values: Vec<f64>, quantity: Quantity) -> Result<Self> {
        Self::new(FieldGrid::SpaceTime(grid), values, quantity)
    }

    pub fn grid(&self) -> &FieldGrid {
        &self.grid
    }

    pub fn space_time(&self) -> Option<&GridST> {
        match &self.grid {
            FieldGrid::SpaceTime(g) => Some(g),
            FieldGrid::Line(_) => None,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    /// Spatial row at time level `it`; the whole field for a 1D grid.
    pub fn time_slice(&self, it: usize) -> &[f64] {
        match &self.grid {
            FieldGrid::Line(_) => &self.values,
            FieldGrid::SpaceTime(g) => {
                let nx = g.n_x();
                &self.values[it * nx..(it + 1) * nx]
            }
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index and value of the smallest sample (first on ties).
    pub fn argmin(&self) -> (usize, f64) {
        self.values.iter().copied().enumerate().fold(
            (0, f64::INFINITY),
            |best, (i, v)| if v < best.1 { (i, v) } else { best },
        )
    }

    pub(crate) fn require(&self, quantity: Quantity, op: &str) -> Result<()> {
        if self.quantity == quantity {
            Ok(())
        } else {
            Err(Error::invalid(
                op,
                format!("expected a {:?} field, got {:?}", quantity, self.quantity),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> Grid1D {
        Grid1D::new(0.0, 1.0, 3).unwrap()
    }

    #[test]
    fn rejects_length_mismatch() {
        assert!(ScalarField::on_line(line(), vec![0.0; 2], Quantity::Curvature).is_err());
    }

    #[test]
    fn rejects_non_finite_values() {
        for bad in [f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            let err = ScalarField::on_line(line(), vec![0.0, bad, 0.0], Quantity::EnergyDensity).unwrap_err();
            assert!(matches!(err, Error::NonFinite { .. }));
        }
    }

    #[test]
    fn argmin_prefers_first_on_ties() {
        let f = ScalarField::on_line(line(), vec![-1.0, -2.0, -2.0], Quantity::Curvature).unwrap();
        assert_eq!(f.argmin(), (1, -2.0));
        assert_eq!(f.max(), -1.0);
    }
}
