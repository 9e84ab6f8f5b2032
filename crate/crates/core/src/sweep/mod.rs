//! Grid evaluation of scalar models and iso-level contour extraction.

mod axis;
mod contour;
mod model;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use axis::{AxisSpec, Scale, MAX_AXIS_POINTS};
pub use contour::{extract_contour, march, Contour, Polyline};
pub use model::{ModelKind, SweepModel};

/// Default points per axis when a config leaves `n_points` unset.
pub const DEFAULT_AXIS_POINTS: usize = 101;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<AxisSpec>,
    /// Row-major, first axis outer.
    pub values: Vec<f64>,
    /// Fixed parameters and model identifier.
    pub model: SweepModel,
    pub contours: Vec<Contour>,
}

impl SweepResult {
    pub fn shape(&self) -> (usize, usize) {
        match self.axes.as_slice() {
            [a] => (a.n_points, 1),
            [a, b] => (a.n_points, b.n_points),
            _ => unreachable!("sweeps have one or two axes"),
        }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.shape().1 + j]
    }

    pub fn axis_values(&self) -> Vec<Vec<f64>> {
        self.axes.iter().map(AxisSpec::values).collect()
    }

    /// Extracts the contour at `level` and stores it on the result.
    pub fn add_contour(&mut self, level: f64, on: Scale) -> Result<&Contour> {
        let c = extract_contour(self, level, on)?;
        self.contours.push(c);
        Ok(self.contours.last().unwrap())
    }
}

pub fn run_sweep(model: &SweepModel, axes: &[AxisSpec]) -> Result<SweepResult> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::invalid(
            "sweep",
            format!("needs 1 or 2 axes (got {})", axes.len()),
        ));
    }
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return Err(Error::invalid("sweep", format!("axis `{}` given twice", axes[0].param)));
    }
    let mut probe = model.clone();
    for a in axes {
        a.validate()?;
        probe.set(&a.param, a.min)?;
    }

    let coords: Vec<Vec<f64>> = axes.iter().map(AxisSpec::values).collect();
    let inner = if axes.len() == 2 { axes[1].n_points } else { 1 };
    let total = axes[0].n_points * inner;

    let results: Vec<Result<f64>> = (0..total)
        .into_par_iter()
        .map(|k| {
            let idx = [k / inner, k % inner];
            let mut m = model.clone();
            for (d, a) in axes.iter().enumerate() {
                m.set(&a.param, coords[d][idx[d]])?;
            }
            let v = m.evaluate()?;
            if v.is_finite() {
                Ok(v)
            } else {
                let at: Vec<String> = axes
                    .iter()
                    .enumerate()
                    .map(|(d, a)| format!("{}={}", a.param, coords[d][idx[d]]))
                    .collect();
                Err(Error::NonFinite {
                    location: format!("{} sweep point ({})", model.id(), at.join(", ")),
                    value: v,
                })
            }
        })
        .collect();

    let values = results.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(SweepResult {
        axes: axes.to_vec(),
        values,
        model: model.clone(),
        contours: Vec::new(),
    })
}
