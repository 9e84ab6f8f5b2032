use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Quantity, ScalarField};

/// Fraction of time slices dropped at each end of the velocity fit.
pub const DEFAULT_EDGE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipPoint {
    pub t: f64,
    pub x_min: f64,
    pub value_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipTrack {
    /// One entry per time slice that has a minimum (flat slices are skipped).
    pub points: Vec<DipPoint>,
    /// Least-squares slope of `x_min(t)` over the fit window.
    pub velocity: Option<f64>,
    /// No usable minimum anywhere, or too few points to fit.
    pub degenerate: bool,
}

impl DipTrack {
    /// Deepest tracked value over all slices.
    pub fn deepest(&self) -> Option<DipPoint> {
        self.points
            .iter()
            .copied()
            .min_by(|a, b| a.value_min.total_cmp(&b.value_min))
    }
}

pub fn track_dip(field: &ScalarField) -> Result<DipTrack> {
    track_dip_with(field, DEFAULT_EDGE_FRACTION)
}

/// Per-slice minimum with three-point parabolic refinement, then a linear fit
/// excluding `edge_fraction` of the slices at either end.
pub fn track_dip_with(field: &ScalarField, edge_fraction: f64) -> Result<DipTrack> {
    field.require(Quantity::Curvature, "dip tracking")?;
    let grid = field
        .space_time()
        .ok_or_else(|| Error::invalid("dip tracking", "field must live on a space-time grid"))?;
    if !(0.0..0.5).contains(&edge_fraction) {
        return Err(Error::invalid(
            "dip tracking edge fraction",
            format!("must be in [0, 0.5) (got {edge_fraction})"),
        ));
    }
    let space = grid.space();
    let dx = space.spacing();
    let n_t = grid.n_t();
    let skip = (n_t as f64 * edge_fraction).floor() as usize;

    let mut points = Vec::with_capacity(n_t);
    let mut window = Vec::new();
    for it in 0..n_t {
        let Some((pos, value)) = slice_minimum(field.time_slice(it)) else {
            continue;
        };
        let p = DipPoint {
            t: grid.time(it),
            x_min: space.x_min() + pos * dx,
            value_min: value,
        };
        if it >= skip && it < n_t - skip {
            window.push((p.t, p.x_min));
        }
        points.push(p);
    }
    let velocity = least_squares_slope(&window);
    Ok(DipTrack {
        degenerate: velocity.is_none(),
        points,
        velocity,
    })
}

/// Fractional index and refined value of the minimum, or `None` for a flat slice.
fn slice_minimum(row: &[f64]) -> Option<(f64, f64)> {
    let (i, v) = row
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |b, (i, v)| if v < b.1 { (i, v) } else { b });
    let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if v.partial_cmp(&max) != Some(std::cmp::Ordering::Less) {
        return None;
    }
    if i == 0 || i + 1 == row.len() {
        return Some((i as f64, v));
    }
    let (l, r) = (row[i - 1], row[i + 1]);
    let curvature = l - 2.0 * v + r;
    if curvature <= 0.0 {
        return Some((i as f64, v));
    }
    let offset = (0.5 * (l - r) / curvature).clamp(-0.5, 0.5);
    Some((i as f64 + offset, v - 0.25 * (l - r) * offset))
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(sxy, sxx), &(t, x)| {
        (sxy + (t - mt) * (x - mx), sxx + (t - mt) * (t - mt))
    });
    (sxx > 0.0).then(|| sxy / sxx)
}
