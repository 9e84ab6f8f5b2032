use rayon::prelude::*;

use super::CurvatureMap;
use crate::error::{Error, Result};
use crate::model::{GridST, Quantity, ScalarField};

/// Relative slack on `c·Δt ≤ Δx` and on light-cone membership, absorbing
/// rounding in grid spacings that are nominally equal.
pub const CFL_SLACK: f64 = 1e-9;

/// 1+1D retarded response to a space-time energy-density source.
///
/// Evaluates `δR(x,t) = s·8πG·calibration·κ·Σ (c/2)·Θ(c(t-t') - |x-x'|)·⟨T₀₀⟩(x',t')·Δx·Δt`
/// over every lattice source point, including the current time level. Each
/// source row is prefix-summed once so that every light-cone window costs
/// O(1); output time levels are independent and computed in parallel.
pub fn solve_retarded(source: &ScalarField, map: &CurvatureMap) -> Result<ScalarField> {
    source.require(Quantity::EnergyDensity, "retarded solve")?;
    let grid = *source
        .space_time()
        .ok_or_else(|| Error::invalid("retarded solve", "source must live on a space-time grid"))?;
    let c = map.constants.c();
    let dx = grid.space().spacing();
    let dt = grid.time_spacing();
    if c * dt > dx * (1.0 + CFL_SLACK) {
        return Err(Error::invalid(
            "retarded solve",
            format!("CFL violated: c*dt = {} exceeds dx = {dx}", c * dt),
        ));
    }

    let prefix = prefix_rows(source.values(), &grid);
    // Rows with no source contribute nothing.
    let live: Vec<usize> = (0..grid.n_t()).filter(|&m| row_nonzero(source, m)).collect();
    let scale = map.coupling() * map.kappa * 0.5 * c * dx * dt;
    let courant = c * dt / dx;
    let nx = grid.n_x();

    let rows: Vec<Vec<f64>> = (0..grid.n_t())
        .into_par_iter()
        .map(|n| {
            let mut acc = vec![0.0; nx];
            for &m in live.iter().take_while(|&&m| m <= n) {
                let half = cone_half_width(n - m, courant, nx);
                let p = &prefix[m];
                for (i, a) in acc.iter_mut().enumerate() {
                    let lo = i.saturating_sub(half);
                    let hi = (i + half + 1).min(nx);
                    *a += p[hi] - p[lo];
                }
            }
            acc.iter_mut().for_each(|a| *a *= scale);
            acc
        })
        .collect();

    let values = rows.into_iter().flatten().collect();
    ScalarField::on_space_time(grid, values, Quantity::Curvature)
}

/// Number of grid cells the light cone has reached after `steps` time levels.
fn cone_half_width(steps: usize, courant: f64, nx: usize) -> usize {
    let reach = steps as f64 * courant * (1.0 + CFL_SLACK);
    (reach.floor() as usize).min(nx)
}

fn prefix_rows(values: &[f64], grid: &GridST) -> Vec<Vec<f64>> {
    let nx = grid.n_x();
    values
        .chunks_exact(nx)
        .map(|row| {
            let mut p = Vec::with_capacity(nx + 1);
            p.push(0.0);
            let mut s = 0.0;
            for v in row {
                s += v;
                p.push(s);
            }
            p
        })
        .collect()
}

fn row_nonzero(source: &ScalarField, m: usize) -> bool {
    source.time_slice(m).iter().any(|&v| v != 0.0)
}
