use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1D spatial grid with `n` points spanning `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        check_axis("spatial grid", x_min, x_max, n)?;
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.coord(i)).collect()
    }

    /// True when `[lo, hi]` lies inside the grid extent.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        lo >= self.x_min && hi <= self.x_max
    }

    pub fn nearest_index(&self, x: f64) -> usize {
        let raw = ((x - self.x_min) / self.spacing()).round();
        raw.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Uniform space-time lattice. Values on it are stored time-major:
/// index `it * n_x + ix`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridST {
    space: Grid1D,
    t_min: f64,
    t_max: f64,
    n_t: usize,
}

/// Builds a space-time grid over `space × [t_min, t_max]` with `n_t` time levels.
pub fn make_grid_st(space: Grid1D, t_min: f64, t_max: f64, n_t: usize) -> Result<GridST> {
    check_axis("time grid", t_min, t_max, n_t)?;
    Ok(GridST {
        space,
        t_min,
        t_max,
        n_t,
    })
}

impl GridST {
    pub fn space(&self) -> &Grid1D {
        &self.space
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn n_x(&self) -> usize {
        self.space.len()
    }

    pub fn len(&self) -> usize {
        self.n_t * self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time_spacing(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_t - 1) as f64
    }

    pub fn time(&self, it: usize) -> f64 {
        self.t_min + it as f64 * self.time_spacing()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_t).map(|it| self.time(it)).collect()
    }

    pub fn index(&self, it: usize, ix: usize) -> usize {
        it * self.space.len() + ix
    }
}

fn check_axis(what: &str, lo: f64, hi: f64, n: usize) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(
            what,
            format!("bounds must be finite (got [{lo}, {hi}])"),
        ));
    }
    if lo >= hi {
        return Err(Error::invalid(
            what,
            format!("bounds must be increasing (got min {lo} >= max {hi})"),
        ));
    }
    if n < 2 {
        return Err(Error::invalid(what, format!("needs at least 2 points (got {n})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_of_reference_grid() {
        let space = Grid1D::new(-5.0, 5.0, 101).unwrap();
        let g = make_grid_st(space, 0.0, 10.0, 101).unwrap();
        assert!((g.space().spacing() - 0.1).abs() < 1e-15);
        assert!((g.time_spacing() - 0.1).abs() < 1e-15);
        assert_eq!(g.len(), 101 * 101);
    }

    #[test]
    fn minimal_grid() {
        let space = Grid1D::new(0.0, 1.0, 2).unwrap();
        let g = make_grid_st(space, 0.0, 1.0, 2).unwrap();
        assert_eq!(g.space().spacing(), 1.0);
        assert_eq!(g.time_spacing(), 1.0);
        assert_eq!(g.space().coords(), vec![0.0, 1.0]);
    }

    #[test]
    fn rejects_reversed_or_short_axes() {
        let space = Grid1D::new(0.0, 1.0, 2).unwrap();
        let err = make_grid_st(space, 1.0, 0.0, 10).unwrap_err();
        assert!(err.to_string().contains("increasing"), "{err}");
        assert!(make_grid_st(space, 0.0, 1.0, 1).is_err());
        assert!(Grid1D::new(0.0, 0.0, 5).is_err());
        assert!(Grid1D::new(0.0, f64::INFINITY, 5).is_err());
    }

    #[test]
    fn coordinates_are_bitwise_reproducible() {
        let a = Grid1D::new(-2.5, 11.5, 512).unwrap().coords();
        let b = Grid1D::new(-2.5, 11.5, 512).unwrap().coords();
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn nearest_index_clamps() {
        let g = Grid1D::new(0.0, 1.0, 11).unwrap();
        assert_eq!(g.nearest_index(0.52), 5);
        assert_eq!(g.nearest_index(-3.0), 0);
        assert_eq!(g.nearest_index(7.0), 10);
    }
}
