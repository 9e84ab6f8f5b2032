//! Shared physical constants, uniform grids and sampled scalar fields.
//!
//! Everything here is immutable once built and `Send + Sync`.

mod constants;
mod field;
mod grid;

pub use constants::{PhysicalConstants, UnitMode, C_SI, G_SI};
pub use field::{FieldGrid, Quantity, ScalarField};
pub use grid::{make_grid_st, Grid1D, GridST};
