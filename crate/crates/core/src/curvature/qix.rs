use serde::{Deserialize, Serialize};

use super::{solve_retarded, CurvatureMap, SignConvention};
use crate::error::{ensure_positive, Error, Result};
use crate::model::{GridST, PhysicalConstants, Quantity, ScalarField, UnitMode};
use crate::stress_energy::{eval_gaussian_t00, GaussianPulse, COVERAGE_WIDTHS};

/// Sampled traveling-dip profile plus a flag set when the requested speed
/// exceeds `c` (only possible in natural units).
#[derive(Debug, Clone, PartialEq)]
pub struct QixProfile {
    pub field: ScalarField,
    pub superluminal: bool,
}

/// `δR(x,t) = -ε·exp(-(x - v·t)²/2σ²)` on a space-time grid.
pub fn qix_analytic(
    epsilon: f64,
    v: f64,
    sigma: f64,
    grid: &GridST,
    constants: &PhysicalConstants,
) -> Result<QixProfile> {
    ensure_positive("profile sigma", sigma)?;
    if !epsilon.is_finite() || !v.is_finite() {
        return Err(Error::invalid("traveling profile", "epsilon and v must be finite"));
    }
    let superluminal = v.abs() > constants.c();
    if superluminal && constants.unit_mode() == UnitMode::Si {
        return Err(Error::invalid(
            "traveling profile speed",
            format!("|v| = {} exceeds c = {} in SI mode", v.abs(), constants.c()),
        ));
    }
    let xs = grid.space().coords();
    let two_s2 = 2.0 * sigma * sigma;
    let mut values = Vec::with_capacity(grid.len());
    for t in grid.times() {
        let center = v * t;
        values.extend(xs.iter().map(|x| -epsilon * (-(x - center).powi(2) / two_s2).exp()));
    }
    Ok(QixProfile {
        field: ScalarField::on_space_time(*grid, values, Quantity::Curvature)?,
        superluminal,
    })
}

/// A timed chain of negative-energy events: event `k` fires at
/// `x = k·spacing`, `t = k·gate_interval`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QixChainConfig {
    pub n_events: usize,
    pub spacing: f64,
    pub sigma: f64,
    pub gate_interval: f64,
    pub epsilon: f64,
    /// Temporal width of each event; `None` means `sigma / c`.
    pub tau_e: Option<f64>,
    pub constants: PhysicalConstants,
    pub sign: SignConvention,
}

impl QixChainConfig {
    pub fn new(n_events: usize, spacing: f64, sigma: f64, gate_interval: f64, epsilon: f64) -> Result<Self> {
        let c = Self {
            n_events,
            spacing,
            sigma,
            gate_interval,
            epsilon,
            tau_e: None,
            constants: PhysicalConstants::natural(),
            sign: SignConvention::DipNegative,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_events == 0 {
            return Err(Error::invalid("chain n_events", "must be >= 1"));
        }
        ensure_positive("chain spacing", self.spacing)?;
        ensure_positive("chain sigma", self.sigma)?;
        ensure_positive("chain gate_interval", self.gate_interval)?;
        ensure_positive("chain epsilon", self.epsilon)?;
        if let Some(tau) = self.tau_e {
            ensure_positive("chain tau_e", tau)?;
        }
        Ok(())
    }

    pub fn event_tau(&self) -> f64 {
        self.tau_e.unwrap_or(self.sigma / self.constants.c())
    }

    /// Pattern speed `spacing / gate_interval`.
    pub fn v_eff(&self) -> f64 {
        self.spacing / self.gate_interval
    }

    pub fn superluminal(&self) -> bool {
        self.v_eff() > self.constants.c()
    }

    pub fn events(&self) -> Vec<GaussianPulse> {
        (0..self.n_events)
            .map(|k| GaussianPulse {
                epsilon: self.epsilon,
                x0: k as f64 * self.spacing,
                t0: k as f64 * self.gate_interval,
                sigma: self.sigma,
                tau: self.event_tau(),
            })
            .collect()
    }

    /// Sum of all event pulses sampled on `grid`.
    pub fn source(&self, grid: &GridST) -> Result<ScalarField> {
        self.validate()?;
        let last = (self.n_events - 1) as f64;
        let reach = COVERAGE_WIDTHS * self.sigma;
        let (x_lo, x_hi) = (-reach, last * self.spacing + reach);
        if !grid.space().covers(x_lo, x_hi) {
            return Err(Error::invalid(
                "chain grid",
                format!(
                    "space [{}, {}] does not cover events [{x_lo}, {x_hi}]",
                    grid.space().x_min(),
                    grid.space().x_max()
                ),
            ));
        }
        let t_last = last * self.gate_interval;
        if grid.t_min() > 0.0 || grid.t_max() < t_last {
            return Err(Error::invalid(
                "chain grid",
                format!(
                    "time [{}, {}] does not cover the firing schedule [0, {t_last}]",
                    grid.t_min(),
                    grid.t_max()
                ),
            ));
        }
        let events = self.events();
        let xs = grid.space().coords();
        let mut values = Vec::with_capacity(grid.len());
        for t in grid.times() {
            values.extend(
                xs.iter()
                    .map(|&x| events.iter().map(|p| eval_gaussian_t00(p, x, t)).sum::<f64>()),
            );
        }
        ScalarField::on_space_time(*grid, values, Quantity::EnergyDensity)
    }
}

/// Retarded curvature response of the event chain.
pub fn simulate_qix_chain(config: &QixChainConfig, grid: &GridST) -> Result<ScalarField> {
    let source = config.source(grid)?;
    solve_retarded(&source, &CurvatureMap::new(config.constants, config.sign))
}
