//! Negative energy-density sources: Gaussian pulses, array superpositions and
//! the two-branch interference profile.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::model::{Grid1D, Quantity, ScalarField};

/// Grids must reach this many widths past every source center.
pub const COVERAGE_WIDTHS: f64 = 5.0;

/// Default regularization width (m) for the branch delta functions.
pub const DEFAULT_BRANCH_WIDTH: f64 = 0.05;

/// A localized negative-energy pulse. `epsilon` is the positive magnitude; the
/// emitted density is `-epsilon` at the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPulse {
    pub epsilon: f64,
    pub x0: f64,
    pub t0: f64,
    pub sigma: f64,
    pub tau: f64,
}

impl GaussianPulse {
    pub fn new(epsilon: f64, x0: f64, t0: f64, sigma: f64, tau: f64) -> Result<Self> {
        let p = Self {
            epsilon,
            x0,
            t0,
            sigma,
            tau,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("pulse epsilon", self.epsilon)?;
        ensure_positive("pulse sigma", self.sigma)?;
        ensure_positive("pulse tau", self.tau)?;
        ensure_finite("pulse x0", self.x0)?;
        ensure_finite("pulse t0", self.t0)
    }

    pub fn at(&self, x0: f64, t0: f64) -> Self {
        Self { x0, t0, ..*self }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            epsilon: self.epsilon * factor,
            ..*self
        }
    }
}

/// `-ε·exp(-(x-x₀)²/2σ² - (t-t₀)²/2τ²)`.
pub fn eval_gaussian_t00(pulse: &GaussianPulse, x: f64, t: f64) -> f64 {
    let dx = x - pulse.x0;
    let dt = t - pulse.t0;
    -pulse.epsilon * (-(dx * dx) / (2.0 * pulse.sigma * pulse.sigma) - (dt * dt) / (2.0 * pulse.tau * pulse.tau)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Architecture {
    SinglePair,
    /// Identical amplitudes at seeded uniform-random positions.
    Uncoordinated,
    /// Evenly spaced, centered on the template's `x0`.
    Synchronized,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayConfig {
    architecture: Architecture,
    n_units: usize,
    spacing: f64,
    unit_pulse: GaussianPulse,
    seed: u64,
}

impl ArrayConfig {
    /// `spacing` is the inter-unit step for `Synchronized` and the full
    /// placement span for `Uncoordinated`. `SinglePair` requires `n_units == 1`.
    pub fn new(
        architecture: Architecture,
        n_units: usize,
        spacing: f64,
        unit_pulse: GaussianPulse,
        seed: u64,
    ) -> Result<Self> {
        unit_pulse.validate()?;
        if n_units == 0 {
            return Err(Error::invalid("array n_units", "must be >= 1"));
        }
        if architecture == Architecture::SinglePair && n_units != 1 {
            return Err(Error::invalid(
                "array n_units",
                format!("single-pair architecture has exactly 1 unit (got {n_units})"),
            ));
        }
        if n_units > 1 {
            ensure_positive("array spacing", spacing)?;
        }
        Ok(Self {
            architecture,
            n_units,
            spacing,
            unit_pulse,
            seed,
        })
    }

    pub fn single(unit_pulse: GaussianPulse) -> Result<Self> {
        Self::new(Architecture::SinglePair, 1, 0.0, unit_pulse, 0)
    }

    pub fn architecture(&self) -> Architecture {
        self.architecture
    }

    pub fn n_units(&self) -> usize {
        self.n_units
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn unit_pulse(&self) -> &GaussianPulse {
        &self.unit_pulse
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_unit_pulse(&self, unit_pulse: GaussianPulse) -> Self {
        Self { unit_pulse, ..*self }
    }

    /// Spatial centers of every unit, in placement order.
    pub fn unit_centers(&self) -> Vec<f64> {
        let x0 = self.unit_pulse.x0;
        let n = self.n_units;
        match self.architecture {
            Architecture::SinglePair => vec![x0],
            Architecture::Synchronized => {
                // Half-integer offsets for even n keep the array centered.
                let mid = (n as f64 - 1.0) / 2.0;
                (0..n).map(|i| x0 + (i as f64 - mid) * self.spacing).collect()
            }
            Architecture::Uncoordinated => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let lo = x0 - self.spacing / 2.0;
                (0..n).map(|_| lo + self.spacing * rng.random::<f64>()).collect()
            }
        }
    }
}

/// Pointwise sum of the array's unit pulses on `grid` at time `t`.
pub fn sample_array_t00(config: &ArrayConfig, grid: &Grid1D, t: f64) -> Result<ScalarField> {
    let centers = config.unit_centers();
    let reach = COVERAGE_WIDTHS * config.unit_pulse.sigma;
    for c in &centers {
        if !grid.covers(c - reach, c + reach) {
            return Err(Error::invalid(
                "array grid",
                format!(
                    "[{}, {}] does not cover unit center {c} +/- {reach}",
                    grid.x_min(),
                    grid.x_max()
                ),
            ));
        }
    }
    let pulses: Vec<GaussianPulse> = centers
        .iter()
        .map(|&c| config.unit_pulse.at(c, config.unit_pulse.t0))
        .collect();
    let values = grid
        .coords()
        .into_iter()
        .map(|x| pulses.iter().map(|p| eval_gaussian_t00(p, x, t)).sum())
        .collect();
    ScalarField::on_line(*grid, values, Quantity::EnergyDensity)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferenceConfig {
    pub lambda_strength: f64,
    pub x_left: f64,
    pub x_right: f64,
    pub branch_width: f64,
    pub rel_phase: f64,
}

impl InterferenceConfig {
    pub fn new(lambda_strength: f64, x_left: f64, x_right: f64, rel_phase: f64) -> Result<Self> {
        let c = Self {
            lambda_strength,
            x_left,
            x_right,
            branch_width: DEFAULT_BRANCH_WIDTH,
            rel_phase,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_branch_width(self, branch_width: f64) -> Result<Self> {
        let c = Self { branch_width, ..self };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_strength >= 0.0 && self.lambda_strength.is_finite()) {
            return Err(Error::invalid(
                "interference lambda_strength",
                format!("must be >= 0 (got {})", self.lambda_strength),
            ));
        }
        ensure_positive("interference branch_width", self.branch_width)?;
        ensure_finite("interference x_left", self.x_left)?;
        ensure_finite("interference x_right", self.x_right)?;
        ensure_finite("interference rel_phase", self.rel_phase)?;
        if self.x_left == self.x_right {
            return Err(Error::invalid(
                "interference branches",
                "x_left and x_right must differ",
            ));
        }
        Ok(())
    }
}

/// Two regularized branch deltas plus the phase-dependent cross term
/// `-2λ·cos(Δθ)·√(g_L·g_R)`.
pub fn interference_t00(config: &InterferenceConfig, grid: &Grid1D) -> Result<ScalarField> {
    config.validate()?;
    let reach = COVERAGE_WIDTHS * config.branch_width;
    let lo = config.x_left.min(config.x_right) - reach;
    let hi = config.x_left.max(config.x_right) + reach;
    if !grid.covers(lo, hi) {
        return Err(Error::invalid(
            "interference grid",
            format!("[{}, {}] does not cover [{lo}, {hi}]", grid.x_min(), grid.x_max()),
        ));
    }
    let w2 = 2.0 * config.branch_width * config.branch_width;
    let lambda = config.lambda_strength;
    let cross = 2.0 * lambda * config.rel_phase.cos();
    let values = grid
        .coords()
        .into_iter()
        .map(|x| {
            let al = (x - config.x_left).powi(2) / w2;
            let ar = (x - config.x_right).powi(2) / w2;
            -lambda * ((-al).exp() + (-ar).exp()) - cross * (-(al + ar) / 2.0).exp()
        })
        .collect();
    ScalarField::on_line(*grid, values, Quantity::EnergyDensity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> GaussianPulse {
        GaussianPulse::new(1.0, 0.0, 0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn peak_and_one_sigma_values() {
        let p = unit();
        assert_eq!(eval_gaussian_t00(&p, 0.0, 0.0), -1.0);
        // exp(-1/2) = 0.6065306597126334
        assert!((eval_gaussian_t00(&p, 1.0, 0.0) + 0.606_530_659_712_633_4).abs() < 1e-15);
        assert!(eval_gaussian_t00(&p, 20.0, 20.0).abs() < 1e-80);
    }

    #[test]
    fn pulse_validation() {
        assert!(GaussianPulse::new(0.0, 0.0, 0.0, 1.0, 1.0).is_err());
        assert!(GaussianPulse::new(1.0, 0.0, 0.0, -1.0, 1.0).is_err());
        assert!(GaussianPulse::new(1.0, 0.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn mass_matches_closed_form() {
        // Trapezoid over +/-8 widths; spectrally accurate for a Gaussian.
        let p = GaussianPulse::new(2.5, 0.3, -1.0, 0.7, 1.9).unwrap();
        let n = 801;
        let hx = 16.0 * p.sigma / (n - 1) as f64;
        let ht = 16.0 * p.tau / (n - 1) as f64;
        let mut total = 0.0;
        for i in 0..n {
            let x = p.x0 - 8.0 * p.sigma + i as f64 * hx;
            let wx = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            for j in 0..n {
                let t = p.t0 - 8.0 * p.tau + j as f64 * ht;
                let wt = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                total += wx * wt * eval_gaussian_t00(&p, x, t);
            }
        }
        total *= hx * ht;
        let exact = -p.epsilon * 2.0 * std::f64::consts::PI * p.sigma * p.tau;
        assert!(((total - exact) / exact).abs() < 1e-6, "{total} vs {exact}");
    }

    #[test]
    fn single_pair_peak() {
        let p = GaussianPulse::new(1.0, 0.0, 0.0, 0.1, 1.0).unwrap();
        let cfg = ArrayConfig::single(p).unwrap();
        let grid = Grid1D::new(-1.0, 1.0, 201).unwrap();
        let f = sample_array_t00(&cfg, &grid, 0.0).unwrap();
        let (i, v) = f.argmin();
        assert_eq!(i, 100);
        assert!((v + 1.0).abs() < 1e-15);
    }

    #[test]
    fn synchronized_five_unit_depth_matches_direct_sum() {
        // Oracle: direct 5-term sum at the array center.
        let oracle: f64 = (-2..=2)
            .map(|i: i32| (-(f64::from(i) * 0.02).powi(2) / (2.0 * 0.01)).exp())
            .sum();
        assert!((oracle - 4.806_630_039_386_782).abs() < 1e-12);

        let p = GaussianPulse::new(1.0, 0.0, 0.0, 0.1, 1.0).unwrap();
        let cfg = ArrayConfig::new(Architecture::Synchronized, 5, 0.02, p, 0).unwrap();
        let grid = Grid1D::new(-1.0, 1.0, 201).unwrap();
        let f = sample_array_t00(&cfg, &grid, 0.0).unwrap();
        assert!((f.min() + oracle).abs() < 1e-12, "{}", f.min());
    }

    #[test]
    fn even_synchronized_array_is_centered() {
        let p = GaussianPulse::new(1.0, 0.5, 0.0, 0.1, 1.0).unwrap();
        let cfg = ArrayConfig::new(Architecture::Synchronized, 4, 0.1, p, 0).unwrap();
        let c = cfg.unit_centers();
        let mean: f64 = c.iter().sum::<f64>() / 4.0;
        assert!((mean - 0.5).abs() < 1e-15);
        assert!((c[0] - 0.35).abs() < 1e-15);
    }

    #[test]
    fn uncoordinated_is_seeded() {
        let p = GaussianPulse::new(1.0, 0.0, 0.0, 0.1, 1.0).unwrap();
        let a = ArrayConfig::new(Architecture::Uncoordinated, 5, 0.5, p, 7).unwrap();
        let b = ArrayConfig::new(Architecture::Uncoordinated, 5, 0.5, p, 8).unwrap();
        let grid = Grid1D::new(-1.0, 1.0, 201).unwrap();
        let fa = sample_array_t00(&a, &grid, 0.0).unwrap();
        let fa2 = sample_array_t00(&a, &grid, 0.0).unwrap();
        assert_eq!(fa, fa2);
        assert_ne!(a.unit_centers(), b.unit_centers());
        assert!(a.unit_centers().iter().all(|c| (-0.25..=0.25).contains(c)));
    }

    #[test]
    fn array_rejects_truncating_grid() {
        let p = GaussianPulse::new(1.0, 0.0, 0.0, 0.1, 1.0).unwrap();
        let cfg = ArrayConfig::single(p).unwrap();
        let grid = Grid1D::new(-0.4, 1.0, 101).unwrap();
        assert!(sample_array_t00(&cfg, &grid, 0.0).is_err());
    }

    #[test]
    fn array_config_validation() {
        let p = unit();
        assert!(ArrayConfig::new(Architecture::SinglePair, 3, 0.1, p, 0).is_err());
        assert!(ArrayConfig::new(Architecture::Synchronized, 0, 0.1, p, 0).is_err());
        assert!(ArrayConfig::new(Architecture::Synchronized, 3, 0.0, p, 0).is_err());
        assert!(ArrayConfig::new(Architecture::Synchronized, 1, 0.0, p, 0).is_ok());
    }

    fn interference_mid(phase: f64) -> (f64, f64) {
        let cfg = InterferenceConfig::new(1.0, -1.0, 1.0, phase)
            .unwrap()
            .with_branch_width(0.5)
            .unwrap();
        let grid = Grid1D::new(-4.0, 4.0, 81).unwrap();
        let f = interference_t00(&cfg, &grid).unwrap();
        let branches = -2.0 * (-1.0f64 / (2.0 * 0.25)).exp();
        (f.values()[40], branches)
    }

    #[test]
    fn interference_cross_term_sign() {
        let (v, branches) = interference_mid(0.0);
        assert!(v < branches);
        let (v, branches) = interference_mid(std::f64::consts::PI);
        assert!(v > branches);
    }

    #[test]
    fn interference_zero_coupling() {
        let cfg = InterferenceConfig::new(0.0, -1.0, 1.0, 0.3).unwrap();
        let grid = Grid1D::new(-2.0, 2.0, 41).unwrap();
        let f = interference_t00(&cfg, &grid).unwrap();
        assert!(f.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn interference_validation() {
        assert!(InterferenceConfig::new(1.0, 0.5, 0.5, 0.0).is_err());
        assert!(InterferenceConfig::new(-1.0, 0.0, 1.0, 0.0).is_err());
        let cfg = InterferenceConfig::new(1.0, -1.0, 1.0, 0.0).unwrap();
        assert!(cfg.with_branch_width(0.0).is_err());
        let narrow = Grid1D::new(-1.1, 1.1, 41).unwrap();
        assert!(interference_t00(&cfg, &narrow).is_err());
    }

    proptest! {
        #[test]
        fn gaussian_is_non_positive_and_symmetric(
            eps in 1e-3f64..1e3, x0 in -5.0f64..5.0, t0 in -5.0f64..5.0,
            sigma in 0.05f64..3.0, tau in 0.05f64..3.0,
            x in -10.0f64..10.0, t in -10.0f64..10.0,
        ) {
            let p = GaussianPulse::new(eps, x0, t0, sigma, tau).unwrap();
            let v = eval_gaussian_t00(&p, x, t);
            prop_assert!(v <= 0.0);
            let mirrored = eval_gaussian_t00(&p, 2.0 * x0 - x, 2.0 * t0 - t);
            prop_assert!((v - mirrored).abs() <= 1e-12 * v.abs().max(1e-300));
        }

        #[test]
        fn array_sampling_is_linear_in_epsilon(
            n in 1usize..8, spacing in 0.01f64..0.2, seed in any::<u64>(), sync in any::<bool>(),
        ) {
            let p = GaussianPulse::new(1.5, 0.0, 0.0, 0.1, 1.0).unwrap();
            let arch = if sync { Architecture::Synchronized } else { Architecture::Uncoordinated };
            let cfg = ArrayConfig::new(arch, n, spacing, p, seed).unwrap();
            let grid = Grid1D::new(-2.0, 2.0, 161).unwrap();
            let a = sample_array_t00(&cfg, &grid, 0.2).unwrap();
            let b = sample_array_t00(&cfg.with_unit_pulse(p.scaled(2.0)), &grid, 0.2).unwrap();
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert_eq!(2.0 * x, *y);
                prop_assert!(*x <= 0.0);
            }
        }

        #[test]
        fn synchronized_is_deeper_than_single(n in 2usize..12, ratio in 0.0f64..2.99) {
            let sigma = 0.1;
            let p = GaussianPulse::new(1.0, 0.0, 0.0, sigma, 1.0).unwrap();
            let spacing = (ratio * sigma).max(1e-4);
            let sync = ArrayConfig::new(Architecture::Synchronized, n, spacing, p, 0).unwrap();
            let grid = Grid1D::new(-4.0, 4.0, 801).unwrap();
            let s = sample_array_t00(&sync, &grid, 0.0).unwrap();
            let single = sample_array_t00(&ArrayConfig::single(p).unwrap(), &grid, 0.0).unwrap();
            prop_assert!(s.min() < single.min());
        }
    }
}
