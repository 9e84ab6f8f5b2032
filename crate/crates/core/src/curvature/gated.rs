use serde::{Deserialize, Serialize};

use super::SignConvention;
use crate::error::{ensure_finite, ensure_positive, Error, Result};

/// A synchronized array fired as one Gaussian curvature pulse in time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GatedPulseSpec {
    pub n_units: usize,
    /// Per-pair curvature magnitude δR₀, m⁻².
    pub delta_r0: f64,
    pub t0: f64,
    pub sigma_t: f64,
}

impl GatedPulseSpec {
    pub fn new(n_units: usize, delta_r0: f64, t0: f64, sigma_t: f64) -> Result<Self> {
        let s = Self {
            n_units,
            delta_r0,
            t0,
            sigma_t,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_units == 0 {
            return Err(Error::invalid("gated pulse n_units", "must be >= 1"));
        }
        ensure_positive("gated pulse delta_r0", self.delta_r0)?;
        ensure_positive("gated pulse sigma_t", self.sigma_t)?;
        ensure_finite("gated pulse t0", self.t0)
    }
}

/// `N·δR₀·exp(-(t-t₀)²/2σ²)`, negative under [`SignConvention::DipNegative`].
pub fn gated_pulse(spec: &GatedPulseSpec, sign: SignConvention, t: f64) -> f64 {
    let dt = t - spec.t0;
    let shape = (-(dt * dt) / (2.0 * spec.sigma_t * spec.sigma_t)).exp();
    -sign.factor() * spec.n_units as f64 * spec.delta_r0 * shape
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fiducial_peak() {
        let s = GatedPulseSpec::new(1, 1e-36, 2.0, 0.5).unwrap();
        assert_eq!(gated_pulse(&s, SignConvention::DipNegative, 2.0), -1e-36);
        assert_eq!(gated_pulse(&s, SignConvention::LiteralEqNine, 2.0), 1e-36);
    }

    #[test]
    fn one_sigma_falloff() {
        let s = GatedPulseSpec::new(3, 1e-36, 0.0, 0.25).unwrap();
        let v = gated_pulse(&s, SignConvention::DipNegative, 0.25);
        let expect = -3e-36 * (-0.5f64).exp();
        assert!(((v - expect) / expect).abs() < 1e-15);
    }

    #[test]
    fn ten_units_is_ten_times_one() {
        let one = GatedPulseSpec::new(1, 1e-36, 0.0, 1.0).unwrap();
        let ten = GatedPulseSpec { n_units: 10, ..one };
        let a = gated_pulse(&one, SignConvention::DipNegative, 0.0);
        let b = gated_pulse(&ten, SignConvention::DipNegative, 0.0);
        assert_eq!(b, 10.0 * a);
    }

    #[test]
    fn validation() {
        assert!(GatedPulseSpec::new(0, 1e-36, 0.0, 1.0).is_err());
        assert!(GatedPulseSpec::new(1, 0.0, 0.0, 1.0).is_err());
        assert!(GatedPulseSpec::new(1, 1e-36, 0.0, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn linear_in_units_and_amplitude(
            n in 1usize..10_000, k in 1usize..50, dr in 1e-40f64..1e-20, scale in 0.5f64..100.0, t in -3.0f64..3.0,
        ) {
            let a = GatedPulseSpec::new(n, dr, 0.0, 1.0).unwrap();
            let b = GatedPulseSpec { n_units: n * k, ..a };
            let c = GatedPulseSpec { delta_r0: dr * scale, ..a };
            let va = gated_pulse(&a, SignConvention::DipNegative, t);
            let vb = gated_pulse(&b, SignConvention::DipNegative, t);
            let vc = gated_pulse(&c, SignConvention::DipNegative, t);
            prop_assert!((vb / va - k as f64).abs() <= 1e-12 * k as f64);
            prop_assert!((vc / va - scale).abs() <= 1e-12 * scale);
        }
    }
}
