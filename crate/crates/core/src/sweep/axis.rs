use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of points allowed on one sweep axis.
pub const MAX_AXIS_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log10,
}

fn default_points() -> usize {
    super::DEFAULT_AXIS_POINTS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub param: String,
    pub min: f64,
    pub max: f64,
    #[serde(default = "default_points")]
    pub n_points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl AxisSpec {
    pub fn linear(param: &str, min: f64, max: f64, n_points: usize) -> Result<Self> {
        Self::new(param, min, max, n_points, Scale::Linear)
    }

    pub fn log10(param: &str, min: f64, max: f64, n_points: usize) -> Result<Self> {
        Self::new(param, min, max, n_points, Scale::Log10)
    }

    pub fn new(param: &str, min: f64, max: f64, n_points: usize, scale: Scale) -> Result<Self> {
        let a = Self {
            param: param.to_string(),
            min,
            max,
            n_points,
            scale,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        let what = format!("axis `{}`", self.param);
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return Err(Error::invalid(
                what,
                format!("needs finite min < max (got [{}, {}])", self.min, self.max),
            ));
        }
        if self.scale == Scale::Log10 && self.min <= 0.0 {
            return Err(Error::invalid(
                what,
                format!("log10 axis needs min > 0 (got {})", self.min),
            ));
        }
        if !(2..=MAX_AXIS_POINTS).contains(&self.n_points) {
            return Err(Error::invalid(
                what,
                format!("n_points must be in [2, {MAX_AXIS_POINTS}] (got {})", self.n_points),
            ));
        }
        Ok(())
    }

    /// Parameter value at fractional index `f` (0 ..= n_points-1), interpolated
    /// in log space for log axes.
    pub fn coord_at(&self, f: f64) -> f64 {
        let last = (self.n_points - 1) as f64;
        if f == last {
            return self.max;
        }
        let u = f / last;
        let v = match self.scale {
            Scale::Linear => self.min + u * (self.max - self.min),
            Scale::Log10 => {
                let (lo, hi) = (self.min.log10(), self.max.log10());
                10f64.powf(lo + u * (hi - lo))
            }
        };
        v.clamp(self.min, self.max)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.coord_at(i as f64)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let a = AxisSpec::log10("n_units", 1.0, 1e4, 101).unwrap();
        let v = a.values();
        assert_eq!(v[0], 1.0);
        assert_eq!(v[100], 1e4);
        assert!((v[50] - 100.0).abs() < 1e-12);
        let l = AxisSpec::linear("x", -1.0, 1.0, 5).unwrap();
        assert_eq!(l.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }

    #[test]
    fn validation() {
        assert!(AxisSpec::log10("d", 0.0, 1.0, 10).is_err());
        assert!(AxisSpec::linear("d", 1.0, 1.0, 10).is_err());
        assert!(AxisSpec::linear("d", 0.0, 1.0, 1).is_err());
        assert!(AxisSpec::linear("d", 0.0, 1.0, MAX_AXIS_POINTS + 1).is_err());
    }
}
