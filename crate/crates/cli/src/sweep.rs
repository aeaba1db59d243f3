use std::fmt;
use std::str::FromStr;

use edms_core::numerics::{linspace, logspace};

use crate::error::{usage, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Gamma,
    RSk,
    RM,
    Lambda,
    N,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::Gamma => "gamma",
            Variable::RSk => "r_sk",
            Variable::RM => "r_m",
            Variable::Lambda => "lambda",
            Variable::N => "n",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Scale {
    Linear,
    #[default]
    Log,
}

/// A validated grid over one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl SweepSpec {
    pub fn new(variable: Variable, start: f64, stop: f64, points: usize, scale: Scale) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return usage(format!("{variable} range must be finite"));
        }
        if !(start < stop) {
            return usage(format!("{variable} range needs start < stop (got {start}:{stop})"));
        }
        if points < 2 {
            return usage(format!("{variable} sweep needs at least 2 points"));
        }
        if scale == Scale::Log && start <= 0.0 {
            return usage(format!("log-scale {variable} sweep needs a positive start"));
        }
        Ok(Self { variable, start, stop, points, scale })
    }

    pub fn values(&self) -> Vec<f64> {
        match self.scale {
            Scale::Linear => linspace(self.start, self.stop, self.points),
            Scale::Log => logspace(self.start, self.stop, self.points),
        }
    }
}

/// A `start:stop` pair as typed on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected start:stop, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        Ok(Range { start: parse(a)?, stop: parse(b)? })
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SweepSpec::new(Variable::Gamma, 0.0, 1.0, 10, Scale::Log).is_err());
        assert!(SweepSpec::new(Variable::Gamma, 1.0, 1.0, 10, Scale::Linear).is_err());
        assert!(SweepSpec::new(Variable::RM, 0.0, 1.0, 1, Scale::Linear).is_err());
        let s = SweepSpec::new(Variable::Gamma, 0.01, 10.0, 4, Scale::Log).unwrap();
        let v = s.values();
        assert_eq!(v.len(), 4);
        assert!((v[1] - 0.1).abs() < 1e-15 && (v[3] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn ranges() {
        assert_eq!("0.1:2".parse::<Range>().unwrap(), Range { start: 0.1, stop: 2.0 });
        assert!("0.1".parse::<Range>().is_err());
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
    }
}
