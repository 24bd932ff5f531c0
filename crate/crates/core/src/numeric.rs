//! MPFR-backed numerics for the few places that need real numbers
//! (angles, roots of unity, the numeric search prefilter).

use rug::float::Constant;
use rug::{Float, Rational};

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-20;

/// Working precision and absolute tolerance for numeric comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericConfig {
    pub bits: u32,
    pub tolerance: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            bits: DEFAULT_PRECISION_BITS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl NumericConfig {
    pub fn new(bits: u32, tolerance: f64) -> Self {
        Self { bits, tolerance }
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    pub fn float(&self, r: &Rational) -> Float {
        Float::with_val(self.bits, r)
    }

    pub fn is_negligible(&self, x: &Float) -> bool {
        x.clone().abs() < self.tolerance
    }
}

/// `k * pi / n` at the given precision.
pub fn pi_fraction(cfg: &NumericConfig, k: i64, n: i64) -> Float {
    cfg.pi() * Rational::from((k, n))
}
