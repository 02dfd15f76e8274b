use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A non-negative real number stored as its natural logarithm.
///
/// Zero is represented by `ln = -inf`. Serialises as `{"ln": <f64>}` so that
/// consumers never see the (frequently overflowing) linear value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: f64::NEG_INFINITY };
    pub const ONE: LogValue = LogValue { ln: 0.0 };

    pub fn from_ln(ln: f64) -> Self {
        assert!(!ln.is_nan(), "LogValue from NaN");
        LogValue { ln }
    }

    /// Panics on negative or NaN input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0, "LogValue of negative number {x}");
        LogValue { ln: x.ln() }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        LogValue { ln: ln_biguint(x) }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// log10 of the value, convenient for "< 10^-k" style thresholds.
    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    /// Linear value; overflows to `inf` or underflows to 0 outside f64 range.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn powf(self, e: f64) -> LogValue {
        if self.is_zero() {
            return if e == 0.0 { LogValue::ONE } else { LogValue::ZERO };
        }
        LogValue { ln: self.ln * e }
    }
}

/// Stable log-sum-exp.
impl Add for LogValue {
    type Output = LogValue;
    fn add(self, other: LogValue) -> LogValue {
        let (hi, lo) = if self.ln >= other.ln {
            (self.ln, other.ln)
        } else {
            (other.ln, self.ln)
        };
        if hi == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        LogValue {
            ln: hi + (lo - hi).exp().ln_1p(),
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            return LogValue::ZERO;
        }
        LogValue { ln: self.ln + rhs.ln }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "LogValue division by zero");
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue { ln: self.ln - rhs.ln }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.ln.partial_cmp(&other.ln)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.ln)
    }
}

/// Natural log of a big integer from its leading 64 bits; relative
/// accuracy is near f64 machine precision at any size. `ln(0) = -inf`.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0);
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
