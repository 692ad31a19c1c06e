//! Nonnegative reals stored by their natural logarithm.
//!
//! Every eigenvalue, weight and threshold in this crate lives in `[0, 1]`,
//! and products of thousands of such factors underflow `f64` long before
//! they become uninteresting. `LogValue` keeps the logarithm instead, with
//! `-inf` standing for an exact zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

/// A value in `[0, ∞)` represented as `ln(value)`; `-inf` is exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogValue(f64);

impl LogValue {
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    pub const ONE: LogValue = LogValue(0.0);

    /// Wraps a log magnitude. NaN and `+inf` are rejected.
    pub fn from_ln(ln: f64) -> Option<Self> {
        if ln.is_nan() || ln == f64::INFINITY {
            None
        } else {
            Some(LogValue(ln))
        }
    }

    /// Converts a nonnegative finite value.
    pub fn from_value(value: f64) -> Option<Self> {
        if value.is_nan() || value < 0.0 || value.is_infinite() {
            None
        } else {
            Some(LogValue(value.ln()))
        }
    }

    /// `ε²` in log form, i.e. `2 ln ε`.
    pub fn squared_threshold(eps: f64) -> Self {
        LogValue(2.0 * eps.ln())
    }

    #[inline]
    pub fn ln(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0.exp()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `ln(1/x)`, which is `+inf` for zero.
    #[inline]
    pub fn ln_recip(self) -> f64 {
        -self.0
    }

    /// Raises to a nonnegative real power; `0^0 = 1`.
    pub fn powf(self, exponent: f64) -> Self {
        if exponent == 0.0 {
            LogValue::ONE
        } else {
            LogValue(self.0 * exponent)
        }
    }

    /// Strict comparison `self > other` on log magnitudes, no tolerance.
    #[inline]
    pub fn exceeds(self, other: LogValue) -> bool {
        self.0 > other.0
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)] // products add in the log domain
    fn mul(self, rhs: LogValue) -> LogValue {
        // -inf absorbs; -inf + finite stays -inf, and +inf never occurs.
        LogValue(self.0 + rhs.0)
    }
}

impl Div for LogValue {
    type Output = LogValue;

    /// Division by a nonzero value; dividing by zero panics.
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "LogValue division by zero");
        LogValue(self.0 - rhs.0)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

/// `ln(e^a + e^b)` without overflow.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ e^{x_i}` over an iterator of log terms. Empty input gives `-inf`.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    max + sum.ln()
}

/// `ln Γ(x)` for `x > 0`.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `ln C(n, k)` via log-gamma; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `ln(n! / (n-m)!)`, the falling factorial; `-inf` when `m > n`.
pub fn ln_falling_factorial(n: u64, m: u64) -> f64 {
    if m > n {
        return f64::NEG_INFINITY;
    }
    if m == 0 {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma((n - m) as f64 + 1.0)
}

/// `ln(1 + e^x)` for any real x.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}
