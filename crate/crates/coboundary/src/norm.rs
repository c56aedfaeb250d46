//! Norms on rational vectors with exactly comparable values.
//!
//! L1 and L∞ norms of exact rational vectors are exact rationals. The
//! Euclidean norm is generally irrational, but its *square* is rational, so
//! every comparison this crate needs — `‖v‖ ≤ c·M` with rational `c ≥ 0` —
//! can still be decided exactly on squares. [`NormValue`] carries either the
//! exact value or the exact square and implements that comparison logic.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{decimal_approx, format_rational, Rational};
use crate::vector::RationalVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::L1, Norm::L2, Norm::Linf];

    pub fn value(&self, v: &RationalVector) -> NormValue {
        match self {
            Norm::L1 => NormValue::Exact(v.entries().iter().map(Signed::abs).sum()),
            Norm::Linf => NormValue::Exact(
                v.entries()
                    .iter()
                    .map(Signed::abs)
                    .max()
                    .expect("vectors are nonempty"),
            ),
            Norm::L2 => NormValue::Sqrt(v.dot(v)),
        }
    }

    pub fn parse(s: &str) -> Option<Norm> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Some(Norm::L1),
            "l2" => Some(Norm::L2),
            "linf" | "loo" | "max" => Some(Norm::Linf),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A nonnegative norm value, exactly representable either directly (L1/L∞)
/// or through its square (L2).
#[derive(Clone, Debug)]
pub enum NormValue {
    Exact(Rational),
    Sqrt(Rational),
}

impl NormValue {
    pub fn zero() -> Self {
        NormValue::Exact(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            NormValue::Exact(r) | NormValue::Sqrt(r) => r.is_zero(),
        }
    }

    /// The exact square of the value, always rational.
    pub fn squared(&self) -> Rational {
        match self {
            NormValue::Exact(r) => r * r,
            NormValue::Sqrt(r) => r.clone(),
        }
    }

    /// Multiplies by a nonnegative rational scalar.
    pub fn scale(&self, c: &Rational) -> NormValue {
        assert!(!c.is_negative(), "norm values are nonnegative");
        match self {
            NormValue::Exact(r) => NormValue::Exact(r * c),
            NormValue::Sqrt(r) => NormValue::Sqrt(r * (c * c)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            NormValue::Sqrt(r) => r.to_f64().unwrap_or(f64::NAN).sqrt(),
        }
    }

    pub fn max(self, other: NormValue) -> NormValue {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact test of `self ≤ c · m` for rational `c ≥ 0`.
    pub fn le_scaled(&self, c: &Rational, m: &NormValue) -> bool {
        *self <= m.scale(c)
    }

    /// Renders the exact payload: `"p/q"` or `"sqrt(p/q)"`.
    pub fn exact_string(&self) -> String {
        match self {
            NormValue::Exact(r) => format_rational(r),
            NormValue::Sqrt(r) => format!("sqrt({})", format_rational(r)),
        }
    }

    pub fn approx_string(&self) -> String {
        match self {
            NormValue::Exact(r) => decimal_approx(r, 12),
            NormValue::Sqrt(_) => {
                let root = self.to_f64();
                match Rational::from_float(root) {
                    Some(r) => decimal_approx(&r, 12),
                    None => root.to_string(),
                }
            }
        }
    }
}

impl PartialEq for NormValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for NormValue {}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormValue::Exact(a), NormValue::Exact(b)) => a.cmp(b),
            // Both operands are nonnegative, so comparing squares is exact.
            _ => self.squared().cmp(&other.squared()),
        }
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{})", self.exact_string(), self.approx_string())
    }
}
