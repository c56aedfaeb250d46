//! Vector-valued step functions on [0,1) with exact rational breakpoints.
//!
//! A `StepFunction` is constant on each half-open interval `[b_i, b_{i+1})`.
//! Values are stored unreduced: adjacent equal values are kept as separate
//! pieces so that partition refinement stays deterministic.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::IntervalExchange;
use crate::norm::{Norm, NormValue};
use crate::rational::{format_rational, rat_int, Rational};
use crate::vector::RationalVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<RationalVector>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<RationalVector>) -> Result<Self> {
        if values.is_empty() || breakpoints.len() != values.len() + 1 {
            return Err(Error::Invalid {
                what: "step function",
                why: format!(
                    "{} breakpoints for {} values",
                    breakpoints.len(),
                    values.len()
                ),
            });
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != rat_int(1) {
            return Err(Error::Invalid {
                what: "step function",
                why: "breakpoints must start at 0 and end at 1".into(),
            });
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid {
                what: "step function",
                why: "breakpoints must be strictly increasing".into(),
            });
        }
        RationalVector::check_same_dim(&values)?;
        Ok(Self {
            breakpoints,
            values,
        })
    }

    /// n equal-length intervals [k/n, (k+1)/n).
    pub fn equal_intervals(values: Vec<RationalVector>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let breakpoints = (0..=n).map(|k| Rational::new(k.into(), n.into())).collect();
        Self::new(breakpoints, values)
    }

    pub fn constant(value: RationalVector) -> Self {
        Self {
            breakpoints: vec![Rational::zero(), rat_int(1)],
            values: vec![value],
        }
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn pieces(&self) -> usize {
        self.values.len()
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[RationalVector] {
        &self.values
    }

    pub fn piece_length(&self, i: usize) -> Rational {
        &self.breakpoints[i + 1] - &self.breakpoints[i]
    }

    /// True when the intervals all have length `1/pieces()`.
    pub fn has_equal_intervals(&self) -> bool {
        let n = self.pieces();
        self.breakpoints
            .iter()
            .enumerate()
            .all(|(k, b)| *b == Rational::new(k.into(), n.into()))
    }

    /// Index of the piece containing t ∈ [0,1).
    fn piece_index(&self, t: &Rational) -> usize {
        assert!(
            !t.is_negative() && *t < rat_int(1),
            "point outside [0,1): {}",
            format_rational(t)
        );
        // partition_point: first i with breakpoints[i+1] > t
        self.breakpoints[1..].partition_point(|b| b <= t)
    }

    pub fn value_at(&self, t: &Rational) -> &RationalVector {
        &self.values[self.piece_index(t)]
    }

    /// True for interior breakpoints (0 < b < 1).
    pub fn is_interior_breakpoint(&self, t: &Rational) -> bool {
        !t.is_zero() && self.breakpoints.binary_search(t).is_ok()
    }

    /// Exact mean Σ length_i · value_i.
    pub fn mean(&self) -> RationalVector {
        let mut acc = RationalVector::zero(self.dim());
        for (i, v) in self.values.iter().enumerate() {
            acc += &v.scale(&self.piece_length(i));
        }
        acc
    }

    /// The essential value set σ(f): the distinct values, in first-appearance
    /// order.
    pub fn essential_values(&self) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = Vec::new();
        for v in &self.values {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn sup_norm(&self, norm: Norm) -> NormValue {
        self.values
            .iter()
            .map(|v| norm.value(v))
            .fold(NormValue::zero(), NormValue::max)
    }

    /// Essential sup of ‖f‖ over a finite union of intervals (only cells
    /// meeting X in positive measure count).
    pub fn sup_norm_on(&self, norm: Norm, x: &[(Rational, Rational)]) -> NormValue {
        let mut out = NormValue::zero();
        for (i, v) in self.values.iter().enumerate() {
            let (lo, hi) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
            for (xlo, xhi) in x {
                if xlo.max(lo) < xhi.min(hi) {
                    out = out.max(norm.value(v));
                    break;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RationalVector::is_zero)
    }

    /// Same function on a partition refined by `extra` points.
    pub fn refined(&self, extra: &[Rational]) -> StepFunction {
        let mut bps = self.breakpoints.clone();
        for p in extra {
            if p.is_positive() && *p < rat_int(1) && bps.binary_search(p).is_err() {
                let pos = bps.partition_point(|b| b < p);
                bps.insert(pos, p.clone());
            }
        }
        let values = bps[..bps.len() - 1]
            .iter()
            .map(|b| self.value_at(b).clone())
            .collect();
        StepFunction {
            breakpoints: bps,
            values,
        }
    }

    /// Pointwise combination on the common refinement.
    pub fn zip_with(
        &self,
        other: &StepFunction,
        f: impl Fn(&RationalVector, &RationalVector) -> RationalVector,
    ) -> StepFunction {
        let a = self.refined(&other.breakpoints);
        let b = other.refined(&self.breakpoints);
        debug_assert_eq!(a.breakpoints, b.breakpoints);
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| f(x, y))
            .collect();
        StepFunction {
            breakpoints: a.breakpoints,
            values,
        }
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.zip_with(other, |a, b| a - b)
    }

    /// The composition f∘T: t ↦ f(T(t)), with breakpoints obtained by pulling
    /// f's partition back through each translation piece of T.
    pub fn compose(&self, t: &IntervalExchange) -> StepFunction {
        let mut breakpoints: Vec<Rational> = Vec::new();
        let mut values: Vec<RationalVector> = Vec::new();
        for piece in t.pieces() {
            // Cut points of this piece: its start plus pullbacks of f's
            // interior breakpoints landing strictly inside.
            let mut cuts = vec![piece.lo.clone()];
            for b in &self.breakpoints[1..self.breakpoints.len() - 1] {
                let pre = b - &piece.shift;
                if pre > piece.lo && pre < piece.hi {
                    cuts.push(pre);
                }
            }
            cuts.sort();
            for c in cuts {
                let image = &c + &piece.shift;
                values.push(self.value_at(&image).clone());
                breakpoints.push(c);
            }
        }
        breakpoints.push(rat_int(1));
        StepFunction {
            breakpoints,
            values,
        }
    }
}
