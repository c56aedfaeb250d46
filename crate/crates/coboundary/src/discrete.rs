//! Functions on a finite set Ω_n with counting measure.

use crate::error::{Error, Result};
use crate::norm::{Norm, NormValue};
use crate::vector::RationalVector;

/// f : Ω_n → V, stored as one vector per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteFunction {
    values: Vec<RationalVector>,
}

impl DiscreteFunction {
    pub fn new(values: Vec<RationalVector>) -> Result<Self> {
        RationalVector::check_same_dim(&values)?;
        Ok(Self { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[RationalVector] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &RationalVector {
        &self.values[i]
    }

    /// Σ_i f(i), the mean up to the factor n.
    pub fn sum(&self) -> RationalVector {
        RationalVector::sum(self.dim(), &self.values)
    }

    pub fn is_mean_zero(&self) -> bool {
        self.sum().is_zero()
    }

    pub fn ensure_mean_zero(&self) -> Result<()> {
        let s = self.sum();
        if s.is_zero() {
            Ok(())
        } else {
            let n = self.n() as i64;
            Err(Error::NotMeanZero {
                mean: format!("{:?}", s.scale(&crate::rational::rat(1, n))),
            })
        }
    }

    /// ‖f‖∞ = max_i ‖f(i)‖.
    pub fn sup_norm(&self, norm: Norm) -> NormValue {
        self.values
            .iter()
            .map(|v| norm.value(v))
            .fold(NormValue::zero(), NormValue::max)
    }
}
