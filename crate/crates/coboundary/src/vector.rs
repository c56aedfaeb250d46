//! Fixed-dimension vectors with exact rational entries.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// An element of the ambient d-dimensional space. The dimension is fixed at
/// construction; mixed-dimension arithmetic panics (it is always a bug).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self { entries })
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self {
            entries: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Component projection P_i (0-based).
    pub fn component(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Euclidean inner product, exact.
    pub fn dot(&self, other: &Self) -> Rational {
        self.check_dim(other);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
    }

    pub fn check_same_dim(vectors: &[RationalVector]) -> Result<usize> {
        let first = vectors.first().ok_or(Error::EmptyInput)?;
        let d = first.dim();
        for v in vectors {
            if v.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.dim(),
                });
            }
        }
        Ok(d)
    }

    pub fn sum<'a>(dim: usize, iter: impl IntoIterator<Item = &'a RationalVector>) -> Self {
        let mut acc = Self::zero(dim);
        for v in iter {
            acc += v;
        }
        acc
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(e))?;
        }
        write!(f, ")")
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        self.check_dim(rhs);
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        self.check_dim(rhs);
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl AddAssign<&RationalVector> for RationalVector {
    fn add_assign(&mut self, rhs: &RationalVector) {
        self.check_dim(rhs);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

impl SubAssign<&RationalVector> for RationalVector {
    fn sub_assign(&mut self, rhs: &RationalVector) {
        self.check_dim(rhs);
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
    }
}
