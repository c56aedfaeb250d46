//! The infinite-dimensional obstruction, made checkable: centered simplex
//! vertex families in dimension d = 2^n whose half-length sums all have
//! squared norm at least d/8. The growth of that lower bound along n is what
//! rules out a uniform prefix bound in infinite dimensions.

use num_bigint::BigInt;
use num_traits::One;
#[cfg(test)]
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
#[cfg(test)]
use crate::rational::rat_int;
use crate::vector::RationalVector;

pub const MAX_EXPONENT: usize = 8;
/// Exhaustive half-sum enumeration is used up to this dimension.
pub const EXHAUSTIVE_DIM: usize = 8;
const SAMPLES: usize = 4096;

#[derive(Clone, Debug)]
pub struct SimplexFamily {
    /// d = 2^n vertices of the centered regular simplex, x_k = e_k − (1/d)·1.
    pub vertices: Vec<RationalVector>,
    /// min ‖y‖² over sums y of d/2 vertices with repetition: the exact
    /// minimum for d ≤ EXHAUSTIVE_DIM, otherwise the smallest sampled value.
    pub min_half_sum_norm_sq: Rational,
    /// The analytic lower bound d/8 every half sum satisfies.
    pub analytic_lower_bound_sq: Rational,
    /// Whether the minimum came from full enumeration.
    pub exhaustive: bool,
}

/// Builds the dimension-2^n family and certifies its half-sum growth bound:
/// ‖x_k‖² = (d−1)/d, Σ x_k = 0, and every inspected half sum has
/// ‖y‖² ≥ d/8 (checked exactly; a violation would falsify the construction
/// and is reported as a bound violation).
pub fn simplex_counterexample(n: usize) -> Result<SimplexFamily> {
    if n == 0 || n > MAX_EXPONENT {
        return Err(Error::DimensionTooLarge {
            n,
            limit: MAX_EXPONENT,
        });
    }
    let d = 1usize << n;
    let inv_d = rat(1, d as i64);
    let mut vertices = Vec::with_capacity(d);
    for k in 0..d {
        let entries = (0..d)
            .map(|i| {
                if i == k {
                    Rational::one() - &inv_d
                } else {
                    -inv_d.clone()
                }
            })
            .collect();
        vertices.push(RationalVector::new(entries)?);
    }

    // ‖x_k‖² = (d−1)/d, exactly, for every k; and the family sums to zero.
    let expected_sq = rat((d as i64) - 1, d as i64);
    for x in &vertices {
        if x.dot(x) != expected_sq {
            return Err(Error::BoundViolated {
                what: "simplex vertex norm",
            });
        }
    }
    if !RationalVector::sum(d, &vertices).is_zero() {
        return Err(Error::BoundViolated {
            what: "simplex vertex sum",
        });
    }

    // A half sum y of multiplicities (c_1..c_d), Σc_i = d/2, has
    // ‖y‖² = Σ(c_i − 1/2)² = Σc_i² − d/4.
    let half = d / 2;
    let norm_sq_of = |counts: &[u64]| -> Rational {
        let sum_sq: BigInt = counts.iter().map(|&c| BigInt::from(c * c)).sum();
        Rational::new(sum_sq * 4 - BigInt::from(d), BigInt::from(4))
    };

    let exhaustive = d <= EXHAUSTIVE_DIM;
    let mut min_sq: Option<Rational> = None;
    if exhaustive {
        // All weak compositions of d/2 into d parts.
        let mut counts = vec![0u64; d];
        fn walk(
            counts: &mut Vec<u64>,
            at: usize,
            remaining: u64,
            min_sq: &mut Option<Rational>,
            norm_sq_of: &dyn Fn(&[u64]) -> Rational,
        ) {
            if at + 1 == counts.len() {
                counts[at] = remaining;
                let sq = norm_sq_of(counts);
                if min_sq.as_ref().is_none_or(|m| sq < *m) {
                    *min_sq = Some(sq);
                }
                return;
            }
            for c in 0..=remaining {
                counts[at] = c;
                walk(counts, at + 1, remaining - c, min_sq, norm_sq_of);
            }
        }
        walk(&mut counts, 0, half as u64, &mut min_sq, &norm_sq_of);
    } else {
        // Seeded sampling; the analytic bound certifies every sample anyway.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e_0000 + n as u64);
        for _ in 0..SAMPLES {
            let mut counts = vec![0u64; d];
            for _ in 0..half {
                counts[rng.random_range(0..d)] += 1;
            }
            let sq = norm_sq_of(&counts);
            if min_sq.as_ref().is_none_or(|m| sq < *m) {
                min_sq = Some(sq);
            }
        }
    }
    let min_sq = min_sq.expect("at least one half sum inspected");

    let analytic = rat(d as i64, 8);
    if min_sq < analytic {
        return Err(Error::BoundViolated {
            what: "half-sum lower bound",
        });
    }

    Ok(SimplexFamily {
        vertices,
        min_half_sum_norm_sq: min_sq,
        analytic_lower_bound_sq: analytic,
        exhaustive,
    })
}
