//! Constructive vector rearrangement with certified prefix-sum bounds.
//!
//! `steinitz_rearrange` orders a finite family x_1..x_n so that every prefix
//! stays within d·M of the line segment from 0 to the total sum, where d is
//! the ambient dimension and M the largest input norm. The construction is
//! the classical peeling argument: keep nested index sets B_n ⊃ … ⊃ B_d with
//! a feasible weight vector λ ∈ [0,1]^{B_k}, Σλ = k−d, Σλ_i·x_i = ((k−d)/n)·x,
//! move λ to a vertex of that polytope by exact pivoting, and peel off an
//! index whose weight vanished. `steinitz_oracle` finds the true optimal
//! prefix bound of a zero-sum family by branch-and-bound over all orderings.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::drive_to_vertex;
use crate::norm::{Norm, NormValue};
use crate::rational::{rat_int, Rational};
use crate::vector::RationalVector;

/// Largest n for which exhaustive permutation search is allowed.
pub const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Debug)]
pub struct RearrangementResult {
    /// Position k (0-based) holds input index `permutation[k]`.
    pub permutation: Vec<usize>,
    /// max_k ‖Σ_{i≤k} x_{π(i)} − ((k−d)/n)·x‖, recomputed from the permutation.
    pub achieved_bound: NormValue,
    /// The total sum x = Σ x_i.
    pub anchor: RationalVector,
}

/// The anchored prefix deviation of a given ordering, recomputed by direct
/// summation: max over k = 1..n of ‖Σ_{i≤k} x_{π(i)} − ((k−d)/n)·x‖.
pub fn anchored_deviation(vectors: &[RationalVector], perm: &[usize], norm: Norm) -> NormValue {
    let n = vectors.len();
    let d = vectors[0].dim();
    let anchor = RationalVector::sum(d, vectors);
    let mut prefix = RationalVector::zero(d);
    let mut worst = NormValue::zero();
    for (k, &idx) in perm.iter().enumerate() {
        prefix += &vectors[idx];
        let t = Rational::new((k as i64 + 1 - d as i64).into(), (n as i64).into());
        let dev = &prefix - &anchor.scale(&t);
        worst = worst.max(norm.value(&dev));
    }
    worst
}

/// Plain prefix sup max_k ‖Σ_{i≤k} x_{π(i)}‖ (the quantity the oracle
/// optimizes; equals the anchored deviation when the family sums to zero).
pub fn prefix_sup(vectors: &[RationalVector], perm: &[usize], norm: Norm) -> NormValue {
    let d = vectors[0].dim();
    let mut prefix = RationalVector::zero(d);
    let mut worst = NormValue::zero();
    for &idx in perm {
        prefix += &vectors[idx];
        worst = worst.max(norm.value(&prefix));
    }
    worst
}

pub fn max_norm(vectors: &[RationalVector], norm: Norm) -> NormValue {
    vectors
        .iter()
        .map(|v| norm.value(v))
        .fold(NormValue::zero(), NormValue::max)
}

/// Rearranges so that the anchored prefix deviation is at most d·M. The
/// bound is verified by independent summation before returning.
pub fn steinitz_rearrange(
    vectors: &[RationalVector],
    norm: Norm,
) -> Result<RearrangementResult> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = RationalVector::check_same_dim(vectors)?;
    let n = vectors.len();

    let perm = if vectors.iter().all(RationalVector::is_zero) || n <= d {
        // Identity is optimal for the zero family and admissible for n ≤ d.
        (0..n).collect()
    } else {
        peel_permutation(vectors, d)
    };

    finish_rearrange(vectors, perm, norm, d)
}

fn finish_rearrange(
    vectors: &[RationalVector],
    perm: Vec<usize>,
    norm: Norm,
    d: usize,
) -> Result<RearrangementResult> {
    let m = max_norm(vectors, norm);
    let achieved = anchored_deviation(vectors, &perm, norm);
    if achieved.le_scaled(&rat_int(d as i64), &m) {
        return Ok(RearrangementResult {
            permutation: perm,
            achieved_bound: achieved,
            anchor: RationalVector::sum(d, vectors),
        });
    }
    // Should be unreachable; kept so a pivoting defect can never return an
    // unverified result.
    if vectors.len() <= ORACLE_LIMIT {
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        let found = lex_permutations_find(&mut order, 0, &mut |perm| {
            anchored_deviation(vectors, perm, norm).le_scaled(&rat_int(d as i64), &m)
        });
        if let Some(perm) = found {
            let achieved = anchored_deviation(vectors, &perm, norm);
            return Ok(RearrangementResult {
                permutation: perm,
                achieved_bound: achieved,
                anchor: RationalVector::sum(d, vectors),
            });
        }
    }
    Err(Error::BoundViolated {
        what: "steinitz rearrangement",
    })
}

/// The peeling loop. Returns the permutation as a position -> index table.
fn peel_permutation(vectors: &[RationalVector], d: usize) -> Vec<usize> {
    let n = vectors.len();
    let mut positions = vec![usize::MAX; n];
    let mut active: Vec<usize> = (0..n).collect();
    // λ_i = (n−d)/n on B_n.
    let frac = |num: i64, den: i64| Rational::new(num.into(), den.into());
    let mut weights = vec![frac(n as i64 - d as i64, n as i64); n];

    for k in (d + 1..=n).rev() {
        // Rescale to the level-(k−1) polytope: Σλ = k−1−d with the same
        // anchor constraint. The scaling keeps every coordinate in [0,1).
        let factor = frac(k as i64 - 1 - d as i64, k as i64 - d as i64);
        for w in weights.iter_mut() {
            *w *= &factor;
        }
        // Vertex of {λ ∈ [0,1]^B : Σλ_i x_i = ((k−1−d)/n)x, Σλ_i = k−1−d}.
        let cols: Vec<Vec<Rational>> = active
            .iter()
            .map(|&i| {
                let mut c: Vec<Rational> = vectors[i].entries().to_vec();
                c.push(Rational::one());
                c
            })
            .collect();
        drive_to_vertex(&cols, &mut weights);
        // Peel the largest zero-weight index so that low indices end up in
        // early positions (lowest index first in the final order).
        let Some(pos_in_active) = (0..active.len()).rev().find(|&j| weights[j].is_zero()) else {
            // A vertex of this polytope always has a zero coordinate for
            // k > d; reaching this line means the input violated an
            // invariant. Fall back to an arbitrary peel; the final bound
            // verification still protects the caller.
            let last = active.len() - 1;
            positions[k - 1] = active[last];
            active.pop();
            weights.pop();
            continue;
        };
        positions[k - 1] = active[pos_in_active];
        active.remove(pos_in_active);
        weights.remove(pos_in_active);
    }
    // The final d indices fill positions 1..d in input order.
    positions[..d].copy_from_slice(&active);
    positions
}

/// Exhaustive branch-and-bound oracle: the smallest achievable prefix sup of
/// a zero-sum family over all n! orderings, with the lexicographically least
/// witness attaining it.
pub fn steinitz_oracle(
    vectors: &[RationalVector],
    norm: Norm,
) -> Result<(NormValue, Vec<usize>)> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = RationalVector::check_same_dim(vectors)?;
    let n = vectors.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    let total = RationalVector::sum(d, vectors);
    if !total.is_zero() {
        return Err(Error::NotMeanZero {
            mean: format!("{:?}", total.scale(&crate::rational::rat(1, n as i64))),
        });
    }

    struct Search<'a> {
        vectors: &'a [RationalVector],
        norm: Norm,
        best: Option<(NormValue, Vec<usize>)>,
        current: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn dfs(&mut self, prefix: &RationalVector, prefix_max: NormValue) {
            if self.current.len() == self.vectors.len() {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => prefix_max < *b,
                };
                if better {
                    self.best = Some((prefix_max, self.current.clone()));
                }
                return;
            }
            for i in 0..self.vectors.len() {
                if self.used[i] {
                    continue;
                }
                let next = prefix + &self.vectors[i];
                let cand = prefix_max.clone().max(self.norm.value(&next));
                // Strict pruning keeps every optimal witness reachable, so
                // the lexicographically least one is found first.
                if let Some((b, _)) = &self.best {
                    if cand > *b {
                        continue;
                    }
                }
                self.used[i] = true;
                self.current.push(i);
                self.dfs(&next, cand);
                self.current.pop();
                self.used[i] = false;
            }
        }
    }

    let mut search = Search {
        vectors,
        norm,
        best: None,
        current: Vec::with_capacity(n),
        used: vec![false; n],
    };
    search.dfs(&RationalVector::zero(d), NormValue::zero());
    Ok(search.best.expect("at least one ordering exists"))
}

/// Visits permutations of `order[at..]` in lexicographic order until `pred`
/// accepts one.
fn lex_permutations_find(
    order: &mut Vec<usize>,
    at: usize,
    pred: &mut impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if at == order.len() {
        return pred(order).then(|| order.clone());
    }
    for i in at..order.len() {
        let mut next = order.clone();
        let v = next.remove(i);
        next.insert(at, v);
        if let Some(found) = lex_permutations_find(&mut next, at + 1, pred) {
            return Some(found);
        }
    }
    None
}
