//! Deterministic seeded instance generators shared by the CLI, the examples,
//! and the acceptance suite. Identical seeds always reproduce identical
//! instances.

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cantor::CantorStep;
use crate::discrete::DiscreteFunction;
use crate::norm::Norm;
use crate::rational::{rat, rat_int, Rational};
use crate::selection::VectorMatrix;
use crate::step::StepFunction;
use crate::vector::RationalVector;

pub fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in [−1, 1] with denominator `den`.
pub fn random_rational(rng: &mut ChaCha8Rng, den: i64) -> Rational {
    rat(rng.random_range(-den..=den), den)
}

/// A vector with ‖·‖ ≤ 1 under `norm`, by sampling components from a range
/// scaled to the dimension.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, d: usize, norm: Norm) -> RationalVector {
    let den = match norm {
        Norm::Linf => 8,
        Norm::L1 => 8 * d as i64,
        Norm::L2 => 8 * (d as f64).sqrt().ceil() as i64,
    };
    RationalVector::new((0..d).map(|_| rat(rng.random_range(-8..=8), den)).collect())
        .expect("d >= 1")
}

/// n vectors summing to exactly zero (each value is a sampled vector minus
/// the family mean).
pub fn random_zero_sum_family(
    rng: &mut ChaCha8Rng,
    n: usize,
    d: usize,
    norm: Norm,
) -> Vec<RationalVector> {
    let raw: Vec<RationalVector> = (0..n).map(|_| random_unit_vector(rng, d, norm)).collect();
    let mean = RationalVector::sum(d, &raw).scale(&rat(1, n as i64));
    raw.iter().map(|v| v - &mean).collect()
}

pub fn random_mean_zero_discrete(rng: &mut ChaCha8Rng, n: usize, d: usize) -> DiscreteFunction {
    DiscreteFunction::new(random_zero_sum_family(rng, n, d, Norm::Linf))
        .expect("family is nonempty and rectangular")
}

pub fn random_mean_zero_equal_step(rng: &mut ChaCha8Rng, n: usize, d: usize) -> StepFunction {
    StepFunction::equal_intervals(random_zero_sum_family(rng, n, d, Norm::Linf))
        .expect("family is nonempty")
}

/// An n×m matrix with entry norms at most 1; with `zero_rows`, every row is
/// centered to sum to zero (and rescaled by 1/2 to stay inside the ball).
pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    d: usize,
    norm: Norm,
    zero_rows: bool,
) -> VectorMatrix {
    let half = rat(1, 2);
    let rows: Vec<Vec<RationalVector>> = (0..n)
        .map(|_| {
            let raw: Vec<RationalVector> =
                (0..m).map(|_| random_unit_vector(rng, d, norm)).collect();
            if zero_rows {
                let mean = RationalVector::sum(d, &raw).scale(&rat(1, m as i64));
                raw.iter().map(|v| (v - &mean).scale(&half)).collect()
            } else {
                raw
            }
        })
        .collect();
    VectorMatrix::new(rows, norm).expect("rectangular by construction")
}

/// A mean zero function on the depth-`depth` cylinders. With `multiscale`,
/// values are sums of per-level contributions whose magnitude decays by
/// 1/4096 per level, so the proof-shaped refinement schedule climbs the
/// full ladder instead of jumping straight to the deepest level.
pub fn random_mean_zero_cantor(
    rng: &mut ChaCha8Rng,
    q: usize,
    depth: usize,
    d: usize,
    multiscale: bool,
) -> CantorStep {
    let cells = q << depth;
    let mut values = vec![RationalVector::zero(d); cells];
    if multiscale {
        let mut scale = rat_int(1);
        let decay = rat(1, 4096);
        for level in 0..=depth {
            let block = 1usize << (depth - level);
            for cell_group in 0..(q << level) {
                let contribution = random_unit_vector(rng, d, Norm::Linf).scale(&scale);
                for c in cell_group * block..(cell_group + 1) * block {
                    values[c] += &contribution;
                }
            }
            scale *= &decay;
        }
    } else {
        for v in values.iter_mut() {
            *v = random_unit_vector(rng, d, Norm::Linf);
        }
    }
    let mean = RationalVector::sum(d, &values).scale(&rat(1, cells as i64));
    let values = values.iter().map(|v| v - &mean).collect();
    CantorStep::new(q, rat_int(1), depth, values).expect("sizes agree")
}

/// A plane family that needs a large prefix constant: k tilted vectors
/// (1, y_j) and k tilted (−1, y'_j) with y ≈ 1/(2k), plus the balancing
/// vector (0, −Σy). Any ordering is forced through a prefix close to
/// (±1, ∓1/2) relative to the max norm.
pub fn tilted_pair_family(rng: &mut ChaCha8Rng, k: usize) -> Vec<RationalVector> {
    let base = rat(1, 2 * k as i64);
    let mut family = Vec::with_capacity(2 * k + 1);
    let mut total_y = Rational::from_integer(0.into());
    for sign in [1i64, -1] {
        for _ in 0..k {
            let jitter = rat(rng.random_range(-8..=8), 1024);
            let y = &base + jitter;
            total_y += &y;
            family.push(RationalVector::new(vec![rat_int(sign), y]).expect("dim 2"));
        }
    }
    family.push(RationalVector::new(vec![rat_int(0), -total_y]).expect("dim 2"));
    family
}

/// The stream of plane families the oracle search walks: uniform zero-sum
/// families interleaved with tilted-pair families.
pub fn oracle_search_family(rng: &mut ChaCha8Rng, index: usize) -> Vec<RationalVector> {
    if index % 2 == 0 {
        let n = rng.random_range(4..=8);
        random_zero_sum_family(rng, n, 2, Norm::L2)
    } else {
        let k = *[2usize, 3].choose(rng).expect("nonempty");
        tilted_pair_family(rng, k)
    }
}
