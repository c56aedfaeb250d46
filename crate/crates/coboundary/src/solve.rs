//! Constructive solutions of f = g∘T − g on finite measure spaces and
//! equal-interval step functions, together with the verification operations
//! (exact residuals and uniform orbit partial-sum bounds).

use crate::discrete::DiscreteFunction;
use crate::error::{Error, Result};
use crate::exchange::IntervalExchange;
use crate::norm::{Norm, NormValue};
use crate::rational::{format_rational, rat_int, Rational};
use crate::steinitz::steinitz_rearrange;
use crate::step::StepFunction;
use crate::vector::RationalVector;

/// Solution of f = g∘σ − g on Ω_n: a single n-cycle σ and the potential g,
/// with the verified sup norm of g.
#[derive(Clone, Debug)]
pub struct DiscreteSolution {
    /// σ as an image table: σ(i) = sigma[i] (0-based).
    pub sigma: Vec<usize>,
    pub g: DiscreteFunction,
    /// Verified ‖g‖∞.
    pub certified_bound: NormValue,
}

/// Solution of f = g∘T − g for an equal-interval step function.
#[derive(Clone, Debug)]
pub struct StepSolution {
    pub transform: IntervalExchange,
    pub g: StepFunction,
    /// Verified ‖g‖∞.
    pub certified_bound: NormValue,
}

/// True when `sigma` is one n-cycle.
pub fn is_single_cycle(sigma: &[usize]) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut at = 0usize;
    for _ in 0..n {
        if at >= n || seen[at] {
            return false;
        }
        seen[at] = true;
        at = sigma[at];
    }
    at == 0 && seen.iter().all(|&s| s)
}

/// Solves f = g∘σ − g on Ω_n for mean zero f, with ‖g‖∞ ≤ d·‖f‖∞.
/// g vanishes at the start of the cycle and accumulates f along a
/// prefix-bounded ordering of the values; the residual is checked to be
/// exactly zero at every point before returning.
pub fn solve_discrete(f: &DiscreteFunction, norm: Norm) -> Result<DiscreteSolution> {
    f.ensure_mean_zero()?;
    let n = f.n();
    let d = f.dim();
    let pi = steinitz_rearrange(f.values(), norm)?.permutation;

    let mut sigma = vec![0usize; n];
    for k in 0..n {
        sigma[pi[k]] = pi[(k + 1) % n];
    }
    let mut g_values = vec![RationalVector::zero(d); n];
    let mut acc = RationalVector::zero(d);
    for k in 1..n {
        acc += f.value(pi[k - 1]);
        g_values[pi[k]] = acc.clone();
    }
    let g = DiscreteFunction::new(g_values)?;

    // Exact residual: f(i) = g(σ(i)) − g(i) for every i.
    for i in 0..n {
        let delta = &(g.value(sigma[i]) - g.value(i)) - f.value(i);
        if !delta.is_zero() {
            return Err(Error::BoundViolated {
                what: "discrete solution residual",
            });
        }
    }
    if !is_single_cycle(&sigma) {
        return Err(Error::BoundViolated {
            what: "discrete solution cycle",
        });
    }
    let certified_bound = g.sup_norm(norm);
    if !certified_bound.le_scaled(&rat_int(d as i64), &f.sup_norm(norm)) {
        return Err(Error::BoundViolated {
            what: "discrete solution sup bound",
        });
    }
    Ok(DiscreteSolution {
        sigma,
        g,
        certified_bound,
    })
}

/// Lifts the discrete solver through the identification of n equal intervals
/// with Ω_n. T translates I_k onto I_{σ(k)}; the residual step function is
/// verified to be identically zero.
pub fn solve_equal_intervals(f: &StepFunction, norm: Norm) -> Result<StepSolution> {
    if !f.has_equal_intervals() {
        return Err(Error::UnequalIntervals);
    }
    let mean = f.mean();
    if !mean.is_zero() {
        return Err(Error::NotMeanZero {
            mean: format!("{mean:?}"),
        });
    }
    let discrete = DiscreteFunction::new(f.values().to_vec())?;
    let sol = solve_discrete(&discrete, norm)?;
    let transform = IntervalExchange::from_cell_permutation(&sol.sigma)?;
    let g = StepFunction::equal_intervals(sol.g.values().to_vec())?;
    let residual = verify_solution(f, &g, &transform, norm);
    if !residual.is_zero() {
        return Err(Error::BoundViolated {
            what: "step solution residual",
        });
    }
    Ok(StepSolution {
        transform,
        g,
        certified_bound: sol.certified_bound,
    })
}

/// Sup norm of f − (g∘T − g) over the common refinement; zero means g solves
/// the equation for f exactly.
pub fn verify_solution(
    f: &StepFunction,
    g: &StepFunction,
    t: &IntervalExchange,
    norm: Norm,
) -> NormValue {
    let residual = f.sub(&g.compose(t).sub(g));
    residual.sup_norm(norm)
}

/// Running sups of the orbit partial sums: entry k is
/// max over j ≤ k of the essential sup over X of ‖Σ_{i≤j} f∘Tⁱ‖, exactly.
/// The sequence is nondecreasing by construction.
pub fn browder_sweep(
    f: &StepFunction,
    t: &IntervalExchange,
    x: &[(Rational, Rational)],
    k_max: usize,
    norm: Norm,
) -> Vec<NormValue> {
    let mut iterate = f.clone();
    let mut sum = f.clone();
    let mut worst = sum.sup_norm_on(norm, x);
    let mut sweep = Vec::with_capacity(k_max + 1);
    sweep.push(worst.clone());
    for _ in 1..=k_max {
        iterate = iterate.compose(t);
        sum = sum.add(&iterate);
        worst = worst.max(sum.sup_norm_on(norm, x));
        sweep.push(worst.clone());
    }
    sweep
}

/// max over k ≤ k_max of the essential sup over X of ‖Σ_{j≤k} f∘Tʲ‖,
/// computed exactly on the iterated common refinement. Uniform boundedness
/// of these sums (over all k) characterizes solvability with bounded g.
pub fn verify_browder(
    f: &StepFunction,
    t: &IntervalExchange,
    x: &[(Rational, Rational)],
    k_max: usize,
    norm: Norm,
) -> NormValue {
    browder_sweep(f, t, x, k_max, norm)
        .pop()
        .expect("sweep includes k = 0")
}

/// Orbit partial sums [Σ_{j≤k} f(Tʲ(t))] for k = 0..k_max, exact. Refuses
/// orbits that touch a partition breakpoint of f or a piece boundary of T:
/// the transformations are only defined mod 0, so values there would be a
/// guess.
pub fn orbit_partial_sums(
    f: &StepFunction,
    t: &IntervalExchange,
    start: &Rational,
    k_max: usize,
) -> Result<Vec<RationalVector>> {
    let mut point = start.clone();
    let mut acc = RationalVector::zero(f.dim());
    let mut sums = Vec::with_capacity(k_max + 1);
    for _ in 0..=k_max {
        if f.is_interior_breakpoint(&point) || t.is_interior_boundary(&point) {
            return Err(Error::BreakpointHit {
                t: format_rational(&point),
            });
        }
        acc += f.value_at(&point);
        sums.push(acc.clone());
        point = t.apply(&point);
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::Piece;
    use crate::rational::rat;

    fn v1(p: i64, q: i64) -> RationalVector {
        RationalVector::new(vec![rat(p, q)]).unwrap()
    }

    fn v2(a: (i64, i64), b: (i64, i64)) -> RationalVector {
        RationalVector::new(vec![rat(a.0, a.1), rat(b.0, b.1)]).unwrap()
    }

    fn swap_halves() -> IntervalExchange {
        IntervalExchange::new(vec![
            Piece {
                lo: rat_int(0),
                hi: rat(1, 2),
                shift: rat(1, 2),
            },
            Piece {
                lo: rat(1, 2),
                hi: rat_int(1),
                shift: rat(-1, 2),
            },
        ])
        .unwrap()
    }

    #[test]
    fn discrete_zero_gives_canonical_cycle() {
        let f = DiscreteFunction::new(vec![RationalVector::zero(2); 4]).unwrap();
        let sol = solve_discrete(&f, Norm::L2).unwrap();
        assert_eq!(sol.sigma, vec![1, 2, 3, 0]);
        assert!(sol.g.values().iter().all(RationalVector::is_zero));
        assert!(sol.certified_bound.is_zero());
    }

    #[test]
    fn discrete_two_point_example() {
        let f = DiscreteFunction::new(vec![v1(1, 1), v1(-1, 1)]).unwrap();
        let sol = solve_discrete(&f, Norm::Linf).unwrap();
        assert_eq!(sol.sigma, vec![1, 0]);
        assert_eq!(sol.g.values(), &[v1(0, 1), v1(1, 1)]);
        assert_eq!(sol.certified_bound, NormValue::Exact(rat_int(1)));
    }

    #[test]
    fn discrete_simplex_like_vectors() {
        // Four vectors summing to zero in d = 2.
        let f = DiscreteFunction::new(vec![
            v2((1, 1), (0, 1)),
            v2((0, 1), (1, 1)),
            v2((-1, 1), (0, 1)),
            v2((0, 1), (-1, 1)),
        ])
        .unwrap();
        for norm in Norm::ALL {
            let sol = solve_discrete(&f, norm).unwrap();
            assert!(is_single_cycle(&sol.sigma));
            assert!(sol
                .certified_bound
                .le_scaled(&rat_int(2), &f.sup_norm(norm)));
        }
    }

    #[test]
    fn discrete_rejects_nonzero_mean() {
        let f = DiscreteFunction::new(vec![v1(1, 2)]).unwrap();
        assert!(matches!(
            solve_discrete(&f, Norm::L1),
            Err(Error::NotMeanZero { .. })
        ));
    }

    #[test]
    fn equal_intervals_two_halves() {
        let f = StepFunction::equal_intervals(vec![v1(1, 1), v1(-1, 1)]).unwrap();
        let sol = solve_equal_intervals(&f, Norm::L1).unwrap();
        assert_eq!(sol.transform, swap_halves());
        assert!(verify_solution(&f, &sol.g, &sol.transform, Norm::L1).is_zero());
    }

    #[test]
    fn equal_intervals_three_cells() {
        // (2, -1, -1) is mean zero over three equal cells.
        let f = StepFunction::equal_intervals(vec![v1(2, 3), v1(-1, 3), v1(-1, 3)]).unwrap();
        let sol = solve_equal_intervals(&f, Norm::Linf).unwrap();
        assert!(verify_solution(&f, &sol.g, &sol.transform, Norm::Linf).is_zero());
    }

    #[test]
    fn equal_intervals_rejections() {
        let uneven = StepFunction::new(
            vec![rat_int(0), rat(1, 3), rat_int(1)],
            vec![v1(1, 1), v1(-1, 2)],
        )
        .unwrap();
        assert!(matches!(
            solve_equal_intervals(&uneven, Norm::L1),
            Err(Error::UnequalIntervals)
        ));
        let skewed = StepFunction::equal_intervals(vec![v1(1, 1), v1(1, 1)]).unwrap();
        assert!(matches!(
            solve_equal_intervals(&skewed, Norm::L1),
            Err(Error::NotMeanZero { .. })
        ));
    }

    #[test]
    fn verify_solution_detects_perturbation() {
        let f = StepFunction::equal_intervals(vec![v1(1, 1), v1(-1, 1)]).unwrap();
        let sol = solve_equal_intervals(&f, Norm::L2).unwrap();
        // Perturb g on one cell by w: the residual must see at least ‖w‖.
        let mut values = sol.g.values().to_vec();
        values[0] = &values[0] + &v1(1, 4);
        let tampered = StepFunction::equal_intervals(values).unwrap();
        let residual = verify_solution(&f, &tampered, &sol.transform, Norm::L2);
        assert!(residual >= Norm::L2.value(&v1(1, 4)));
        // And the untouched pair still verifies to zero.
        assert!(verify_solution(&f, &sol.g, &sol.transform, Norm::L2).is_zero());
        // f = 0, g = 0 with arbitrary T.
        let zero = StepFunction::constant(RationalVector::zero(1));
        assert!(verify_solution(&zero, &zero, &sol.transform, Norm::L2).is_zero());
    }

    #[test]
    fn browder_identity_transform_grows_linearly() {
        let f = StepFunction::constant(v1(2, 3));
        let sup = verify_browder(
            &f,
            &IntervalExchange::identity(),
            &[(rat_int(0), rat_int(1))],
            7,
            Norm::L1,
        );
        assert_eq!(sup, NormValue::Exact(rat(16, 3))); // (7+1)·2/3
    }

    #[test]
    fn browder_on_solved_instance_is_bounded() {
        let f = StepFunction::equal_intervals(vec![
            v2((1, 1), (1, 2)),
            v2((-1, 2), (1, 4)),
            v2((-1, 4), (-1, 2)),
            v2((-1, 4), (-1, 4)),
        ])
        .unwrap();
        let sol = solve_equal_intervals(&f, Norm::L2).unwrap();
        let everywhere = [(rat_int(0), rat_int(1))];
        let sup = verify_browder(&f, &sol.transform, &everywhere, 16, Norm::L2);
        assert!(sup.le_scaled(&rat_int(2), &sol.certified_bound));
        // Over the cycle-start cell only, the orbit sums are g∘T^{k+1}, so
        // they stay within the certified bound itself.
        let start = sol
            .g
            .values()
            .iter()
            .position(RationalVector::is_zero)
            .unwrap();
        let cell = (
            Rational::new(start.into(), 4.into()),
            Rational::new((start + 1).into(), 4.into()),
        );
        let sup_start = verify_browder(&f, &sol.transform, &[cell], 16, Norm::L2);
        assert!(sup_start <= sol.certified_bound);
    }

    #[test]
    fn orbit_alternates_on_swap() {
        let f = StepFunction::equal_intervals(vec![v1(1, 1), v1(-1, 1)]).unwrap();
        let sums = orbit_partial_sums(&f, &swap_halves(), &rat(1, 4), 5).unwrap();
        let flat: Vec<Rational> = sums.iter().map(|s| s.component(0).clone()).collect();
        assert_eq!(
            flat,
            vec![
                rat_int(1),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(1),
                rat_int(0)
            ]
        );
    }

    #[test]
    fn orbit_constant_identity() {
        let f = StepFunction::constant(v1(3, 7));
        let sums = orbit_partial_sums(&f, &IntervalExchange::identity(), &rat(1, 3), 3).unwrap();
        assert_eq!(*sums[3].component(0), rat(12, 7));
    }

    #[test]
    fn orbit_zero_function() {
        let f = StepFunction::constant(RationalVector::zero(3));
        let sums = orbit_partial_sums(&f, &swap_halves(), &rat(1, 8), 4).unwrap();
        assert!(sums.iter().all(RationalVector::is_zero));
    }

    #[test]
    fn orbit_refuses_breakpoints() {
        let f = StepFunction::equal_intervals(vec![v1(1, 1), v1(-1, 1)]).unwrap();
        assert!(matches!(
            orbit_partial_sums(&f, &swap_halves(), &rat(1, 2), 3),
            Err(Error::BreakpointHit { .. })
        ));
        // Orbit landing on a breakpoint after one step: t = 0 maps to 1/2.
        assert!(matches!(
            orbit_partial_sums(&f, &swap_halves(), &rat_int(0), 3),
            Err(Error::BreakpointHit { .. })
        ));
    }
}
