//! Property tests for the exact-arithmetic invariants: measure preservation,
//! norm axioms, scale equivariance, oracle symmetry, and document round
//! trips.

use num_traits::Signed;
use proptest::prelude::*;

use coboundary::exchange::IntervalExchange;
use coboundary::format::{parse_instance, to_json, Instance, InstanceDoc};
use coboundary::instances::{random_mean_zero_equal_step, rng_for_seed};
use coboundary::norm::{Norm, NormValue};
use coboundary::rational::{rat, rat_int, Rational};
use coboundary::solve::{solve_discrete, solve_equal_intervals, verify_solution};
use coboundary::steinitz::{anchored_deviation, steinitz_oracle, steinitz_rearrange};
use coboundary::step::StepFunction;
use coboundary::vector::RationalVector;

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn vector(d: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(rational(), d).prop_map(|es| RationalVector::new(es).expect("d >= 1"))
}

fn norm() -> impl Strategy<Value = Norm> {
    prop::sample::select(vec![Norm::L1, Norm::L2, Norm::Linf])
}

/// Positive lengths summing to one, plus a permutation: the classical
/// interval exchange datum.
fn exchange() -> impl Strategy<Value = IntervalExchange> {
    (2usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1i64..=9, n),
                Just(n),
                prop::collection::vec(0usize..100, n),
            )
        })
        .prop_map(|(weights, n, ranks)| {
            let total: i64 = weights.iter().sum();
            let lengths: Vec<Rational> = weights.iter().map(|&w| rat(w, total)).collect();
            // Rank vector -> permutation by stable argsort.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| (ranks[i], i));
            let mut perm = vec![0usize; n];
            for (slot, &piece) in order.iter().enumerate() {
                perm[piece] = slot;
            }
            IntervalExchange::from_lengths_permutation(&lengths, &perm)
                .expect("valid datum by construction")
        })
}

fn equal_step(n: usize, d: usize) -> impl Strategy<Value = StepFunction> {
    prop::collection::vec(vector(d), n)
        .prop_map(|vs| StepFunction::equal_intervals(vs).expect("nonempty"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exchange_inverse_is_pointwise_identity(t in exchange(), num in 0i64..997) {
        let point = rat(num, 997);
        let inv = t.inverse();
        prop_assert_eq!(inv.apply(&t.apply(&point)), point.clone());
        prop_assert_eq!(t.apply(&inv.apply(&point)), point);
    }

    #[test]
    fn composition_with_inverse_is_identity_map(t in exchange()) {
        prop_assert!(t.compose(&t.inverse()).is_identity_map());
        prop_assert!(t.inverse().compose(&t).is_identity_map());
    }

    #[test]
    fn compose_preserves_mean(f in equal_step(5, 2), t in exchange()) {
        prop_assert_eq!(f.compose(&t).mean(), f.mean());
    }

    #[test]
    fn compose_with_identity_preserves_values(f in equal_step(4, 2), num in 0i64..997) {
        let h = f.compose(&IntervalExchange::identity());
        let point = rat(num, 997);
        prop_assert_eq!(h.value_at(&point), f.value_at(&point));
    }

    #[test]
    fn norm_axioms(v in vector(3), w in vector(3), c in rational(), n in norm()) {
        // Homogeneity, exactly.
        prop_assert_eq!(n.value(&v.scale(&c)), n.value(&v).scale(&c.abs()));
        // Triangle inequality: exact for L1/Linf, via double squaring for L2.
        let lhs = n.value(&(&v + &w));
        let (a, b) = (n.value(&v), n.value(&w));
        match (lhs, a, b) {
            (NormValue::Exact(s), NormValue::Exact(x), NormValue::Exact(y)) => {
                prop_assert!(s <= x + y);
            }
            (s, x, y) => {
                // s ≤ x + y with nonnegative sides: square twice.
                let (s2, x2, y2) = (s.squared(), x.squared(), y.squared());
                let gap = &s2 - &x2 - &y2;
                let ok = !gap.is_positive() || &gap * &gap <= rat_int(4) * x2 * y2;
                prop_assert!(ok);
            }
        }
        // Exactness of the vector algebra underneath.
        prop_assert!(n.value(&(&(&(&v + &w) - &w) - &v)).is_zero());
    }

    #[test]
    fn rearrangement_scale_equivariance(vs in prop::collection::vec(vector(2), 1..7), c in 1i64..20, n in norm()) {
        let c = rat(c, 7);
        let scaled: Vec<RationalVector> = vs.iter().map(|v| v.scale(&c)).collect();
        let r1 = steinitz_rearrange(&vs, n).expect("construction succeeds");
        let r2 = steinitz_rearrange(&scaled, n).expect("construction succeeds");
        prop_assert_eq!(&r1.permutation, &r2.permutation);
        prop_assert_eq!(r2.achieved_bound, r1.achieved_bound.scale(&c));
        prop_assert_eq!(
            anchored_deviation(&scaled, &r2.permutation, n),
            anchored_deviation(&vs, &r1.permutation, n).scale(&c)
        );
    }

    #[test]
    fn oracle_is_input_order_invariant(vs in prop::collection::vec(vector(2), 1..6), n in norm()) {
        // Build a zero-sum family, then rotate the input order.
        let d = 2;
        let mut family = vs.clone();
        let total = RationalVector::sum(d, &family);
        family.push(&RationalVector::zero(d) - &total);
        let (opt, _) = steinitz_oracle(&family, n).expect("zero sum");
        let rotated: Vec<RationalVector> = family.iter().cloned().cycle().skip(1).take(family.len()).collect();
        let (opt_rot, _) = steinitz_oracle(&rotated, n).expect("zero sum");
        prop_assert_eq!(opt, opt_rot);
    }

    #[test]
    fn discrete_solutions_are_exact(vs in prop::collection::vec(vector(3), 1..9), n in norm()) {
        let d = 3;
        let mut family = vs.clone();
        let total = RationalVector::sum(d, &family);
        family.push(&RationalVector::zero(d) - &total);
        let f = coboundary::discrete::DiscreteFunction::new(family).expect("nonempty");
        let sol = solve_discrete(&f, n).expect("mean zero");
        for i in 0..f.n() {
            let delta = &(sol.g.value(sol.sigma[i]) - sol.g.value(i)) - f.value(i);
            prop_assert!(delta.is_zero());
        }
    }

    #[test]
    fn step_solutions_verify_to_zero(seed in 0u64..500) {
        let mut rng = rng_for_seed(seed);
        let n = 2 + (seed as usize % 9);
        let f = random_mean_zero_equal_step(&mut rng, n, 2);
        let norm = Norm::ALL[seed as usize % 3];
        let sol = solve_equal_intervals(&f, norm).expect("mean zero");
        prop_assert!(verify_solution(&f, &sol.g, &sol.transform, norm).is_zero());
        // Measure preservation carries the mean of g around the orbit.
        prop_assert_eq!(sol.g.compose(&sol.transform).mean(), sol.g.mean());
    }

    #[test]
    fn instance_documents_round_trip(vs in prop::collection::vec(vector(2), 1..6)) {
        let inst = Instance::Discrete(
            coboundary::discrete::DiscreteFunction::new(vs).expect("nonempty"),
        );
        let json = to_json(&InstanceDoc::from_instance(&inst));
        let reparsed = parse_instance(&json).expect("own output parses");
        prop_assert_eq!(to_json(&InstanceDoc::from_instance(&reparsed)), json);
    }

    #[test]
    fn step_documents_round_trip(f in equal_step(4, 2)) {
        let json = to_json(&InstanceDoc::from_instance(&Instance::Step(f)));
        let reparsed = parse_instance(&json).expect("own output parses");
        prop_assert_eq!(to_json(&InstanceDoc::from_instance(&reparsed)), json);
    }
}

/// The core invariant stated over a fixed budget of points rather than
/// proptest cases: inverse∘forward is the identity on 1000 rational points.
#[test]
fn exchange_inverse_identity_on_thousand_points() {
    use rand::Rng;
    let mut rng = rng_for_seed(123);
    let t = IntervalExchange::from_lengths_permutation(
        &[rat(3, 10), rat(1, 5), rat(1, 10), rat(2, 5)],
        &[2, 0, 3, 1],
    )
    .expect("valid datum");
    let inv = t.inverse();
    for _ in 0..1000 {
        let point = rat(rng.random_range(0..9973), 9973);
        assert_eq!(inv.apply(&t.apply(&point)), point);
    }
}
