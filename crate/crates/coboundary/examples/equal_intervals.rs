//! Solve f = g∘T − g for a step function on n equal intervals: T is an
//! interval exchange cycling the cells, and the orbit partial sums stay
//! uniformly bounded by 2·‖g‖∞ — the bounded-coboundary criterion.
//!
//! Run with: cargo run --example equal_intervals

use coboundary::norm::Norm;
use coboundary::rational::{rat, rat_int, Rational};
use coboundary::solve::{browder_sweep, orbit_partial_sums, solve_equal_intervals, verify_solution};
use coboundary::step::StepFunction;
use coboundary::vector::RationalVector;

fn main() {
    let f = StepFunction::equal_intervals(vec![
        RationalVector::new(vec![rat(2, 3)]).unwrap(),
        RationalVector::new(vec![rat(-1, 3)]).unwrap(),
        RationalVector::new(vec![rat(1, 3)]).unwrap(),
        RationalVector::new(vec![rat(-2, 3)]).unwrap(),
    ])
    .unwrap();
    let norm = Norm::Linf;

    let sol = solve_equal_intervals(&f, norm).unwrap();
    println!("T as piecewise translations:");
    for p in sol.transform.pieces() {
        println!(
            "  [{}, {}) shifted by {}",
            p.lo, p.hi, p.shift
        );
    }
    let residual = verify_solution(&f, &sol.g, &sol.transform, norm);
    println!("\nresidual sup-norm: {residual}");
    assert!(residual.is_zero());

    // Orbit partial sums from a generic point: Σ_{j≤k} f(Tʲ(t)).
    let start = rat(1, 8);
    let sums = orbit_partial_sums(&f, &sol.transform, &start, 8).unwrap();
    println!("\norbit partial sums from t = 1/8:");
    for (k, s) in sums.iter().enumerate() {
        println!("  k = {k}: {s:?}");
    }

    // Uniform bound over the whole interval, for every horizon.
    let everywhere = [(Rational::from_integer(0.into()), rat_int(1))];
    let sweep = browder_sweep(&f, &sol.transform, &everywhere, 16, norm);
    println!("\nsup over [0,1) of ‖Σ_j≤k f∘Tʲ‖, running max:");
    for (k, sup) in sweep.iter().enumerate().step_by(4) {
        println!("  k ≤ {k:2}: {sup}");
    }
    let last = sweep.last().unwrap();
    println!(
        "\nuniform bound {} ≤ 2·‖g‖∞ = 2·{} — bounded orbit sums, as a solvable instance demands",
        last, sol.certified_bound
    );
    assert!(last.le_scaled(&rat_int(2), &sol.certified_bound));
}
