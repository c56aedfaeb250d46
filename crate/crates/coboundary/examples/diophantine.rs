//! Signed simultaneous approximation: integers p_l and q with each p_l/q on
//! the side of x_l demanded by the direction vector, the sup error below
//! ε/q, and a strictly positive inner product with the direction.
//!
//! Run with: cargo run --example diophantine

use coboundary::diophantine::{convergent_denominators, diophantine_signed};
use coboundary::rational::{format_rational, rat, to_f64};
use coboundary::vector::RationalVector;

fn main() {
    // sqrt(2) − 1 as its 8-digit decimal surrogate; its continued fraction
    // is [0; 2, 2, 2, ...] with convergent denominators 1, 2, 5, 12, 29, ...
    let x = rat(41421356, 100000000);
    println!(
        "convergent denominators of {}: {:?}",
        format_rational(&x),
        convergent_denominators(&x, 100)
    );

    for direction in [1i64, -1] {
        let v = RationalVector::new(vec![rat(direction, 1)]).unwrap();
        let r = diophantine_signed(std::slice::from_ref(&x), &v, &rat(1, 10), 10_000).unwrap();
        println!(
            "\ndirection {direction:+}: q = {}, p = {:?}, w = {} (≈ {:.6})",
            r.q,
            r.p,
            format_rational(r.w.component(0)),
            to_f64(r.w.component(0)),
        );
        println!(
            "  |w| < ε/q = {} and (w, v) > 0, both checked exactly",
            format_rational(&(rat(1, 10) / rat(r.q as i64, 1)))
        );
    }

    // Three simultaneous targets with mixed sign demands.
    let targets = vec![rat(377, 1000), rat(7771, 10000), rat(59, 99)];
    let v = RationalVector::new(vec![rat(2, 1), rat(-3, 1), rat(0, 1)]).unwrap();
    let r = diophantine_signed(&targets, &v, &rat(1, 3), 100_000).unwrap();
    println!("\nsimultaneous: q = {}, p = {:?}", r.q, r.p);
    for (l, w) in r.w.entries().iter().enumerate() {
        println!("  w_{} = {} (≈ {:+.6})", l + 1, format_rational(w), to_f64(w));
    }
    println!("  (w, v) = {} > 0", format_rational(&r.w.dot(&v)));
}
