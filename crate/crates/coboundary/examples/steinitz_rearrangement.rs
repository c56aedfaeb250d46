//! Rearrange a vector family so every prefix stays within d·M of the
//! straight line to the total sum, and compare the constructive result with
//! the brute-force optimum on a zero-sum family.
//!
//! Run with: cargo run --example steinitz_rearrangement

use coboundary::instances::{rng_for_seed, tilted_pair_family};
use coboundary::norm::Norm;
use coboundary::rational::rat;
use coboundary::steinitz::{
    anchored_deviation, max_norm, prefix_sup, steinitz_oracle, steinitz_rearrange,
};
use coboundary::vector::RationalVector;

fn main() {
    let norm = Norm::L2;

    // A family with a nonzero total sum: the guarantee is the anchored one.
    let family = vec![
        RationalVector::new(vec![rat(1, 1), rat(0, 1)]).unwrap(),
        RationalVector::new(vec![rat(3, 4), rat(1, 2)]).unwrap(),
        RationalVector::new(vec![rat(-1, 1), rat(1, 4)]).unwrap(),
        RationalVector::new(vec![rat(-1, 2), rat(-1, 1)]).unwrap(),
        RationalVector::new(vec![rat(1, 4), rat(3, 4)]).unwrap(),
        RationalVector::new(vec![rat(0, 1), rat(-1, 2)]).unwrap(),
    ];
    let r = steinitz_rearrange(&family, norm).unwrap();
    let m = max_norm(&family, norm);
    println!("input order rearranged to {:?}", r.permutation);
    println!("total sum (anchor): {:?}", r.anchor);
    println!(
        "max anchored deviation: {} ≤ d·M = 2·{}",
        r.achieved_bound, m
    );
    assert_eq!(anchored_deviation(&family, &r.permutation, norm), r.achieved_bound);

    // A zero-sum family where ordering really matters: tilted ±1 vectors
    // with a balancing vector. The optimal prefix bound exceeds the largest
    // input norm — no ordering avoids a prefix beyond M.
    let hard = tilted_pair_family(&mut rng_for_seed(1), 3);
    let m = max_norm(&hard, norm);
    let (optimal, witness) = steinitz_oracle(&hard, norm).unwrap();
    let constructive = steinitz_rearrange(&hard, norm).unwrap();
    let constructive_sup = prefix_sup(&hard, &constructive.permutation, norm);
    println!("\nzero-sum family of {} tilted vectors:", hard.len());
    println!("  max input norm M      = {m}");
    println!("  brute-force optimum   = {optimal} (witness {witness:?})");
    println!("  constructive prefixes = {constructive_sup}");
    println!(
        "  normalized optimum    = {:.4} (every family in the plane stays below sqrt(5)/2 ≈ 1.1180)",
        optimal.to_f64() / m.to_f64()
    );
    assert!(optimal <= constructive_sup);
}
