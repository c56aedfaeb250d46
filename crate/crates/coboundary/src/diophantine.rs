//! Signed simultaneous Diophantine approximation: find q and integers p_l
//! with every p_l/q on the side of x_l demanded by the sign of v_l, the
//! error below ε/q in sup norm, and (w, v) > 0 exactly.
//!
//! Targets are handled as their exact rational representatives; both output
//! inequalities are verified exactly on those representatives. Denominators
//! are tried in convergent order: the continued-fraction convergent
//! denominators of each target first, then all remaining q ascending.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::vector::RationalVector;

#[derive(Clone, Debug)]
pub struct DiophantineResult {
    pub q: u64,
    pub p: Vec<BigInt>,
    /// w_l = p_l/q − x_l.
    pub w: RationalVector,
}

/// Continued-fraction convergent denominators of x, ascending, capped at
/// `q_max`.
pub fn convergent_denominators(x: &Rational, q_max: u64) -> Vec<u64> {
    let cap = BigInt::from(q_max);
    let mut out = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut q_prev = BigInt::zero();
    let mut q_cur = BigInt::from(1u8);
    loop {
        if q_cur > cap {
            break;
        }
        if let Ok(q) = u64::try_from(&q_cur) {
            if q >= 1 {
                out.push(q);
            }
        }
        if den.is_zero() {
            break;
        }
        let (a, rem) = num.div_rem(&den);
        // Continued fraction step: x = a + 1/(den/rem).
        let q_next = &a * &q_cur + &q_prev;
        q_prev = std::mem::replace(&mut q_cur, q_next);
        num = std::mem::replace(&mut den, rem);
        if q_cur == q_prev {
            // a vanished twice in a row cannot happen for a canonical
            // expansion; guard against a stall regardless.
            break;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// The attempted numerator for target x·q on the side demanded by sign(v):
/// strictly above for v > 0, strictly below for v < 0, nearest for v = 0.
fn side_numerator(qx: &Rational, v_sign: i8) -> BigInt {
    match v_sign {
        1 => floor_int(qx) + 1,
        -1 => {
            if qx.is_integer() {
                qx.to_integer() - 1
            } else {
                floor_int(qx)
            }
        }
        _ => floor_int(&(qx + rat(1, 2))),
    }
}

/// Searches q ≤ q_max (convergent-seeded order) for the signed simultaneous
/// approximation. Existence is only guaranteed as q_max → ∞, so running out
/// of denominators is a reportable outcome, not a bug.
pub fn diophantine_signed(
    x: &[Rational],
    v: &RationalVector,
    eps: &Rational,
    q_max: u64,
) -> Result<DiophantineResult> {
    if x.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: v.dim(),
        });
    }
    if v.is_zero() {
        return Err(Error::Invalid {
            what: "direction vector",
            why: "must be nonzero".into(),
        });
    }
    if !eps.is_positive() {
        return Err(Error::Invalid {
            what: "eps",
            why: "must be positive".into(),
        });
    }
    if q_max == 0 {
        return Err(Error::SearchExhausted { q_max });
    }

    // Convergent denominators of every coordinate first, then the rest.
    let mut order: Vec<u64> = Vec::new();
    for xi in x {
        order.extend(convergent_denominators(xi, q_max));
    }
    order.sort_unstable();
    order.dedup();
    let mut tried = vec![false; (q_max + 1) as usize];
    for &q in &order {
        tried[q as usize] = true;
    }
    order.extend((1..=q_max).filter(|&q| !tried[q as usize]));

    for q in order {
        let q_rat = Rational::from_integer(BigInt::from(q));
        let mut p = Vec::with_capacity(x.len());
        let mut w = Vec::with_capacity(x.len());
        let mut ok = true;
        let budget = eps / &q_rat;
        for (xi, vi) in x.iter().zip(v.entries()) {
            let sign = if vi.is_positive() {
                1
            } else if vi.is_negative() {
                -1
            } else {
                0
            };
            let pi = side_numerator(&(xi * &q_rat), sign);
            let wi = Rational::new(pi.clone(), BigInt::from(q)) - xi;
            if wi.abs() >= budget {
                ok = false;
                break;
            }
            p.push(pi);
            w.push(wi);
        }
        if !ok {
            continue;
        }
        let w = RationalVector::new(w)?;
        if w.dot(v).is_positive() {
            return Ok(DiophantineResult { q, p, w });
        }
    }
    Err(Error::SearchExhausted { q_max })
}
