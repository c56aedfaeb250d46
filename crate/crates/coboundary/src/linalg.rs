//! Exact rational linear algebra: linear-dependence detection, driving a
//! feasible point of a box-constrained polytope to a vertex, and a small
//! Phase-I simplex used for convex-hull membership tests.
//!
//! Everything here is deterministic: pivots and tie-breaks always prefer the
//! lowest index, and no floating point is involved anywhere.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::vector::RationalVector;

/// Finds the first linear dependence among the selected columns of `cols`,
/// scanning `selected` left to right. Returns `nu` (indexed like `selected`)
/// with `Σ nu[k]·cols[selected[k]] = 0`, `nu ≠ 0`, supported on the prefix
/// ending at the first dependent column; `None` if the selected columns are
/// linearly independent. The scan stops at the first dependence, so at most
/// rank+1 columns are ever processed.
pub fn first_null_vector(cols: &[Vec<Rational>], selected: &[usize]) -> Option<Vec<Rational>> {
    let Some(&first) = selected.first() else {
        return None;
    };
    let rows = cols[first].len();
    // Each pivot stores its reduced column plus the coefficients expressing
    // that reduced column over the original columns processed so far.
    struct Pivot {
        row: usize,
        real: Vec<Rational>,
        coeffs: Vec<Rational>, // indexed by processed-column position
    }
    let mut pivots: Vec<Pivot> = Vec::new();
    for (j, &col_idx) in selected.iter().enumerate() {
        let col = &cols[col_idx];
        assert_eq!(col.len(), rows, "ragged columns");
        let mut real = col.clone();
        let mut coeffs = vec![Rational::zero(); j + 1];
        coeffs[j] = Rational::one();
        for p in &pivots {
            if real[p.row].is_zero() {
                continue;
            }
            let factor = &real[p.row] / &p.real[p.row];
            for r in 0..rows {
                let t = &factor * &p.real[r];
                real[r] -= t;
            }
            for (i, c) in p.coeffs.iter().enumerate() {
                let t = &factor * c;
                coeffs[i] -= t;
            }
        }
        match (0..rows).find(|&r| !real[r].is_zero()) {
            None => {
                // Dependent: coeffs is the null combination.
                let mut nu = vec![Rational::zero(); selected.len()];
                nu[..=j].clone_from_slice(&coeffs);
                return Some(nu);
            }
            Some(row) => pivots.push(Pivot { row, real, coeffs }),
        }
    }
    None
}

/// Drives a feasible point of `{x ∈ [0,1]^n : Σ x_i·cols[i] = const}` to a
/// vertex by repeatedly moving along null directions of the free columns
/// until those columns are linearly independent. The equality right-hand
/// side is preserved exactly because every move is along a null direction.
///
/// `cols[i]` is the constraint column of coordinate `i` (the vector entries
/// plus any extra rows the caller appended, e.g. an all-ones row).
pub fn drive_to_vertex(cols: &[Vec<Rational>], x: &mut [Rational]) {
    assert_eq!(cols.len(), x.len());
    let one = Rational::one();
    loop {
        let free: Vec<usize> = (0..x.len())
            .filter(|&i| x[i].is_positive() && x[i] < one)
            .collect();
        let Some(nu_local) = first_null_vector(cols, &free) else {
            return; // free columns independent: vertex reached
        };
        // Largest steps keeping x inside the box, in both directions.
        let step = |sign: i64| -> Rational {
            let mut t: Option<Rational> = None;
            for (k, &i) in free.iter().enumerate() {
                let d = if sign > 0 {
                    nu_local[k].clone()
                } else {
                    -nu_local[k].clone()
                };
                if d.is_zero() {
                    continue;
                }
                let room = if d.is_positive() {
                    (&one - &x[i]) / &d
                } else {
                    &x[i] / -&d
                };
                t = Some(match t {
                    None => room,
                    Some(cur) => cur.min(room),
                });
            }
            t.expect("null vector is nonzero")
        };
        let t_plus = step(1);
        let t_minus = step(-1);
        let (t, sign) = if t_plus <= t_minus {
            (t_plus, 1)
        } else {
            (t_minus, -1)
        };
        for (k, &i) in free.iter().enumerate() {
            let d = if sign > 0 {
                nu_local[k].clone()
            } else {
                -nu_local[k].clone()
            };
            x[i] += &t * &d;
        }
    }
}

/// Exact Phase-I simplex feasibility test for `{θ ≥ 0 : Σθ_i = 1, Σθ_i·p_i = 0}`,
/// i.e. whether the origin lies in the convex hull of `points`.
/// Bland's rule throughout, so termination is guaranteed.
pub fn zero_in_convex_hull(points: &[RationalVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = points[0].dim();
    let m = d + 1; // constraint rows: d vector rows + one sum row
    let n = points.len();

    // Rows scaled so the right-hand side is nonnegative (it already is:
    // b = (0,...,0,1)). Tableau layout: [original cols | artificials | rhs].
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![Rational::zero(); width];
        for (j, p) in points.iter().enumerate() {
            row[j] = if r < d {
                p.component(r).clone()
            } else {
                Rational::one()
            };
        }
        row[n + r] = Rational::one();
        row[width - 1] = if r == m - 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Objective: minimize the sum of artificials. Reduced-cost row starts as
    // the sum of all constraint rows (artificial columns then price to 0).
    let mut obj = vec![Rational::zero(); width];
    for row in &tab {
        for (o, v) in obj.iter_mut().zip(row) {
            *o += v;
        }
    }
    for j in n..n + m {
        obj[j] = Rational::zero();
    }

    loop {
        // Bland: lowest-index column with positive reduced cost.
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_positive()) else {
            break;
        };
        // Ratio test, ties to the lowest basis variable.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for (r, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            let better = match &best {
                None => true,
                Some(b) => {
                    ratio < *b || (ratio == *b && basis[r] < basis[leave.expect("set with best")])
                }
            };
            if better {
                best = Some(ratio);
                leave = Some(r);
            }
        }
        let Some(lr) = leave else {
            // Unbounded cannot happen in Phase I; treat as infeasible.
            return false;
        };
        // Pivot on (lr, enter).
        let piv = tab[lr][enter].clone();
        for v in tab[lr].iter_mut() {
            *v /= &piv;
        }
        let prow = tab[lr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == lr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, pv) in obj.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        basis[lr] = enter;
    }

    // Feasible iff all artificials can be driven to zero.
    obj[width - 1].is_zero()
}
