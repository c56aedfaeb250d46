//! Finite-depth cylinder combinatorics on {1..q} × {1,2}^N and the
//! level-by-level cascade that solves f = g∘T − g for functions constant on
//! depth-n cylinders.
//!
//! The cascade builds, for a refinement schedule 0 = n_0 < n_1 < … < n_Ker,
//! per-level cyclic cell permutations T_k and partial-sum functions g_k with
//!   (i)   T_k is one cycle on the depth-n_k cells,
//!   (ii)  T_{k+1} maps sub-cells into the T_k-image of their parent,
//!   (iii) ‖g_k‖ is controlled by ‖h_k‖ (h_k the level increment of f),
//!   (iv)  g_k is constant on depth-n_k cells,
//!   (v)   h_k = g_k∘T_k − g_k exactly on every cell.
//! When the schedule reaches the depth at which f is exactly representable,
//! g = Σ g_k and the deepest cycle solve the equation with residual zero.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exchange::IntervalExchange;
use crate::norm::{Norm, NormValue};
use crate::rational::{pow2, rat, rat_int, Rational};
use crate::selection::{kwapien_permutations, recursive_deviation_bound, VectorMatrix};
use crate::steinitz::steinitz_rearrange;
use crate::step::StepFunction;
use crate::vector::RationalVector;

/// Symbolic address of one cylinder: a branch in 1..=q and a digit word over
/// {1,2}; the word length is the cylinder depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorLabel {
    pub branch: usize,
    pub digits: Vec<u8>,
}

impl CantorLabel {
    pub fn new(branch: usize, q: usize, digits: Vec<u8>) -> Result<Self> {
        if branch == 0 || branch > q {
            return Err(Error::Invalid {
                what: "cantor label",
                why: format!("branch {branch} outside 1..={q}"),
            });
        }
        if digits.iter().any(|&d| d != 1 && d != 2) {
            return Err(Error::Invalid {
                what: "cantor label",
                why: "digits must be 1 or 2".into(),
            });
        }
        Ok(Self { branch, digits })
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// Cylinder measure (r/q)·2^{−depth} in the total-measure-r model.
    pub fn measure(&self, q: usize, r: &Rational) -> Rational {
        r / rat_int(q as i64) / pow2(self.depth())
    }

    /// Position in the lexicographic cylinder order at this depth
    /// (branch-major, first digit most significant), 0-based.
    pub fn lex_index(&self) -> usize {
        let mut offset = 0usize;
        for &d in &self.digits {
            offset = offset * 2 + (d as usize - 1);
        }
        (self.branch - 1) * (1 << self.depth()) + offset
    }

    pub fn from_lex_index(index: usize, q: usize, depth: usize) -> Result<Self> {
        let cells = q << depth;
        if index >= cells {
            return Err(Error::Invalid {
                what: "cantor label",
                why: format!("index {index} outside 0..{cells}"),
            });
        }
        let branch = index / (1 << depth) + 1;
        let mut offset = index % (1 << depth);
        let mut digits = vec![1u8; depth];
        for slot in (0..depth).rev() {
            digits[slot] = (offset % 2 + 1) as u8;
            offset /= 2;
        }
        Self::new(branch, q, digits)
    }
}

/// Address recoding of a digit word into 1..2^m: low-order digit first,
/// φ(i_1..i_m) = 1 + Σ_k 2^{k−1}(i_k − 1).
pub fn recode_address(digits: &[u8]) -> usize {
    let mut value = 1usize;
    for (k, &d) in digits.iter().enumerate() {
        value += (1 << k) * (d as usize - 1);
    }
    value
}

/// Inverse of [`recode_address`] for words of length m.
pub fn recode_address_inverse(value: usize, m: usize) -> Result<Vec<u8>> {
    if value == 0 || value > (1 << m) {
        return Err(Error::Invalid {
            what: "recoded address",
            why: format!("{value} outside 1..={}", 1usize << m),
        });
    }
    let mut rest = value - 1;
    let mut digits = Vec::with_capacity(m);
    for _ in 0..m {
        digits.push((rest % 2 + 1) as u8);
        rest /= 2;
    }
    Ok(digits)
}

/// A function constant on the depth-`depth` cylinders of {1..q} × {1,2}^N,
/// with values listed in lexicographic cylinder order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorStep {
    q: usize,
    r: Rational,
    depth: usize,
    values: Vec<RationalVector>,
}

impl CantorStep {
    pub fn new(q: usize, r: Rational, depth: usize, values: Vec<RationalVector>) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyInput);
        }
        if !r.is_positive() {
            return Err(Error::Invalid {
                what: "cantor step",
                why: "total measure r must be positive".into(),
            });
        }
        let cells = q << depth;
        if values.len() != cells {
            return Err(Error::Invalid {
                what: "cantor step",
                why: format!("expected {cells} values, got {}", values.len()),
            });
        }
        RationalVector::check_same_dim(&values)?;
        Ok(Self {
            q,
            r,
            depth,
            values,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cells(&self) -> usize {
        self.q << self.depth
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[RationalVector] {
        &self.values
    }

    pub fn cell_measure(&self) -> Rational {
        &self.r / rat_int(self.q as i64) / pow2(self.depth)
    }

    pub fn mean(&self) -> RationalVector {
        RationalVector::sum(self.dim(), &self.values).scale(&self.cell_measure())
    }

    pub fn is_mean_zero(&self) -> bool {
        RationalVector::sum(self.dim(), &self.values).is_zero()
    }

    pub fn sup_norm(&self, norm: Norm) -> NormValue {
        self.values
            .iter()
            .map(|v| norm.value(v))
            .fold(NormValue::zero(), NormValue::max)
    }

    /// Depth-`level` conditional averages (exact; children have equal
    /// measure, so each coarse value is the plain average of its block).
    pub fn coarsen(&self, level: usize) -> CantorStep {
        assert!(level <= self.depth, "cannot coarsen to a finer level");
        let block = 1usize << (self.depth - level);
        let scale = rat(1, block as i64);
        let values = self
            .values
            .chunks(block)
            .map(|chunk| RationalVector::sum(self.dim(), chunk).scale(&scale))
            .collect();
        CantorStep {
            q: self.q,
            r: self.r.clone(),
            depth: level,
            values,
        }
    }

    /// The same function re-indexed on a deeper cylinder partition.
    pub fn refine_to(&self, level: usize) -> CantorStep {
        assert!(level >= self.depth, "cannot refine to a coarser level");
        let copies = 1usize << (level - self.depth);
        let values = self
            .values
            .iter()
            .flat_map(|v| std::iter::repeat_n(v.clone(), copies))
            .collect();
        CantorStep {
            q: self.q,
            r: self.r.clone(),
            depth: level,
            values,
        }
    }

    pub fn sub(&self, other: &CantorStep) -> CantorStep {
        assert_eq!(self.depth, other.depth);
        assert_eq!(self.q, other.q);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        CantorStep {
            q: self.q,
            r: self.r.clone(),
            depth: self.depth,
            values,
        }
    }

    /// Smallest level at which the function is exactly representable.
    pub fn effective_depth(&self) -> usize {
        let mut level = self.depth;
        let mut values = self.values.clone();
        while level > 0 {
            let collapsible = values.chunks(2).all(|pair| pair[0] == pair[1]);
            if !collapsible {
                break;
            }
            values = values.into_iter().step_by(2).collect();
            level -= 1;
        }
        level
    }

    /// max over branches of Diam(f(branch)) = max pairwise ‖v − w‖; equals
    /// a·‖f‖ in the cascade's bookkeeping.
    pub fn max_branch_diameter(&self, norm: Norm) -> NormValue {
        let per_branch = 1usize << self.depth;
        let mut worst = NormValue::zero();
        for branch in self.values.chunks(per_branch) {
            for i in 0..branch.len() {
                for j in i + 1..branch.len() {
                    worst = worst.max(norm.value(&(&branch[i] - &branch[j])));
                }
            }
        }
        worst
    }
}

/// One cascade level: the cyclic cell permutation at depth `depth`, the
/// partial-sum function g_k constant on those cells, and the verified norms.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub depth: usize,
    /// T_k as an image table over lexicographic cell indices.
    pub cycle: Vec<usize>,
    pub g: CantorStep,
    pub h_norm: NormValue,
    pub g_norm: NormValue,
    /// The cell on which g_k vanishes (the cycle start).
    pub start_cell: usize,
}

#[derive(Clone, Debug)]
pub struct TowerSolution {
    pub levels: Vec<TowerLevel>,
    /// The deepest cycle (the transformation actually applied).
    pub t_final: Vec<usize>,
    /// g = Σ_k g_k at the deepest scheduled depth.
    pub g_final: CantorStep,
    /// Verified ‖g_final‖∞.
    pub certified_bound: NormValue,
}

impl TowerSolution {
    pub fn final_depth(&self) -> usize {
        self.levels.last().expect("at least one level").depth
    }

    /// Sup norm of f − (g∘T − g) over the depth-of-f cells; zero exactly
    /// when the schedule reached the effective depth of f.
    pub fn residual_sup(&self, f: &CantorStep, norm: Norm) -> NormValue {
        let nk = self.final_depth();
        assert!(nk <= f.depth());
        let block = 1usize << (f.depth() - nk);
        let g = &self.g_final;
        let mut worst = NormValue::zero();
        for (c, fv) in f.values().iter().enumerate() {
            let anc = c / block;
            let delta = &(&g.values[self.t_final[anc]] - &g.values[anc]) - fv;
            worst = worst.max(norm.value(&delta));
        }
        worst
    }
}

fn is_single_cycle(perm: &[usize]) -> bool {
    crate::solve::is_single_cycle(perm)
}

/// The proof-shaped refinement schedule: n_0 = 0, then each n_k is the
/// smallest level whose conditional averages approximate f within
/// 2^{−k−2}·C⁻¹·(a‖f‖), where C⁻¹ underestimates the cascade constant's
/// reciprocal by a fixed rational below log(1.5)/(8d²(d+1)). The schedule
/// always ends at the effective depth of f, so the cascade residual is zero.
pub fn proof_schedule(f: &CantorStep, norm: Norm) -> Vec<usize> {
    let d_eff = f.effective_depth();
    if d_eff == 0 {
        return vec![0];
    }
    let d = f.dim();
    // 0.405465108108164 < log 1.5.
    let log15_lo = rat(405465108108164, 1_000_000_000_000_000);
    let c_inv = log15_lo / rat_int((8 * d * d * (d + 1)) as i64);
    let max_diam = f.max_branch_diameter(norm); // a·‖f‖

    let approx_gap = |level: usize| -> NormValue {
        let coarse = f.coarsen(level).refine_to(f.depth());
        f.sub(&coarse).sup_norm(norm)
    };

    let mut schedule = vec![0usize];
    let mut k = 1usize;
    while *schedule.last().expect("nonempty") < d_eff {
        let threshold = max_diam.scale(&(&c_inv / pow2(k + 2)));
        let next = (0..=d_eff)
            .find(|&level| approx_gap(level) <= threshold)
            .expect("the effective depth always qualifies");
        if next > *schedule.last().expect("nonempty") {
            schedule.push(next);
        }
        k += 1;
    }
    schedule
}

/// Builds the cascade for a mean zero f over the given refinement schedule
/// (strictly increasing, starting at 0, ending at most at f.depth()). All
/// five structural conditions are verified exactly before returning.
pub fn build_tower(f: &CantorStep, schedule: &[usize], norm: Norm) -> Result<TowerSolution> {
    if schedule.is_empty() || schedule[0] != 0 {
        return Err(Error::Invalid {
            what: "refinement schedule",
            why: "must start at level 0".into(),
        });
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid {
            what: "refinement schedule",
            why: "must be strictly increasing".into(),
        });
    }
    let deepest = *schedule.last().expect("nonempty");
    if deepest > f.depth() {
        return Err(Error::Invalid {
            what: "refinement schedule",
            why: format!("level {deepest} exceeds depth {}", f.depth()),
        });
    }
    if !f.is_mean_zero() {
        return Err(Error::NotMeanZero {
            mean: format!("{:?}", f.mean()),
        });
    }
    let d = f.dim();
    let q = f.q();

    // Level 0: one cycle over the q branch cells along a prefix-bounded
    // ordering of the branch means; g_0 vanishes on the first cell of the
    // cycle and accumulates h_0 along it.
    let h0 = f.coarsen(0);
    let pi = steinitz_rearrange(h0.values(), norm)?.permutation;
    let mut cycle_order = pi; // cells in visit order
    let mut levels = Vec::with_capacity(schedule.len());
    levels.push(make_level(&h0, &cycle_order, norm)?);
    // g_0 obeys the plain rearrangement bound d·‖h_0‖.
    if !levels[0]
        .g_norm
        .le_scaled(&rat_int(d as i64), &levels[0].h_norm)
    {
        return Err(Error::BoundViolated {
            what: "cascade level-0 sup bound",
        });
    }

    for w in schedule.windows(2) {
        let (prev_depth, cur_depth) = (w[0], w[1]);
        let n_cells = q << prev_depth;
        let m = 1usize << (cur_depth - prev_depth);
        let h = f
            .coarsen(cur_depth)
            .sub(&f.coarsen(prev_depth).refine_to(cur_depth));

        // Row i of the matrix: the h-values over the children of the i-th
        // cell along the previous cycle, in lexicographic child order.
        let rows: Vec<Vec<RationalVector>> = cycle_order
            .iter()
            .map(|&cell| (0..m).map(|j| h.values[cell * m + j].clone()).collect())
            .collect();
        let matrix = VectorMatrix::new(rows, norm)?;
        matrix.ensure_rows_mean_zero()?;
        let fam = kwapien_permutations(&matrix)?;

        // Thread totals and the cross-cycle stitching order.
        let b: Vec<RationalVector> = (0..m)
            .map(|j| {
                let mut acc = RationalVector::zero(d);
                for (i, perm) in fam.perms.iter().enumerate() {
                    acc += matrix.entry(i, perm[j]);
                }
                acc
            })
            .collect();
        let pi0 = steinitz_rearrange(&b, norm)?.permutation;

        // Visit order of the new cycle: thread π_0(jj) through all cells,
        // then the next thread.
        let mut new_order = Vec::with_capacity(n_cells * m);
        for &jj in &pi0 {
            for (i, &cell) in cycle_order.iter().enumerate() {
                new_order.push(cell * m + fam.perms[i][jj]);
            }
        }

        let level = make_level(&h, &new_order, norm)?;
        // Condition (iii), exact surrogate: the construction guarantees
        // ‖g_k‖ ≤ (d+1)·R(m,d)·‖h_k‖ with R the recursive deviation bound,
        // which never exceeds the cascade constant 8d²(S+1)/log 1.5.
        let factor = recursive_deviation_bound(m, d) * rat_int((d + 1) as i64);
        if !level.g_norm.le_scaled(&factor, &level.h_norm) {
            return Err(Error::BoundViolated {
                what: "cascade level sup bound",
            });
        }
        // Condition (ii): the image of each cell refines the parent image.
        let prev_cycle = &levels.last().expect("level 0 exists").cycle;
        for (cell, &image) in level.cycle.iter().enumerate() {
            if image / m != prev_cycle[cell / m] {
                return Err(Error::BoundViolated {
                    what: "cascade refinement consistency",
                });
            }
        }
        levels.push(level);
        cycle_order = new_order;
    }

    // Accumulate g = Σ g_k at the deepest depth.
    let mut g_values = vec![RationalVector::zero(d); q << deepest];
    for level in &levels {
        let lifted = level.g.refine_to(deepest);
        for (gv, lv) in g_values.iter_mut().zip(lifted.values()) {
            *gv += lv;
        }
    }
    let g_final = CantorStep::new(q, f.r().clone(), deepest, g_values)?;
    let certified_bound = g_final.sup_norm(norm);
    let t_final = levels.last().expect("nonempty").cycle.clone();

    let sol = TowerSolution {
        levels,
        t_final,
        g_final,
        certified_bound,
    };

    // Residual must vanish whenever the schedule reached the level at which
    // f is exact.
    if deepest >= f.effective_depth() && !sol.residual_sup(f, norm).is_zero() {
        return Err(Error::BoundViolated {
            what: "cascade residual",
        });
    }
    Ok(sol)
}

/// Assembles one level from a visit order: the cycle table, the function
/// accumulating h along the cycle (zero on the first visited cell), and the
/// exact per-cell identity h = g∘T − g.
fn make_level(h: &CantorStep, visit_order: &[usize], norm: Norm) -> Result<TowerLevel> {
    let cells = h.cells();
    assert_eq!(visit_order.len(), cells);
    let d = h.dim();
    let mut cycle = vec![usize::MAX; cells];
    for (l, &cell) in visit_order.iter().enumerate() {
        cycle[cell] = visit_order[(l + 1) % cells];
    }
    if !is_single_cycle(&cycle) {
        return Err(Error::BoundViolated {
            what: "cascade cycle structure",
        });
    }
    let mut g_values = vec![RationalVector::zero(d); cells];
    let mut acc = RationalVector::zero(d);
    for window in visit_order.windows(2) {
        acc += &h.values()[window[0]];
        g_values[window[1]] = acc.clone();
    }
    let g = CantorStep::new(h.q(), h.r().clone(), h.depth(), g_values)?;
    // Condition (v): h = g∘T − g on every cell, exactly.
    for cell in 0..cells {
        let delta = &(&g.values()[cycle[cell]] - &g.values()[cell]) - &h.values()[cell];
        if !delta.is_zero() {
            return Err(Error::BoundViolated {
                what: "cascade level identity",
            });
        }
    }
    Ok(TowerLevel {
        depth: h.depth(),
        cycle,
        h_norm: h.sup_norm(norm),
        g_norm: g.sup_norm(norm),
        g,
        start_cell: visit_order[0],
    })
}

/// Embeds the deepest level into [0,1): cylinder i (lexicographic) becomes
/// the i-th of q·2^{n_K} equal intervals, T becomes the piecewise
/// translation realizing the final cycle, and f keeps its own (possibly
/// finer) partition so the embedded residual matches the cascade residual.
pub fn tower_to_interval_exchange(
    sol: &TowerSolution,
    f: &CantorStep,
) -> Result<(StepFunction, StepFunction, IntervalExchange)> {
    let f_hat = StepFunction::equal_intervals(f.values().to_vec())?;
    let g_hat = StepFunction::equal_intervals(sol.g_final.values().to_vec())?;
    let t_hat = IntervalExchange::from_cell_permutation(&sol.t_final)?;
    Ok((f_hat, g_hat, t_hat))
}
