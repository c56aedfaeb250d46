//! Interval exchange transformations: measure-preserving piecewise
//! translations of [0,1). These are the concrete, exactly-checkable model of
//! a measure preserving transformation used throughout the crate.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat_int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub shift: Rational,
}

/// A bijection of [0,1) acting as `t ↦ t + shift` on each source piece.
/// Both the source intervals and their images partition [0,1); this is
/// verified exactly at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalExchange {
    pieces: Vec<Piece>, // sorted by lo
}

fn check_partition(mut intervals: Vec<(Rational, Rational)>, what: &'static str) -> Result<()> {
    intervals.sort_by(|a, b| a.0.cmp(&b.0));
    let mut cursor = Rational::zero();
    for (lo, hi) in &intervals {
        if *lo != cursor {
            return Err(Error::Invalid {
                what: "interval exchange",
                why: format!(
                    "{what} intervals leave a gap or overlap at {}",
                    format_rational(&cursor)
                ),
            });
        }
        if hi <= lo {
            return Err(Error::Invalid {
                what: "interval exchange",
                why: format!("empty {what} interval at {}", format_rational(lo)),
            });
        }
        cursor = hi.clone();
    }
    if cursor != rat_int(1) {
        return Err(Error::Invalid {
            what: "interval exchange",
            why: format!("{what} intervals cover only up to {}", format_rational(&cursor)),
        });
    }
    Ok(())
}

impl IntervalExchange {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_partition(
            pieces.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect(),
            "source",
        )?;
        check_partition(
            pieces
                .iter()
                .map(|p| (&p.lo + &p.shift, &p.hi + &p.shift))
                .collect(),
            "image",
        )?;
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        Ok(Self { pieces })
    }

    pub fn identity() -> Self {
        Self {
            pieces: vec![Piece {
                lo: Rational::zero(),
                hi: rat_int(1),
                shift: Rational::zero(),
            }],
        }
    }

    /// The classical interval exchange datum: source pieces of the given
    /// positive lengths (summing to 1) in order, reassembled so that piece k
    /// lands in output slot perm[k].
    pub fn from_lengths_permutation(lengths: &[Rational], perm: &[usize]) -> Result<Self> {
        let n = lengths.len();
        if n == 0 || perm.len() != n {
            return Err(Error::Invalid {
                what: "interval exchange datum",
                why: "lengths and permutation must be nonempty and equal length".into(),
            });
        }
        let mut starts = Vec::with_capacity(n);
        let mut cursor = Rational::zero();
        for len in lengths {
            starts.push(cursor.clone());
            cursor += len;
        }
        // Output offset of slot s: total length of pieces in earlier slots.
        let mut slot_of = vec![usize::MAX; n];
        for (piece, &slot) in perm.iter().enumerate() {
            if slot >= n || slot_of[slot] != usize::MAX {
                return Err(Error::Invalid {
                    what: "interval exchange datum",
                    why: "permutation is not a bijection".into(),
                });
            }
            slot_of[slot] = piece;
        }
        let mut image_starts = vec![Rational::zero(); n];
        let mut cursor = Rational::zero();
        for &piece in &slot_of {
            image_starts[piece] = cursor.clone();
            cursor += &lengths[piece];
        }
        let pieces = (0..n)
            .map(|i| Piece {
                lo: starts[i].clone(),
                hi: &starts[i] + &lengths[i],
                shift: &image_starts[i] - &starts[i],
            })
            .collect();
        Self::new(pieces)
    }

    /// The exchange of n equal cells sending cell k onto cell perm[k] by
    /// translation (0-based).
    pub fn from_cell_permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid {
                    what: "cell permutation",
                    why: "not a bijection".into(),
                });
            }
            seen[p] = true;
        }
        let cell = |k: usize| Rational::new(k.into(), n.into());
        let pieces = perm
            .iter()
            .enumerate()
            .map(|(k, &to)| Piece {
                lo: cell(k),
                hi: cell(k + 1),
                shift: cell(to) - cell(k),
            })
            .collect();
        Self::new(pieces)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn piece_containing(&self, t: &Rational) -> &Piece {
        assert!(
            !t.is_negative() && *t < rat_int(1),
            "point outside [0,1): {}",
            format_rational(t)
        );
        let idx = self.pieces.partition_point(|p| p.hi <= *t);
        &self.pieces[idx]
    }

    pub fn apply(&self, t: &Rational) -> Rational {
        t + &self.piece_containing(t).shift
    }

    /// True for interior piece boundaries (0 < b < 1).
    pub fn is_interior_boundary(&self, t: &Rational) -> bool {
        !t.is_zero() && self.pieces.iter().any(|p| p.lo == *t)
    }

    pub fn inverse(&self) -> IntervalExchange {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece {
                lo: &p.lo + &p.shift,
                hi: &p.hi + &p.shift,
                shift: -p.shift.clone(),
            })
            .collect();
        Self::new(pieces).expect("inverse of a valid exchange is valid")
    }

    /// self ∘ inner: t ↦ self(inner(t)).
    pub fn compose(&self, inner: &IntervalExchange) -> IntervalExchange {
        let mut pieces = Vec::new();
        for p in &inner.pieces {
            // Cut p at pullbacks of self's piece boundaries.
            let mut cuts = vec![p.lo.clone()];
            for q in &self.pieces {
                let pre = &q.lo - &p.shift;
                if pre > p.lo && pre < p.hi {
                    cuts.push(pre);
                }
            }
            cuts.sort();
            cuts.push(p.hi.clone());
            for w in cuts.windows(2) {
                let mid_image = &w[0] + &p.shift;
                let outer_shift = &self.piece_containing(&mid_image).shift;
                pieces.push(Piece {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    shift: &p.shift + outer_shift,
                });
            }
        }
        Self::new(pieces).expect("composition of valid exchanges is valid")
    }

    /// True when the map is the identity pointwise (all shifts zero).
    pub fn is_identity_map(&self) -> bool {
        self.pieces.iter().all(|p| p.shift.is_zero())
    }
}
