//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not mean zero (mean = {mean})")]
    NotMeanZero { mean: String },

    #[error("row {row} does not sum to zero")]
    RowNotMeanZero { row: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("instance too large for exhaustive search (n = {n}, limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension too large (n = {n}, limit {limit})")]
    DimensionTooLarge { n: usize, limit: usize },

    #[error("0 is not in the convex hull of selection set {set}")]
    ConvexHullViolation { set: usize },

    #[error("constructed {what} violates its certified bound; this is a bug")]
    BoundViolated { what: &'static str },

    #[error("orbit hit a partition breakpoint at t = {t}")]
    BreakpointHit { t: String },

    #[error("intervals are not all of equal length 1/n")]
    UnequalIntervals,

    #[error("no admissible denominator q <= {q_max}")]
    SearchExhausted { q_max: u64 },

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
