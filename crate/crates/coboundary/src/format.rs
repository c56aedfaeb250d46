//! JSON document formats for instances and solutions.
//!
//! Every rational is encoded as an exact `"p/q"` string and round-trips
//! bit-exactly. Decimal renderings appear only in fields named `approx`.
//! Permutations and cycle tables are 1-based in documents (and 0-based in
//! memory).

use serde::{Deserialize, Serialize};

use crate::cantor::{CantorStep, TowerLevel, TowerSolution};
use crate::discrete::DiscreteFunction;
use crate::error::{Error, Result};
use crate::exchange::{IntervalExchange, Piece};
use crate::norm::{Norm, NormValue};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::solve::{DiscreteSolution, StepSolution};
use crate::step::StepFunction;
use crate::vector::RationalVector;

fn rat_to_doc(r: &Rational) -> String {
    format_rational(r)
}

fn rat_from_doc(s: &str) -> Result<Rational> {
    parse_rational(s)
}

fn vec_to_doc(v: &RationalVector) -> Vec<String> {
    v.entries().iter().map(rat_to_doc).collect()
}

fn vec_from_doc(doc: &[String]) -> Result<RationalVector> {
    RationalVector::new(doc.iter().map(|s| rat_from_doc(s)).collect::<Result<_>>()?)
}

fn vecs_to_doc(vs: &[RationalVector]) -> Vec<Vec<String>> {
    vs.iter().map(vec_to_doc).collect()
}

fn vecs_from_doc(doc: &[Vec<String>]) -> Result<Vec<RationalVector>> {
    doc.iter().map(|v| vec_from_doc(v)).collect()
}

fn perm_to_doc(perm: &[usize]) -> Vec<usize> {
    perm.iter().map(|&p| p + 1).collect()
}

fn perm_from_doc(doc: &[usize]) -> Result<Vec<usize>> {
    doc.iter()
        .map(|&p| {
            p.checked_sub(1).ok_or(Error::Parse(
                "permutation entries are 1-based and positive".into(),
            ))
        })
        .collect()
}

/// An exactly-carried norm value: `kind: "exact"` stores the value itself,
/// `kind: "sqrt"` stores the exact square. `approx` is a 12-significant-digit
/// decimal rendering and is never parsed back.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundDoc {
    pub kind: String,
    pub value: String,
    pub approx: String,
}

impl BoundDoc {
    pub fn from_value(v: &NormValue) -> Self {
        let (kind, value) = match v {
            NormValue::Exact(r) => ("exact", rat_to_doc(r)),
            NormValue::Sqrt(r) => ("sqrt", rat_to_doc(r)),
        };
        BoundDoc {
            kind: kind.to_string(),
            value,
            approx: v.approx_string(),
        }
    }

    pub fn to_value(&self) -> Result<NormValue> {
        let r = rat_from_doc(&self.value)?;
        match self.kind.as_str() {
            "exact" => Ok(NormValue::Exact(r)),
            "sqrt" => Ok(NormValue::Sqrt(r)),
            other => Err(Error::Parse(format!("unknown bound kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDoc {
    pub breakpoints: Vec<String>,
    pub values: Vec<Vec<String>>,
}

impl StepDoc {
    pub fn from_step(f: &StepFunction) -> Self {
        StepDoc {
            breakpoints: f.breakpoints().iter().map(rat_to_doc).collect(),
            values: vecs_to_doc(f.values()),
        }
    }

    pub fn to_step(&self) -> Result<StepFunction> {
        StepFunction::new(
            self.breakpoints
                .iter()
                .map(|s| rat_from_doc(s))
                .collect::<Result<_>>()?,
            vecs_from_doc(&self.values)?,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceDoc {
    pub lo: String,
    pub hi: String,
    pub shift: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExchangeDoc {
    pub pieces: Vec<PieceDoc>,
}

impl ExchangeDoc {
    pub fn from_exchange(t: &IntervalExchange) -> Self {
        ExchangeDoc {
            pieces: t
                .pieces()
                .iter()
                .map(|p| PieceDoc {
                    lo: rat_to_doc(&p.lo),
                    hi: rat_to_doc(&p.hi),
                    shift: rat_to_doc(&p.shift),
                })
                .collect(),
        }
    }

    pub fn to_exchange(&self) -> Result<IntervalExchange> {
        IntervalExchange::new(
            self.pieces
                .iter()
                .map(|p| {
                    Ok(Piece {
                        lo: rat_from_doc(&p.lo)?,
                        hi: rat_from_doc(&p.hi)?,
                        shift: rat_from_doc(&p.shift)?,
                    })
                })
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CantorDoc {
    pub q: usize,
    pub r: String,
    pub depth: usize,
    pub values: Vec<Vec<String>>,
}

impl CantorDoc {
    pub fn from_cantor(f: &CantorStep) -> Self {
        CantorDoc {
            q: f.q(),
            r: rat_to_doc(f.r()),
            depth: f.depth(),
            values: vecs_to_doc(f.values()),
        }
    }

    pub fn to_cantor(&self) -> Result<CantorStep> {
        CantorStep::new(
            self.q,
            rat_from_doc(&self.r)?,
            self.depth,
            vecs_from_doc(&self.values)?,
        )
    }
}

/// Instance documents accepted by `solve` and `oracle`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InstanceDoc {
    Discrete { values: Vec<Vec<String>> },
    Step(StepDoc),
    Cantor(CantorDoc),
}

#[derive(Clone, Debug)]
pub enum Instance {
    Discrete(DiscreteFunction),
    Step(StepFunction),
    Cantor(CantorStep),
}

impl InstanceDoc {
    pub fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::Discrete(f) => InstanceDoc::Discrete {
                values: vecs_to_doc(f.values()),
            },
            Instance::Step(f) => InstanceDoc::Step(StepDoc::from_step(f)),
            Instance::Cantor(f) => InstanceDoc::Cantor(CantorDoc::from_cantor(f)),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        Ok(match self {
            InstanceDoc::Discrete { values } => {
                Instance::Discrete(DiscreteFunction::new(vecs_from_doc(values)?)?)
            }
            InstanceDoc::Step(doc) => Instance::Step(doc.to_step()?),
            InstanceDoc::Cantor(doc) => Instance::Cantor(doc.to_cantor()?),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelDoc {
    pub depth: usize,
    pub cycle: Vec<usize>,
    pub g: Vec<Vec<String>>,
    pub h_norm: BoundDoc,
    pub g_norm: BoundDoc,
    pub start_cell: usize,
}

/// Solution documents emitted by `solve` and consumed by `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SolutionDoc {
    DiscreteSolution {
        norm: Norm,
        f: Vec<Vec<String>>,
        sigma: Vec<usize>,
        g: Vec<Vec<String>>,
        certified_bound: BoundDoc,
        f_sup_norm: BoundDoc,
        residual: BoundDoc,
    },
    StepSolution {
        norm: Norm,
        f: StepDoc,
        g: StepDoc,
        transform: ExchangeDoc,
        certified_bound: BoundDoc,
        f_sup_norm: BoundDoc,
        residual: BoundDoc,
    },
    CantorSolution {
        norm: Norm,
        f: CantorDoc,
        levels: Vec<LevelDoc>,
        t_final: Vec<usize>,
        g_final: Vec<Vec<String>>,
        certified_bound: BoundDoc,
        f_sup_norm: BoundDoc,
        residual: BoundDoc,
    },
}

impl SolutionDoc {
    pub fn from_discrete(
        f: &DiscreteFunction,
        sol: &DiscreteSolution,
        norm: Norm,
        residual: &NormValue,
    ) -> Self {
        SolutionDoc::DiscreteSolution {
            norm,
            f: vecs_to_doc(f.values()),
            sigma: perm_to_doc(&sol.sigma),
            g: vecs_to_doc(sol.g.values()),
            certified_bound: BoundDoc::from_value(&sol.certified_bound),
            f_sup_norm: BoundDoc::from_value(&f.sup_norm(norm)),
            residual: BoundDoc::from_value(residual),
        }
    }

    pub fn from_step(
        f: &StepFunction,
        sol: &StepSolution,
        norm: Norm,
        residual: &NormValue,
    ) -> Self {
        SolutionDoc::StepSolution {
            norm,
            f: StepDoc::from_step(f),
            g: StepDoc::from_step(&sol.g),
            transform: ExchangeDoc::from_exchange(&sol.transform),
            certified_bound: BoundDoc::from_value(&sol.certified_bound),
            f_sup_norm: BoundDoc::from_value(&f.sup_norm(norm)),
            residual: BoundDoc::from_value(residual),
        }
    }

    pub fn from_cantor(
        f: &CantorStep,
        sol: &TowerSolution,
        norm: Norm,
        residual: &NormValue,
    ) -> Self {
        SolutionDoc::CantorSolution {
            norm,
            f: CantorDoc::from_cantor(f),
            levels: sol
                .levels
                .iter()
                .map(|level: &TowerLevel| LevelDoc {
                    depth: level.depth,
                    cycle: perm_to_doc(&level.cycle),
                    g: vecs_to_doc(level.g.values()),
                    h_norm: BoundDoc::from_value(&level.h_norm),
                    g_norm: BoundDoc::from_value(&level.g_norm),
                    start_cell: level.start_cell + 1,
                })
                .collect(),
            t_final: perm_to_doc(&sol.t_final),
            g_final: vecs_to_doc(sol.g_final.values()),
            certified_bound: BoundDoc::from_value(&sol.certified_bound),
            f_sup_norm: BoundDoc::from_value(&f.sup_norm(norm)),
            residual: BoundDoc::from_value(residual),
        }
    }

    /// The (f, g, T) triple as step functions on [0,1), embedding discrete
    /// and cylinder solutions onto equal intervals.
    pub fn as_step_triple(&self) -> Result<(StepFunction, StepFunction, IntervalExchange, Norm)> {
        match self {
            SolutionDoc::DiscreteSolution {
                norm, f, sigma, g, ..
            } => {
                let fs = StepFunction::equal_intervals(vecs_from_doc(f)?)?;
                let gs = StepFunction::equal_intervals(vecs_from_doc(g)?)?;
                let t = IntervalExchange::from_cell_permutation(&perm_from_doc(sigma)?)?;
                Ok((fs, gs, t, *norm))
            }
            SolutionDoc::StepSolution {
                norm,
                f,
                g,
                transform,
                ..
            } => Ok((f.to_step()?, g.to_step()?, transform.to_exchange()?, *norm)),
            SolutionDoc::CantorSolution {
                norm,
                f,
                t_final,
                g_final,
                ..
            } => {
                let fc = f.to_cantor()?;
                let fs = StepFunction::equal_intervals(fc.values().to_vec())?;
                let gs = StepFunction::equal_intervals(vecs_from_doc(g_final)?)?;
                let t = IntervalExchange::from_cell_permutation(&perm_from_doc(t_final)?)?;
                Ok((fs, gs, t, *norm))
            }
        }
    }

    pub fn certified_bound(&self) -> Result<NormValue> {
        match self {
            SolutionDoc::DiscreteSolution {
                certified_bound, ..
            }
            | SolutionDoc::StepSolution {
                certified_bound, ..
            }
            | SolutionDoc::CantorSolution {
                certified_bound, ..
            } => certified_bound.to_value(),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn parse_instance(json: &str) -> Result<Instance> {
    let doc: InstanceDoc =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("instance: {e}")))?;
    doc.to_instance()
}

pub fn parse_solution(json: &str) -> Result<SolutionDoc> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("solution: {e}")))
}
