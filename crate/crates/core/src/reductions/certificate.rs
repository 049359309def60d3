//! Reduction certificates: solution maps in both directions plus value relations.

use serde::{Deserialize, Serialize};

use super::cover::{CoverInstance, CoverObjective, SetCoverInstance};
use super::interdiction::{InterdictionGadget, InterdictionInstance};
use super::setcover::SetCoverGadget;
use super::tmec::{cut_from_partition, partition_from_cut, tmec_offset};
use crate::cpmc::CpmcInstance;
use crate::error::{Error, Result};
use crate::graph::{Weight, WeightedGraph};
use crate::tmc::TmcInstance;

/// A solution on either side of a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Solution {
    /// Chosen set indices.
    Sets(Vec<usize>),
    /// Cut member ids.
    Cut(Vec<usize>),
    /// Side of every node.
    Partition(Vec<bool>),
    /// Chosen ground elements.
    Elements(Vec<usize>),
    /// Blocked arc ids.
    Blocked(Vec<usize>),
}

/// Everything needed to map and check solutions of one reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "reduction")]
pub enum ReductionCertificate {
    SetcoverDirectedCpmec {
        source: SetCoverInstance,
        target: CpmcInstance,
        gadget: SetCoverGadget,
    },
    SetcoverMultipartnerCpmec {
        source: SetCoverInstance,
        target: CpmcInstance,
        gadget: SetCoverGadget,
    },
    BisectionTmec {
        source: WeightedGraph,
        target: TmcInstance,
    },
    MaxcoverInterdiction {
        source: CoverInstance,
        target: InterdictionInstance,
        gadget: InterdictionGadget,
    },
    Squaring {
        source: CoverInstance,
        target: CoverInstance,
    },
}

/// A located certificate failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "violation", content = "detail")]
pub enum Violation {
    SourceInfeasible(String),
    TargetInfeasible(String),
    ForwardInfeasible(String),
    BackwardInfeasible(String),
    ForwardValue(String),
    BackwardValue(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

fn wrong_kind(side: &str) -> Error {
    Error::InvalidInstance(format!("{side} solution has the wrong kind"))
}

fn bisection_weight(g: &WeightedGraph, side: &[bool]) -> u64 {
    g.edges()
        .iter()
        .filter(|&&(u, v)| side[u] != side[v])
        .count() as u64
}

impl ReductionCertificate {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionCertificate::SetcoverDirectedCpmec { .. } => "setcover-directed-cpmec",
            ReductionCertificate::SetcoverMultipartnerCpmec { .. } => "setcover-multipartner-cpmec",
            ReductionCertificate::BisectionTmec { .. } => "bisection-tmec",
            ReductionCertificate::MaxcoverInterdiction { .. } => "maxcover-interdiction",
            ReductionCertificate::Squaring { .. } => "squaring",
        }
    }

    /// Objective value of a source solution, or why it is infeasible.
    pub fn source_value(&self, sol: &Solution) -> Result<std::result::Result<u64, String>> {
        use ReductionCertificate::*;
        Ok(match (self, sol) {
            (
                SetcoverDirectedCpmec { source, .. } | SetcoverMultipartnerCpmec { source, .. },
                Solution::Sets(s),
            ) => {
                if source.is_cover(s) {
                    Ok(source.weight(s))
                } else {
                    Err(format!("sets {s:?} do not cover every element"))
                }
            }
            (BisectionTmec { source, .. }, Solution::Partition(side)) => {
                let ones = side.iter().filter(|&&b| b).count();
                if side.len() != source.n() || 2 * ones != source.n() {
                    Err(format!(
                        "partition with {ones} of {} nodes is not balanced",
                        side.len()
                    ))
                } else {
                    Ok(bisection_weight(source, side))
                }
            }
            (
                MaxcoverInterdiction { source, .. } | Squaring { source, .. },
                Solution::Elements(el),
            ) => element_choice(source, el).map(|_| source.covered_count(el) as u64),
            _ => return Err(wrong_kind("source")),
        })
    }

    /// Objective value of a target solution, or why it is infeasible.
    pub fn target_value(&self, sol: &Solution) -> Result<std::result::Result<u64, String>> {
        use ReductionCertificate::*;
        Ok(match (self, sol) {
            (
                SetcoverDirectedCpmec { target, .. } | SetcoverMultipartnerCpmec { target, .. },
                Solution::Cut(c),
            ) => {
                if target.is_valid_cut(c) {
                    Ok(target.solution(c.clone()).weight)
                } else {
                    Err(format!(
                        "cut {c:?} is not a valid connectivity preserving cut"
                    ))
                }
            }
            (BisectionTmec { target, .. }, Solution::Cut(c)) => {
                if target.is_feasible(c) {
                    Ok(target.solution(c.clone()).weight)
                } else {
                    Err(format!(
                        "cut {c:?} disconnects fewer than {} services",
                        target.threshold
                    ))
                }
            }
            (MaxcoverInterdiction { target, .. }, Solution::Blocked(b)) => {
                let budget = target.budget.unwrap_or(u64::MAX);
                match target.blocking_cost(b) {
                    Weight::Finite(c) if c <= budget => {
                        match (target.max_flow(&[]), target.max_flow(b)) {
                            (Weight::Finite(base), Weight::Finite(after)) => Ok(base - after),
                            _ => Err("unbounded flow".to_string()),
                        }
                    }
                    _ => Err(format!(
                        "blocking {b:?} exceeds the budget or uses an unblockable arc"
                    )),
                }
            }
            (Squaring { target, .. }, Solution::Elements(el)) => {
                element_choice(target, el).map(|_| target.covered_count(el) as u64)
            }
            _ => return Err(wrong_kind("target")),
        })
    }

    /// Maps a source solution to a target solution.
    pub fn forward(&self, sol: &Solution) -> Result<Solution> {
        use ReductionCertificate::*;
        Ok(match (self, sol) {
            (
                SetcoverDirectedCpmec { gadget, .. } | SetcoverMultipartnerCpmec { gadget, .. },
                Solution::Sets(s),
            ) => Solution::Cut(gadget.forward(s)),
            (BisectionTmec { target, .. }, Solution::Partition(side)) => {
                Solution::Cut(cut_from_partition(target, side))
            }
            (MaxcoverInterdiction { gadget, .. }, Solution::Elements(el)) => Solution::Blocked(
                el.iter()
                    .filter_map(|&a| gadget.element_arcs.get(a).copied())
                    .collect(),
            ),
            (Squaring { .. }, Solution::Elements(el)) => Solution::Elements(el.clone()),
            _ => return Err(wrong_kind("source")),
        })
    }

    /// Maps a target solution back to a source solution.
    pub fn backward(&self, sol: &Solution) -> Result<Solution> {
        use ReductionCertificate::*;
        Ok(match (self, sol) {
            (
                SetcoverDirectedCpmec { gadget, .. } | SetcoverMultipartnerCpmec { gadget, .. },
                Solution::Cut(c),
            ) => Solution::Sets(gadget.backward(c)),
            (BisectionTmec { target, .. }, Solution::Cut(c)) => {
                Solution::Partition(partition_from_cut(target, c))
            }
            (MaxcoverInterdiction { gadget, .. }, Solution::Blocked(b)) => Solution::Elements(
                (0..gadget.element_arcs.len())
                    .filter(|&a| b.contains(&gadget.element_arcs[a]))
                    .collect(),
            ),
            (Squaring { .. }, Solution::Elements(el)) => Solution::Elements(el.clone()),
            _ => return Err(wrong_kind("target")),
        })
    }

    /// Whether a target value obtained by mapping forward is consistent with the source value.
    fn forward_ok(&self, src: &Solution, sv: u64, tv: u64) -> std::result::Result<(), String> {
        use ReductionCertificate::*;
        match self {
            SetcoverDirectedCpmec { gadget, .. } => {
                let bound = gadget.scale * sv + gadget.scale - 1;
                (tv <= bound)
                    .then_some(())
                    .ok_or(format!("cut {tv} exceeds n1·k·{sv} + n1·k − 1 = {bound}"))
            }
            SetcoverMultipartnerCpmec { gadget, .. } => {
                let Solution::Sets(s) = src else {
                    unreachable!()
                };
                let bound = gadget.scale * sv + gadget.penalty(s);
                (tv <= bound)
                    .then_some(())
                    .ok_or(format!("cut {tv} exceeds {bound}"))
            }
            BisectionTmec { source, .. } => {
                let want = sv + tmec_offset(source.n());
                (tv == want).then_some(()).ok_or(format!(
                    "threshold cut {tv} differs from bisection + n³/2 = {want}"
                ))
            }
            MaxcoverInterdiction { .. } => (tv >= sv)
                .then_some(())
                .ok_or(format!("flow drop {tv} below covered count {sv}")),
            Squaring { .. } => (tv == sv * sv)
                .then_some(())
                .ok_or(format!("squared count {tv} is not {sv}²")),
        }
    }

    /// Whether a source value obtained by mapping backward is consistent with the target value.
    fn backward_ok(&self, sv: u64, tv: u64) -> std::result::Result<(), String> {
        use ReductionCertificate::*;
        match self {
            SetcoverDirectedCpmec { gadget, .. } | SetcoverMultipartnerCpmec { gadget, .. } => {
                (gadget.scale * sv <= tv)
                    .then_some(())
                    .ok_or(format!("cover {sv} times n1·k exceeds cut {tv}"))
            }
            BisectionTmec { source, .. } => {
                let off = tmec_offset(source.n());
                (sv + off <= tv)
                    .then_some(())
                    .ok_or(format!("bisection {sv} + n³/2 exceeds threshold cut {tv}"))
            }
            MaxcoverInterdiction { .. } => (sv >= tv)
                .then_some(())
                .ok_or(format!("covered count {sv} below flow drop {tv}")),
            Squaring { .. } => (sv * sv == tv)
                .then_some(())
                .ok_or(format!("count {sv} squared is not {tv}")),
        }
    }
}

fn element_choice(c: &CoverInstance, el: &[usize]) -> std::result::Result<(), String> {
    let CoverObjective::Max { n1 } = c.objective else {
        return Err("not a max-cover instance".into());
    };
    let mut sorted = el.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != el.len() || el.iter().any(|&e| e >= c.ground) {
        return Err(format!("elements {el:?} are not distinct ground elements"));
    }
    if el.len() > n1 {
        return Err(format!(
            "{} elements chosen, at most {n1} allowed",
            el.len()
        ));
    }
    Ok(())
}

/// Checks both solutions, both maps and both value relations.
pub fn verify_certificate(
    cert: &ReductionCertificate,
    source_sol: &Solution,
    target_sol: &Solution,
) -> Verdict {
    let mut violations = Vec::new();
    let err = |e: Error| e.to_string();
    match cert.source_value(source_sol) {
        Err(e) => violations.push(Violation::SourceInfeasible(err(e))),
        Ok(Err(why)) => violations.push(Violation::SourceInfeasible(why)),
        Ok(Ok(sv)) => match cert.forward(source_sol).and_then(|f| cert.target_value(&f)) {
            Err(e) => violations.push(Violation::ForwardInfeasible(err(e))),
            Ok(Err(why)) => violations.push(Violation::ForwardInfeasible(why)),
            Ok(Ok(tv)) => {
                if let Err(why) = cert.forward_ok(source_sol, sv, tv) {
                    violations.push(Violation::ForwardValue(why));
                }
            }
        },
    }
    match cert.target_value(target_sol) {
        Err(e) => violations.push(Violation::TargetInfeasible(err(e))),
        Ok(Err(why)) => violations.push(Violation::TargetInfeasible(why)),
        Ok(Ok(tv)) => match cert
            .backward(target_sol)
            .and_then(|b| cert.source_value(&b))
        {
            Err(e) => violations.push(Violation::BackwardInfeasible(err(e))),
            Ok(Err(why)) => violations.push(Violation::BackwardInfeasible(why)),
            Ok(Ok(sv)) => {
                if let Err(why) = cert.backward_ok(sv, tv) {
                    violations.push(Violation::BackwardValue(why));
                }
            }
        },
    }
    Verdict {
        ok: violations.is_empty(),
        violations,
    }
}
