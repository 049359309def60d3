//! Problem/algorithm dispatch shared by `solve` and `bench`.

use std::time::Instant;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use cutkit::cpmc::{solve_cpmc_exact, CpmcInstance, CpmcOutcome};
use cutkit::io::{InstanceDocument, Payload};
use cutkit::planar::{build_embedding, solve_2v2_planar_cpmec, ExactOracle};
use cutkit::reductions::{max_cover, min_cover, min_set_cover, CoverObjective, Solution};
use cutkit::tmc::{
    min_bisection, solve_tmc_exact, solve_tmec_via_bisection, solve_tmnc_lp, tmnc_lp_bound,
    BisectionBackend, GadgetScales, TmcInstance, EXACT_BISECTION_LIMIT,
};
use cutkit::{CutKind, CutSolution, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Cpmnc,
    Cpmec,
    Tmnc,
    Tmec,
    Setcover,
    Bisection,
    Cover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Exact,
    LpRounding,
    Bisection,
    #[value(name = "2v2-planar")]
    #[serde(rename = "2v2-planar")]
    TwoVsTwoPlanar,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendArg {
    Exact,
    LocalSearch,
}

/// Knobs for the randomized and gadget-based solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    pub backend: BackendArg,
    pub seed: u64,
    pub restarts: usize,
    pub scale_size: Option<usize>,
    pub scale_cost: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            backend: BackendArg::Exact,
            seed: 0,
            restarts: 16,
            scale_size: None,
            scale_cost: None,
        }
    }
}

impl SolveOptions {
    fn bisection_backend(&self) -> BisectionBackend {
        match self.backend {
            BackendArg::Exact => BisectionBackend::Exact,
            BackendArg::LocalSearch => BisectionBackend::LocalSearch {
                seed: self.seed,
                restarts: self.restarts,
            },
        }
    }

    fn scales(&self, n: usize) -> Option<GadgetScales> {
        if self.scale_size.is_none() && self.scale_cost.is_none() {
            return None;
        }
        let std = GadgetScales::standard(n);
        Some(GadgetScales {
            size: self.scale_size.unwrap_or(std.size),
            cost: self.scale_cost.unwrap_or(std.cost),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioBasis {
    Oracle,
    LpBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub problem: Problem,
    pub algo: Algo,
    pub status: Status,
    pub value: Option<u64>,
    pub solution: Option<Solution>,
    pub oracle_value: Option<u64>,
    pub lp_bound: Option<f64>,
    pub ratio: Option<f64>,
    pub ratio_basis: Option<RatioBasis>,
    pub wall_ms: f64,
}

/// Outcome of one solver call: value and solution, or infeasible.
type Found = Option<(u64, Solution)>;

fn cut_found(c: CutSolution) -> Found {
    Some((c.weight, Solution::Cut(c.members)))
}

fn infeasible_as_none(r: cutkit::Result<CutSolution>) -> cutkit::Result<Found> {
    match r {
        Ok(c) => Ok(cut_found(c)),
        Err(Error::Infeasible | Error::NoFiniteCut) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cpmc(doc: &InstanceDocument, mode: CutKind) -> cutkit::Result<CpmcInstance> {
    match &doc.payload {
        Payload::Cpmc(x) => Ok(CpmcInstance { mode, ..x.clone() }),
        _ => Err(Error::InvalidInstance(format!(
            "problem needs a cpmc document, got {}",
            doc.kind.name()
        ))),
    }
}

fn tmc(doc: &InstanceDocument, mode: CutKind) -> cutkit::Result<TmcInstance> {
    match &doc.payload {
        Payload::Tmc(x) => Ok(TmcInstance { mode, ..x.clone() }),
        _ => Err(Error::InvalidInstance(format!(
            "problem needs a tmc document, got {}",
            doc.kind.name()
        ))),
    }
}

fn cpmc_found(out: CpmcOutcome) -> Found {
    match out {
        CpmcOutcome::Optimal(c) => cut_found(c),
        CpmcOutcome::Infeasible => None,
    }
}

fn unsupported(p: Problem, a: Algo) -> Error {
    Error::InvalidInstance(format!(
        "algorithm {} does not apply to problem {}",
        a.to_possible_value().unwrap().get_name(),
        p.to_possible_value().unwrap().get_name()
    ))
}

/// The exact answer, or `None` when outside oracle limits.
fn oracle(problem: Problem, doc: &InstanceDocument) -> cutkit::Result<Option<Found>> {
    let r = run(problem, Algo::Exact, doc, &SolveOptions::default());
    match r {
        Ok(f) => Ok(Some(f)),
        Err(Error::InstanceTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run(
    problem: Problem,
    algo: Algo,
    doc: &InstanceDocument,
    opts: &SolveOptions,
) -> cutkit::Result<Found> {
    use Algo::*;
    use Problem::*;
    match (problem, algo) {
        (Cpmnc, Exact) => Ok(cpmc_found(solve_cpmc_exact(&cpmc(doc, CutKind::Node)?)?)),
        (Cpmec, Exact) => Ok(cpmc_found(solve_cpmc_exact(&cpmc(doc, CutKind::Edge)?)?)),
        (Cpmec, TwoVsTwoPlanar) => {
            let inst = cpmc(doc, CutKind::Edge)?;
            if inst.partners.len() != 1 || inst.destinations.len() != 2 {
                return Err(Error::InvalidInstance(
                    "2v2-planar needs one partner and two destinations".into(),
                ));
            }
            let emb = build_embedding(&inst.graph)?;
            let (s1, s2, d1, d2) = (
                inst.source,
                inst.partners[0],
                inst.destinations[0],
                inst.destinations[1],
            );
            infeasible_as_none(solve_2v2_planar_cpmec(&emb, s1, s2, d1, d2, &ExactOracle))
        }
        (Tmnc, Exact) => infeasible_as_none(solve_tmc_exact(&tmc(doc, CutKind::Node)?)),
        (Tmec, Exact) => infeasible_as_none(solve_tmc_exact(&tmc(doc, CutKind::Edge)?)),
        (Tmnc, LpRounding) => infeasible_as_none(solve_tmnc_lp(&tmc(doc, CutKind::Node)?)),
        (Tmec, Algo::Bisection) => {
            let inst = tmc(doc, CutKind::Edge)?;
            infeasible_as_none(solve_tmec_via_bisection(
                &inst,
                opts.bisection_backend(),
                opts.scales(inst.graph.n()),
            ))
        }
        (Setcover, Exact) => match &doc.payload {
            Payload::Setcover(sc) => match min_set_cover(sc) {
                Ok((w, sets)) => Ok(Some((w, Solution::Sets(sets)))),
                Err(Error::Infeasible) => Ok(None),
                Err(e) => Err(e),
            },
            _ => Err(Error::InvalidInstance(
                "setcover needs a setcover document".into(),
            )),
        },
        (Problem::Bisection, Exact | LocalSearch) => match &doc.payload {
            Payload::Graph(g) => {
                let backend = if algo == Exact {
                    BisectionBackend::Exact
                } else {
                    BisectionBackend::LocalSearch {
                        seed: opts.seed,
                        restarts: opts.restarts,
                    }
                };
                let b = min_bisection(g, backend)?;
                Ok(Some((b.weight, Solution::Partition(b.side))))
            }
            _ => Err(Error::InvalidInstance(
                "bisection needs a graph document".into(),
            )),
        },
        (Cover, Exact) => match &doc.payload {
            Payload::Cover(c) => match c.objective {
                CoverObjective::Max { .. } => {
                    let (v, el) = max_cover(c)?;
                    Ok(Some((v as u64, Solution::Elements(el))))
                }
                CoverObjective::Min { .. } => {
                    let (v, sets) = min_cover(c)?;
                    Ok(Some((v as u64, Solution::Sets(sets))))
                }
            },
            _ => Err(Error::InvalidInstance(
                "cover needs a cover document".into(),
            )),
        },
        (p, a) => Err(unsupported(p, a)),
    }
}

/// Solves and, for non-exact algorithms, compares against the oracle or the LP bound.
pub fn solve(
    problem: Problem,
    algo: Algo,
    doc: &InstanceDocument,
    opts: &SolveOptions,
) -> cutkit::Result<SolveReport> {
    let start = Instant::now();
    let found = run(problem, algo, doc, opts)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let exact = algo == Algo::Exact;
    let lp_bound = match problem {
        Problem::Tmnc if !exact => Some(tmnc_lp_bound(&tmc(doc, CutKind::Node)?)?),
        _ => None,
    };
    let oracle_value = if exact {
        found.as_ref().map(|f| f.0)
    } else if problem == Problem::Bisection
        && matches!(&doc.payload, Payload::Graph(g) if g.n() > EXACT_BISECTION_LIMIT)
    {
        None
    } else {
        oracle(problem, doc)?.flatten().map(|f| f.0)
    };
    let value = found.as_ref().map(|f| f.0);
    let ratio_of = |v: u64, d: f64| {
        if d > 0.0 {
            Some(v as f64 / d)
        } else if v == 0 {
            Some(1.0)
        } else {
            None
        }
    };
    let (ratio, ratio_basis) = match (value, oracle_value, lp_bound) {
        (Some(v), Some(o), _) => (ratio_of(v, o as f64), Some(RatioBasis::Oracle)),
        (Some(v), None, Some(lp)) => (ratio_of(v, lp), Some(RatioBasis::LpBound)),
        _ => (None, None),
    };
    let status = match (&found, exact) {
        (None, _) => Status::Infeasible,
        (Some(_), true) => Status::Optimal,
        (Some(_), false) => Status::Feasible,
    };
    Ok(SolveReport {
        problem,
        algo,
        status,
        value,
        solution: found.map(|f| f.1),
        oracle_value,
        lp_bound,
        ratio,
        ratio_basis,
        wall_ms,
    })
}
