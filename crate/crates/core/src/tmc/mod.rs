//! Threshold minimum cuts: disconnect a client from at least `l` of `k` services.

mod approx;
mod bisection;
mod lp;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    mask_of, min_st_cut, min_st_cut_value, CutKind, CutSolution, Weight, WeightedGraph,
};

pub use approx::{solve_tmnc_lp, tmnc_lp_bound, tmnc_lp_model};
pub use bisection::{
    build_bisection_gadget, j_range, min_bisection, solve_tmec_via_bisection, Bisection,
    BisectionBackend, BisectionGadget, GadgetScales, Provenance, EXACT_BISECTION_LIMIT,
};
pub use lp::{solve_lp, Constraint, LpModel, LpSolution, Sense, LP_TOLERANCE};

/// Upper bound on the number of service subsets the exact oracle enumerates.
pub const SUBSET_LIMIT: u128 = 1_000_000;

/// A threshold cut instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TmcInstance {
    pub graph: WeightedGraph,
    pub services: Vec<usize>,
    pub client: usize,
    pub threshold: usize,
    pub mode: CutKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl TmcInstance {
    pub fn new(
        graph: WeightedGraph,
        services: Vec<usize>,
        client: usize,
        threshold: usize,
        mode: CutKind,
    ) -> Result<Self> {
        let inst = TmcInstance {
            graph,
            services,
            client,
            threshold,
            mode,
            budget: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn k(&self) -> usize {
        self.services.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.graph.n();
        if self.client >= n {
            return Err(Error::InvalidInstance(format!(
                "client {} out of range",
                self.client
            )));
        }
        let mut seen = mask_of(n, &[self.client]);
        for &s in &self.services {
            if s >= n {
                return Err(Error::InvalidInstance(format!("service {s} out of range")));
            }
            if seen[s] {
                return Err(Error::InvalidInstance(format!(
                    "service {s} repeats a terminal"
                )));
            }
            seen[s] = true;
        }
        if self.threshold == 0 || self.threshold > self.k() {
            return Err(Error::InvalidInstance(format!(
                "threshold {} outside 1..={}",
                self.threshold,
                self.k()
            )));
        }
        Ok(())
    }

    /// The graph the cut is computed on: in node mode terminals become uncuttable.
    pub(crate) fn cut_graph(&self) -> WeightedGraph {
        match self.mode {
            CutKind::Edge => self.graph.clone(),
            CutKind::Node => {
                let mut w = self.graph.node_weights().to_vec();
                w[self.client] = Weight::Inf;
                for &s in &self.services {
                    w[s] = Weight::Inf;
                }
                let edges = (0..self.graph.m())
                    .map(|e| {
                        let (u, v) = self.graph.endpoints(e);
                        (u, v, self.graph.edge_weight(e))
                    })
                    .collect();
                WeightedGraph::new(self.graph.is_directed(), w, edges)
                    .expect("same shape as a valid graph")
            }
        }
    }

    /// Minimum cut separating `services` from the client (lexicographic tie-break).
    pub fn cut_services(&self, services: &[usize]) -> Result<CutSolution> {
        let g = self.cut_graph();
        let sol = min_st_cut(&g, self.mode, &[self.client], services)?;
        Ok(self.solution(sol.members))
    }

    /// Minimum cut value separating `services` from the client.
    pub fn cut_value(&self, services: &[usize]) -> Result<u64> {
        min_st_cut_value(&self.cut_graph(), self.mode, &[self.client], services)
    }

    /// Number of services the client can no longer reach after removing `members`.
    pub fn disconnected_count(&self, members: &[usize]) -> usize {
        let g = &self.graph;
        let reach = match self.mode {
            CutKind::Node => g.reachable(&[self.client], &mask_of(g.n(), members), &[]),
            CutKind::Edge => g.reachable(&[self.client], &[], &mask_of(g.m(), members)),
        };
        self.services.iter().filter(|&&s| !reach[s]).count()
    }

    /// Members are cuttable and at least `threshold` services are disconnected.
    pub fn is_feasible(&self, members: &[usize]) -> bool {
        let g = &self.graph;
        let ok = match self.mode {
            CutKind::Node => members.iter().all(|&v| {
                v < g.n()
                    && v != self.client
                    && !self.services.contains(&v)
                    && !g.node_weight(v).is_inf()
            }),
            CutKind::Edge => members
                .iter()
                .all(|&e| e < g.m() && !g.edge_weight(e).is_inf()),
        };
        ok && self.disconnected_count(members) >= self.threshold
    }

    pub fn solution(&self, members: Vec<usize>) -> CutSolution {
        let ok = self.is_feasible(&members);
        CutSolution::from_members(&self.graph, self.mode, members, ok)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `l`-subsets of `0..k` in lexicographic order.
pub(crate) fn subsets(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..l).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..l).rev().find(|&i| cur[i] < k - l + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..l {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Exact optimum: the best min cut over all `threshold`-subsets of services.
pub fn solve_tmc_exact(inst: &TmcInstance) -> Result<CutSolution> {
    inst.validate()?;
    let (k, l) = (inst.k(), inst.threshold);
    let count = binomial(k, l);
    if count > SUBSET_LIMIT {
        return Err(Error::InstanceTooLarge {
            what: "threshold subsets",
            size: count,
            limit: SUBSET_LIMIT,
        });
    }
    let g = inst.cut_graph();
    let picks: Vec<Vec<usize>> = subsets(k, l)
        .into_iter()
        .map(|s| s.into_iter().map(|i| inst.services[i]).collect())
        .collect();
    let values: Vec<Option<u64>> = picks
        .par_iter()
        .map(|w| min_st_cut_value(&g, inst.mode, &[inst.client], w).ok())
        .collect();
    let best = values
        .iter()
        .flatten()
        .min()
        .copied()
        .ok_or(Error::NoFiniteCut)?;
    let mut winner: Option<Vec<usize>> = None;
    for (w, v) in picks.iter().zip(&values) {
        if *v == Some(best) {
            let members = min_st_cut(&g, inst.mode, &[inst.client], w)?.members;
            if winner.as_ref().map_or(true, |m| members < *m) {
                winner = Some(members);
            }
        }
    }
    Ok(inst.solution(winner.expect("a tied subset exists")))
}

/// Budgeted decision via the exact oracle.
pub fn decide(inst: &TmcInstance) -> Result<bool> {
    let budget = inst
        .budget
        .ok_or_else(|| Error::InvalidInstance("decision requires a budget".into()))?;
    match solve_tmc_exact(inst) {
        Ok(sol) => Ok(sol.weight <= budget),
        Err(Error::NoFiniteCut) => Ok(false),
        Err(e) => Err(e),
    }
}
