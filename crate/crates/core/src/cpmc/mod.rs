//! Connectivity preserving minimum cuts.
//!
//! A cut must separate the source and its partners from every destination
//! while the source stays connected to each partner. In directed graphs
//! "separate" means no directed path from a destination back to the source
//! side, and a partner is preserved when a directed path links it with the
//! source in either direction.

mod exact;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{mask_of, min_st_cut_value, CutKind, CutSolution, Weight, WeightedGraph};

pub use exact::{
    solve_cpmc_exact, CpmcOutcome, NODE_CANDIDATE_LIMIT, PARTITION_FREE_LIMIT, SEARCH_NODE_LIMIT,
};

/// A connectivity preserving cut instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpmcInstance {
    pub graph: WeightedGraph,
    pub source: usize,
    pub partners: Vec<usize>,
    pub destinations: Vec<usize>,
    pub mode: CutKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Also require the destinations to stay mutually connected (2-vs-2 form).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub preserve_destinations: bool,
}

impl CpmcInstance {
    /// Validated instance with no budget.
    pub fn new(
        graph: WeightedGraph,
        source: usize,
        partners: Vec<usize>,
        destinations: Vec<usize>,
        mode: CutKind,
    ) -> Result<Self> {
        let inst = CpmcInstance {
            graph,
            source,
            partners,
            destinations,
            mode,
            budget: None,
            preserve_destinations: false,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn preserving_destinations(mut self) -> Self {
        self.preserve_destinations = true;
        self
    }

    /// Terminals in range and pairwise distinct; partner and destination lists non-empty.
    pub fn validate(&self) -> Result<()> {
        if self.partners.is_empty() || self.destinations.is_empty() {
            return Err(Error::InvalidInstance(
                "partners and destinations must be non-empty".into(),
            ));
        }
        let n = self.graph.n();
        let mut seen = vec![false; n];
        for &v in self.terminals().iter() {
            if v >= n {
                return Err(Error::InvalidInstance(format!("terminal {v} out of range")));
            }
            if seen[v] {
                return Err(Error::InvalidInstance(format!("terminal {v} listed twice")));
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// Source, partners and destinations.
    pub fn terminals(&self) -> Vec<usize> {
        let mut t = vec![self.source];
        t.extend(&self.partners);
        t.extend(&self.destinations);
        t
    }

    /// Source followed by partners.
    pub fn source_side(&self) -> Vec<usize> {
        let mut s = vec![self.source];
        s.extend(&self.partners);
        s
    }

    /// True for nodes that may be cut in node mode.
    pub fn node_candidates(&self) -> Vec<bool> {
        let term = mask_of(self.graph.n(), &self.terminals());
        (0..self.graph.n())
            .map(|v| !term[v] && !self.graph.node_weight(v).is_inf())
            .collect()
    }

    /// Checks separation and preservation after removing `members`.
    ///
    /// Members must be cuttable: finite weight, and non-terminal in node mode.
    pub fn is_valid_cut(&self, members: &[usize]) -> bool {
        let g = &self.graph;
        let (rn, re) = match self.mode {
            CutKind::Node => {
                let cand = self.node_candidates();
                if members.iter().any(|&v| v >= g.n() || !cand[v]) {
                    return false;
                }
                (mask_of(g.n(), members), Vec::new())
            }
            CutKind::Edge => {
                if members
                    .iter()
                    .any(|&e| e >= g.m() || g.edge_weight(e).is_inf())
                {
                    return false;
                }
                (Vec::new(), mask_of(g.m(), members))
            }
        };
        self.check_masks(&rn, &re)
    }

    pub(crate) fn check_masks(&self, rn: &[bool], re: &[bool]) -> bool {
        let g = &self.graph;
        let src = self.source_side();
        if g.is_directed() {
            let from_dest = g.reachable(&self.destinations, rn, re);
            if src.iter().any(|&v| from_dest[v]) {
                return false;
            }
        } else {
            let reach = g.reachable(&src, rn, re);
            if self.destinations.iter().any(|&d| reach[d]) {
                return false;
            }
        }
        linked(g, self.source, &self.partners, rn, re)
            && (!self.preserve_destinations
                || linked(g, self.destinations[0], &self.destinations[1..], rn, re))
    }

    /// Cut solution for `members`, with the feasibility verdict filled in.
    pub fn solution(&self, members: Vec<usize>) -> CutSolution {
        let ok = self.is_valid_cut(&members);
        CutSolution::from_members(&self.graph, self.mode, members, ok)
    }
}

/// Every node in `others` is linked with `root` (either direction if directed).
fn linked(g: &WeightedGraph, root: usize, others: &[usize], rn: &[bool], re: &[bool]) -> bool {
    if others.is_empty() {
        return true;
    }
    let fwd = g.reachable(&[root], rn, re);
    if !g.is_directed() {
        return others.iter().all(|&p| fwd[p]);
    }
    let back = g.reaching(&[root], rn, re);
    others.iter().all(|&p| fwd[p] || back[p])
}

/// Whether any finite cut satisfies separation and preservation.
///
/// Without destination preservation this is polynomial: the smallest region
/// that destinations can reach without crossing a cuttable element is cut
/// off along its boundary, which leaves the largest possible graph for the
/// source and partners. With destination preservation the problem is a
/// two-sided connectivity question and the exact search is used.
pub fn cpmc_feasible(inst: &CpmcInstance) -> bool {
    if inst.validate().is_err() {
        return false;
    }
    if inst.preserve_destinations {
        return matches!(exact::search_feasible(inst), Some(true));
    }
    match minimal_separator(inst) {
        Some(members) => inst.is_valid_cut(&members),
        None => false,
    }
}

/// Boundary of the region destinations reach through uncuttable elements.
///
/// `None` when that region already contains the source or a partner.
pub(crate) fn minimal_separator(inst: &CpmcInstance) -> Option<Vec<usize>> {
    let g = &inst.graph;
    let n = g.n();
    let src = mask_of(n, &inst.source_side());
    let cand = inst.node_candidates();
    let mut region = vec![false; n];
    let mut q = VecDeque::new();
    for &d in &inst.destinations {
        region[d] = true;
        q.push_back(d);
    }
    while let Some(u) = q.pop_front() {
        for &(v, e) in g.neighbors(u) {
            if region[v] {
                continue;
            }
            let passable = match inst.mode {
                CutKind::Edge => g.edge_weight(e).is_inf(),
                CutKind::Node => !cand[v],
            };
            if passable {
                region[v] = true;
                q.push_back(v);
            }
        }
    }
    if (0..n).any(|v| region[v] && src[v]) {
        return None;
    }
    let mut members = Vec::new();
    match inst.mode {
        CutKind::Edge => {
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let crossing = if g.is_directed() {
                    region[u] && !region[v]
                } else {
                    region[u] != region[v]
                };
                if crossing {
                    members.push(e);
                }
            }
        }
        CutKind::Node => {
            let mut mark = vec![false; n];
            for u in (0..n).filter(|&u| region[u]) {
                for &(v, _) in g.neighbors(u) {
                    if !region[v] && cand[v] && !mark[v] {
                        mark[v] = true;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
        }
    }
    Some(members)
}

/// Budgeted decision: is there a valid cut of weight at most the budget?
pub fn decide(inst: &CpmcInstance) -> Result<bool> {
    let budget = inst
        .budget
        .ok_or_else(|| Error::InvalidInstance("decision requires a budget".into()))?;
    Ok(match solve_cpmc_exact(inst)? {
        CpmcOutcome::Optimal(sol) => sol.weight <= budget,
        CpmcOutcome::Infeasible => false,
    })
}

/// Trichotomy of a partner relative to the source and destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartnerVerdict {
    GuaranteedPreserving,
    Threshold,
    Outer,
}

/// Cut values comparing separate, joint and preserving cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartnerClassification {
    pub ce_s1t: u64,
    pub ce_s2t: u64,
    pub ce_joint: u64,
    pub cep: u64,
    pub verdict: PartnerVerdict,
}

/// Classifies `s2` as a partner of `s1` against destination `t` (undirected, edge cuts).
pub fn classify_partner(
    g: &WeightedGraph,
    s1: usize,
    s2: usize,
    t: usize,
) -> Result<PartnerClassification> {
    if g.is_directed() {
        return Err(Error::InvalidInstance(
            "classification needs an undirected graph".into(),
        ));
    }
    let inst = CpmcInstance::new(g.clone(), s1, vec![s2], vec![t], CutKind::Edge)?;
    let ce_s1t = min_st_cut_value(g, CutKind::Edge, &[s1], &[t])?;
    let ce_s2t = min_st_cut_value(g, CutKind::Edge, &[s2], &[t])?;
    let ce_joint = min_st_cut_value(g, CutKind::Edge, &[s1, s2], &[t])?;
    let cep = match solve_cpmc_exact(&inst)? {
        CpmcOutcome::Optimal(sol) => sol.weight,
        CpmcOutcome::Infeasible => return Err(Error::NoFiniteCut),
    };
    let sum = ce_s1t + ce_s2t;
    let verdict = if sum > ce_joint {
        PartnerVerdict::GuaranteedPreserving
    } else if cep > sum {
        PartnerVerdict::Outer
    } else {
        PartnerVerdict::Threshold
    };
    Ok(PartnerClassification {
        ce_s1t,
        ce_s2t,
        ce_joint,
        cep,
        verdict,
    })
}

/// Convenience constructor for a node-weighted undirected graph.
pub fn node_weighted(weights: &[u64], edges: &[(usize, usize)]) -> Result<WeightedGraph> {
    WeightedGraph::new(
        false,
        weights.iter().map(|&w| Weight::Finite(w)).collect(),
        edges
            .iter()
            .map(|&(u, v)| (u, v, Weight::Finite(1)))
            .collect(),
    )
}
