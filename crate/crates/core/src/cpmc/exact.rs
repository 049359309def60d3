//! Exhaustive oracle for connectivity preserving cuts.
//!
//! Edge mode searches over 2-partitions (source side holding the source and
//! partners, the other side holding the destinations) with branch and bound;
//! an optimal cut is always the set of edges leaving the destination side.
//! Node mode enumerates candidate node sets in nondecreasing weight order.

use serde::{Deserialize, Serialize};

use super::{minimal_separator, CpmcInstance};
use crate::error::{Error, Result};
use crate::graph::{CutKind, CutSolution, Weight};

/// Node mode refuses more candidate nodes than this (2^20 subsets).
pub const NODE_CANDIDATE_LIMIT: usize = 20;
/// Edge mode refuses more undecided nodes than this after forced sides are propagated.
pub const PARTITION_FREE_LIMIT: usize = 40;
/// Edge mode gives up after this many search nodes.
pub const SEARCH_NODE_LIMIT: u64 = 1 << 26;

/// Result of the exact solver: infeasibility is data, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "cut", rename_all = "lowercase")]
pub enum CpmcOutcome {
    Optimal(CutSolution),
    Infeasible,
}

impl CpmcOutcome {
    pub fn weight(&self) -> Option<u64> {
        match self {
            CpmcOutcome::Optimal(s) => Some(s.weight),
            CpmcOutcome::Infeasible => None,
        }
    }

    pub fn cut(&self) -> Option<&CutSolution> {
        match self {
            CpmcOutcome::Optimal(s) => Some(s),
            CpmcOutcome::Infeasible => None,
        }
    }
}

/// Minimum weight valid cut; ties go to the lexicographically smallest member list.
pub fn solve_cpmc_exact(inst: &CpmcInstance) -> Result<CpmcOutcome> {
    inst.validate()?;
    match inst.mode {
        CutKind::Node => solve_node(inst),
        CutKind::Edge => {
            let Some(mut s) = PartitionSearch::new(inst, true)? else {
                return Ok(CpmcOutcome::Infeasible);
            };
            s.run()?;
            Ok(match s.best {
                Some((_, members)) => CpmcOutcome::Optimal(CutSolution::from_members(
                    &inst.graph,
                    CutKind::Edge,
                    members,
                    true,
                )),
                None => CpmcOutcome::Infeasible,
            })
        }
    }
}

/// Feasibility by exhaustive search; `None` when the search is too large.
pub(crate) fn search_feasible(inst: &CpmcInstance) -> Option<bool> {
    match inst.mode {
        CutKind::Edge => {
            let Some(mut s) = PartitionSearch::new(inst, false).ok()? else {
                return Some(false);
            };
            s.run().ok()?;
            Some(s.best.is_some())
        }
        CutKind::Node => match solve_node(inst) {
            Ok(o) => Some(o.cut().is_some()),
            Err(_) => None,
        },
    }
}

fn solve_node(inst: &CpmcInstance) -> Result<CpmcOutcome> {
    let g = &inst.graph;
    let cand_mask = inst.node_candidates();
    let cands: Vec<usize> = (0..g.n()).filter(|&v| cand_mask[v]).collect();
    let c = cands.len();
    if c > NODE_CANDIDATE_LIMIT {
        return Err(Error::InstanceTooLarge {
            what: "node-mode oracle",
            size: 1u128 << c,
            limit: 1u128 << NODE_CANDIDATE_LIMIT,
        });
    }
    if !inst.preserve_destinations
        && minimal_separator(inst).map_or(true, |m| !inst.is_valid_cut(&m))
    {
        return Ok(CpmcOutcome::Infeasible);
    }
    let w: Vec<u64> = cands
        .iter()
        .map(|&v| g.node_weight(v).finite().unwrap())
        .collect();
    let total = 1usize << c;
    let mut weights = vec![0u64; total];
    for mask in 1..total {
        let low = mask.trailing_zeros() as usize;
        weights[mask] = weights[mask & (mask - 1)] + w[low];
    }
    let mut order: Vec<u32> = (0..total as u32).collect();
    order.sort_by_key(|&m| weights[m as usize]);
    let mut removed = vec![false; g.n()];
    let mut i = 0;
    while i < total {
        let wt = weights[order[i] as usize];
        let mut j = i;
        let mut best: Option<usize> = None;
        while j < total && weights[order[j] as usize] == wt {
            let mask = order[j] as usize;
            for (b, &v) in cands.iter().enumerate() {
                removed[v] = mask >> b & 1 == 1;
            }
            if inst.check_masks(&removed, &[]) {
                // Equal weights rule out nested sets, so the lowest differing
                // candidate decides the lexicographic order.
                best = Some(match best {
                    None => mask,
                    Some(bm) => {
                        let d = (bm ^ mask).trailing_zeros();
                        if mask >> d & 1 == 1 {
                            mask
                        } else {
                            bm
                        }
                    }
                });
            }
            j += 1;
        }
        if let Some(mask) = best {
            let members = (0..c)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| cands[b])
                .collect();
            return Ok(CpmcOutcome::Optimal(CutSolution::from_members(
                g,
                CutKind::Node,
                members,
                true,
            )));
        }
        i = j;
    }
    Ok(CpmcOutcome::Infeasible)
}

const UNSET: u8 = 2;
const S: u8 = 0;
const T: u8 = 1;

/// Branch and bound over 2-partitions.
struct PartitionSearch<'a> {
    inst: &'a CpmcInstance,
    side: Vec<u8>,
    trail: Vec<usize>,
    order: Vec<usize>,
    cost: u64,
    best: Option<(u64, Vec<usize>)>,
    optimize: bool,
    visited: u64,
}

impl<'a> PartitionSearch<'a> {
    /// `Ok(None)` when forced sides already conflict.
    fn new(inst: &'a CpmcInstance, optimize: bool) -> Result<Option<Self>> {
        let g = &inst.graph;
        let n = g.n();
        let mut s = PartitionSearch {
            inst,
            side: vec![UNSET; n],
            trail: Vec::new(),
            order: Vec::new(),
            cost: 0,
            best: None,
            optimize,
            visited: 0,
        };
        for v in inst.source_side() {
            if !s.assign(v, S) {
                return Ok(None);
            }
        }
        for &d in &inst.destinations {
            if !s.assign(d, T) {
                return Ok(None);
            }
        }
        s.trail.clear();
        // Breadth-first order from the terminals so cost accrues early.
        let mut seen: Vec<bool> = s.side.iter().map(|&x| x != UNSET).collect();
        let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&v| seen[v]).collect();
        loop {
            while let Some(u) = queue.pop_front() {
                for &(v, _) in g.neighbors(u).iter().chain(g.in_neighbors(u)) {
                    if !seen[v] {
                        seen[v] = true;
                        s.order.push(v);
                        queue.push_back(v);
                    }
                }
            }
            match (0..n).find(|&v| !seen[v]) {
                Some(v) => {
                    seen[v] = true;
                    s.order.push(v);
                    queue.push_back(v);
                }
                None => break,
            }
        }
        let free = s.order.len();
        if free > PARTITION_FREE_LIMIT {
            return Err(Error::InstanceTooLarge {
                what: "edge-mode oracle",
                size: 1u128 << free,
                limit: 1u128 << PARTITION_FREE_LIMIT,
            });
        }
        if optimize {
            if let Some(members) = minimal_separator(inst) {
                if inst.is_valid_cut(&members) {
                    let w = members
                        .iter()
                        .map(|&e| g.edge_weight(e).finite().unwrap())
                        .sum();
                    s.best = Some((w, members));
                }
            }
        }
        Ok(Some(s))
    }

    /// Cost contributed by edge `e` given sides of its endpoints, `None` if uncuttable.
    fn edge_cost(&self, e: usize, u: usize, v: usize) -> Option<u64> {
        let (su, sv) = (self.side[u], self.side[v]);
        if su == UNSET || sv == UNSET {
            return Some(0);
        }
        let g = &self.inst.graph;
        let cut = if g.is_directed() {
            su == T && sv == S
        } else {
            su != sv
        };
        if !cut {
            return Some(0);
        }
        g.edge_weight(e).finite()
    }

    /// Sets a side and propagates uncuttable-edge implications. Returns false on conflict.
    fn assign(&mut self, v: usize, side: u8) -> bool {
        let g = &self.inst.graph;
        let mut stack = vec![(v, side)];
        while let Some((x, sd)) = stack.pop() {
            if self.side[x] != UNSET {
                if self.side[x] != sd {
                    return false;
                }
                continue;
            }
            self.side[x] = sd;
            self.trail.push(x);
            for &(y, e) in g.neighbors(x) {
                match self.edge_cost(e, x, y) {
                    None => return false,
                    Some(c) => self.cost += c,
                }
                if g.edge_weight(e).is_inf() && self.side[y] == UNSET {
                    // x -> y uncuttable: T at x forces T at y (undirected: same side).
                    if !g.is_directed() || sd == T {
                        stack.push((y, sd));
                    }
                }
            }
            if g.is_directed() {
                for &(y, e) in g.in_neighbors(x) {
                    match self.edge_cost(e, y, x) {
                        None => return false,
                        Some(c) => self.cost += c,
                    }
                    if g.edge_weight(e).is_inf() && self.side[y] == UNSET && sd == S {
                        stack.push((y, S));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize, cost: u64) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.side[x] = UNSET;
        }
        self.cost = cost;
    }

    /// Source side optimistically extended by unknown nodes still links the partners,
    /// and likewise for destinations when they must stay connected.
    fn optimistic_ok(&self) -> bool {
        let inst = self.inst;
        let n = inst.graph.n();
        let not_s: Vec<bool> = (0..n).map(|v| self.side[v] == T).collect();
        if !super::linked(&inst.graph, inst.source, &inst.partners, &not_s, &[]) {
            return false;
        }
        if inst.preserve_destinations {
            let not_t: Vec<bool> = (0..n).map(|v| self.side[v] == S).collect();
            if !super::linked(
                &inst.graph,
                inst.destinations[0],
                &inst.destinations[1..],
                &not_t,
                &[],
            ) {
                return false;
            }
        }
        true
    }

    fn bound_ok(&self) -> bool {
        match &self.best {
            None => true,
            Some((w, _)) => !self.optimize || self.cost <= *w,
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.optimistic_ok() {
            self.dfs(0)?;
        }
        Ok(())
    }

    fn dfs(&mut self, pos: usize) -> Result<()> {
        self.visited += 1;
        if self.visited > SEARCH_NODE_LIMIT {
            return Err(Error::InstanceTooLarge {
                what: "edge-mode oracle search",
                size: self.visited as u128,
                limit: SEARCH_NODE_LIMIT as u128,
            });
        }
        if !self.optimize && self.best.is_some() {
            return Ok(());
        }
        let mut pos = pos;
        while pos < self.order.len() && self.side[self.order[pos]] != UNSET {
            pos += 1;
        }
        if pos == self.order.len() {
            self.leaf();
            return Ok(());
        }
        let v = self.order[pos];
        for sd in [S, T] {
            let mark = self.trail.len();
            let cost = self.cost;
            if self.assign(v, sd) && self.bound_ok() && (sd == S || self.optimistic_ok()) {
                self.dfs(pos + 1)?;
            }
            self.undo(mark, cost);
        }
        Ok(())
    }

    fn leaf(&mut self) {
        let g = &self.inst.graph;
        let members: Vec<usize> = (0..g.m())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                let (su, sv) = (self.side[u], self.side[v]);
                if g.is_directed() {
                    su == T && sv == S
                } else {
                    su != sv
                }
            })
            .collect();
        debug_assert!(members.iter().all(|&e| g.edge_weight(e) != Weight::Inf));
        if !self.inst.is_valid_cut(&members) {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((w, m)) => self.cost < *w || (self.cost == *w && members < *m),
        };
        if better {
            self.best = Some((self.cost, members));
        }
    }
}
