use serde::{Deserialize, Serialize};

use super::flow::FlowNetwork;
use super::{mask_of, Weight, WeightedGraph};
use crate::error::{Error, Result};

/// Whether a cut removes nodes or edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutKind {
    Node,
    Edge,
}

/// A cut, its weight and the components left after removing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSolution {
    pub kind: CutKind,
    /// Sorted node ids (node cut) or edge ids (edge cut).
    pub members: Vec<usize>,
    pub weight: u64,
    /// Weakly connected components of the graph minus the members.
    pub components: Vec<Vec<usize>>,
    pub feasible: bool,
}

impl CutSolution {
    /// Builds a solution from its members, computing weight and components.
    ///
    /// Panics if a member carries `Inf` weight.
    pub fn from_members(
        g: &WeightedGraph,
        kind: CutKind,
        mut members: Vec<usize>,
        feasible: bool,
    ) -> Self {
        members.sort_unstable();
        members.dedup();
        let weight_of = |i: usize| match kind {
            CutKind::Node => g.node_weight(i),
            CutKind::Edge => g.edge_weight(i),
        };
        let weight = members
            .iter()
            .map(|&i| weight_of(i).finite().expect("cut member with INF weight"))
            .sum();
        let components = match kind {
            CutKind::Node => g.components(&mask_of(g.n(), &members), &[]),
            CutKind::Edge => g.components(&[], &mask_of(g.m(), &members)),
        };
        CutSolution {
            kind,
            members,
            weight,
            components,
            feasible,
        }
    }

    /// Node mask for node cuts, empty otherwise.
    pub fn removed_nodes(&self, g: &WeightedGraph) -> Vec<bool> {
        match self.kind {
            CutKind::Node => mask_of(g.n(), &self.members),
            CutKind::Edge => Vec::new(),
        }
    }

    /// Edge mask for edge cuts, empty otherwise.
    pub fn removed_edges(&self, g: &WeightedGraph) -> Vec<bool> {
        match self.kind {
            CutKind::Edge => mask_of(g.m(), &self.members),
            CutKind::Node => Vec::new(),
        }
    }

    /// Index of the component holding `v`, if `v` survives the cut.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.binary_search(&v).is_ok())
    }
}

/// A cuttable element realised by one arc or, if undirected, an arc pair.
struct Element {
    weight: u64,
    /// Orientations `(tail, head)`: the element is cut when tail is on the
    /// source side and head on the sink side.
    orientations: Vec<(usize, usize)>,
}

/// Cut problem expressed on a flow network with labelled finite elements.
struct CutProblem {
    nodes: usize,
    fixed_arcs: Vec<(usize, usize, bool)>,
    elements: Vec<Element>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    big: u64,
}

impl CutProblem {
    fn network(&self, forced: &[(usize, usize)]) -> (FlowNetwork, usize, usize) {
        let s = self.nodes;
        let t = self.nodes + 1;
        let mut net = FlowNetwork::new(self.nodes + 2);
        for &(u, v, undirected) in &self.fixed_arcs {
            if undirected {
                net.add_edge(u, v, self.big);
            } else {
                net.add_arc(u, v, self.big);
            }
        }
        for el in &self.elements {
            match el.orientations.as_slice() {
                [(u, v)] => {
                    net.add_arc(*u, *v, el.weight);
                }
                [(u, v), _] => {
                    net.add_edge(*u, *v, el.weight);
                }
                _ => unreachable!(),
            }
        }
        for &x in &self.sources {
            net.add_arc(s, x, self.big);
        }
        for &x in &self.sinks {
            net.add_arc(x, t, self.big);
        }
        for &(u, v) in forced {
            net.add_arc(s, u, self.big);
            net.add_arc(v, t, self.big);
        }
        (net, s, t)
    }

    fn min_value(&self) -> Result<u64> {
        let (mut net, s, t) = self.network(&[]);
        let f = net.max_flow(s, t);
        if f >= self.big {
            Err(Error::NoFiniteCut)
        } else {
            Ok(f)
        }
    }

    /// Lexicographically smallest sorted element list among minimum cuts.
    fn lexmin(&self, value: u64) -> Vec<usize> {
        let mut forced = Vec::new();
        let mut chosen = Vec::new();
        self.search(value, &mut forced, &mut chosen, 0)
    }

    fn search(
        &self,
        value: u64,
        forced: &mut Vec<(usize, usize)>,
        chosen: &mut Vec<usize>,
        start: usize,
    ) -> Vec<usize> {
        let got: u64 = chosen.iter().map(|&e| self.elements[e].weight).sum();
        if got == value {
            return chosen.clone();
        }
        let (mut net, s, t) = self.network(forced);
        let f = net.max_flow(s, t);
        debug_assert_eq!(f, value);
        // A source side is closed under residual arcs; (u, v) can cross some
        // minimum cut iff the closure of {s, u} avoids both v and t.
        let base = net.residual_reach(s);
        for e in start..self.elements.len() {
            let mut options = Vec::new();
            for &(u, v) in &self.elements[e].orientations {
                if base[v] {
                    continue;
                }
                let reach = net.reach_from(&[u]);
                if !reach[v] && !reach[t] {
                    options.push((u, v));
                }
            }
            if options.is_empty() {
                continue;
            }
            let mut best: Option<Vec<usize>> = None;
            for o in options {
                forced.push(o);
                chosen.push(e);
                let r = self.search(value, forced, chosen, e + 1);
                chosen.pop();
                forced.pop();
                if best.as_ref().map_or(true, |b| r < *b) {
                    best = Some(r);
                }
            }
            return best.expect("at least one orientation");
        }
        unreachable!("minimum cut value {value} not realised by elements");
    }
}

fn big_capacity(g: &WeightedGraph) -> u64 {
    g.total_finite_weight() + 1
}

fn edge_problem(g: &WeightedGraph, sources: &[usize], sinks: &[usize]) -> (CutProblem, Vec<usize>) {
    let mut fixed = Vec::new();
    let mut elements = Vec::new();
    let mut ids = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match g.edge_weight(e) {
            Weight::Inf => fixed.push((u, v, !g.is_directed())),
            Weight::Finite(w) => {
                let orientations = if g.is_directed() {
                    vec![(u, v)]
                } else {
                    vec![(u, v), (v, u)]
                };
                elements.push(Element {
                    weight: w,
                    orientations,
                });
                ids.push(e);
            }
        }
    }
    let p = CutProblem {
        nodes: g.n(),
        fixed_arcs: fixed,
        elements,
        sources: sources.to_vec(),
        sinks: sinks.to_vec(),
        big: big_capacity(g),
    };
    (p, ids)
}

fn node_problem(g: &WeightedGraph, sources: &[usize], sinks: &[usize]) -> (CutProblem, Vec<usize>) {
    // v_in = 2v, v_out = 2v + 1.
    let terminal = mask_of(g.n(), &[sources, sinks].concat());
    let mut fixed = Vec::new();
    let mut elements = Vec::new();
    let mut ids = Vec::new();
    for v in 0..g.n() {
        match (terminal[v], g.node_weight(v)) {
            (false, Weight::Finite(w)) => {
                elements.push(Element {
                    weight: w,
                    orientations: vec![(2 * v, 2 * v + 1)],
                });
                ids.push(v);
            }
            _ => fixed.push((2 * v, 2 * v + 1, false)),
        }
    }
    for &(u, v) in g.edges() {
        fixed.push((2 * u + 1, 2 * v, false));
        if !g.is_directed() {
            fixed.push((2 * v + 1, 2 * u, false));
        }
    }
    let p = CutProblem {
        nodes: 2 * g.n(),
        fixed_arcs: fixed,
        elements,
        sources: sources.iter().map(|&s| 2 * s + 1).collect(),
        sinks: sinks.iter().map(|&t| 2 * t).collect(),
        big: big_capacity(g),
    };
    (p, ids)
}

fn check_terminals(g: &WeightedGraph, sources: &[usize], sinks: &[usize]) -> Result<()> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::InvalidInstance("empty source or sink set".into()));
    }
    let n = g.n();
    if let Some(&v) = sources.iter().chain(sinks).find(|&&v| v >= n) {
        return Err(Error::InvalidInstance(format!("terminal {v} out of range")));
    }
    let src = mask_of(n, sources);
    if let Some(&v) = sinks.iter().find(|&&v| src[v]) {
        return Err(Error::InvalidInstance(format!(
            "node {v} is both source and sink"
        )));
    }
    Ok(())
}

/// Minimum weight edge set whose removal leaves no path from any source to any sink.
///
/// Ties are broken by the lexicographically smallest sorted id list.
pub fn min_st_edge_cut(
    g: &WeightedGraph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<CutSolution> {
    min_st_cut(g, CutKind::Edge, sources, sinks)
}

/// Minimum weight set of non-terminal nodes separating sources from sinks.
///
/// Ties are broken by the lexicographically smallest sorted id list.
pub fn min_st_node_cut(
    g: &WeightedGraph,
    sources: &[usize],
    sinks: &[usize],
) -> Result<CutSolution> {
    min_st_cut(g, CutKind::Node, sources, sinks)
}

/// Dispatches on the cut kind.
pub fn min_st_cut(
    g: &WeightedGraph,
    kind: CutKind,
    sources: &[usize],
    sinks: &[usize],
) -> Result<CutSolution> {
    check_terminals(g, sources, sinks)?;
    let (p, ids) = match kind {
        CutKind::Edge => edge_problem(g, sources, sinks),
        CutKind::Node => node_problem(g, sources, sinks),
    };
    let value = p.min_value()?;
    let members: Vec<usize> = p.lexmin(value).into_iter().map(|i| ids[i]).collect();
    let sol = CutSolution::from_members(g, kind, members, true);
    debug_assert_eq!(sol.weight, value);
    Ok(sol)
}

/// Minimum cut value only; one max-flow computation.
pub fn min_st_cut_value(
    g: &WeightedGraph,
    kind: CutKind,
    sources: &[usize],
    sinks: &[usize],
) -> Result<u64> {
    check_terminals(g, sources, sinks)?;
    let (p, _) = match kind {
        CutKind::Edge => edge_problem(g, sources, sinks),
        CutKind::Node => node_problem(g, sources, sinks),
    };
    p.min_value()
}
