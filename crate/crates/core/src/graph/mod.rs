//! Weighted graphs, max-flow and exact s-t minimum cuts.

mod cut;
pub mod flow;
mod shrink;
mod weight;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cut::{
    min_st_cut, min_st_cut_value, min_st_edge_cut, min_st_node_cut, CutKind, CutSolution,
};
pub use shrink::{shrink_components, ShrinkMap};
pub use weight::Weight;

/// Serialized form of a [`WeightedGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub directed: bool,
    pub node_weights: Vec<Weight>,
    pub edges: Vec<(usize, usize, Weight)>,
}

/// Simple directed or undirected graph with node and edge weights.
///
/// Immutable after construction. Edge ids are positions in the input list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct WeightedGraph {
    directed: bool,
    node_weights: Vec<Weight>,
    edges: Vec<(usize, usize)>,
    edge_weights: Vec<Weight>,
    out_adj: Vec<Vec<(usize, usize)>>,
    in_adj: Vec<Vec<(usize, usize)>>,
}

impl TryFrom<GraphData> for WeightedGraph {
    type Error = Error;

    fn try_from(d: GraphData) -> Result<Self> {
        WeightedGraph::new(d.directed, d.node_weights, d.edges)
    }
}

impl From<WeightedGraph> for GraphData {
    fn from(g: WeightedGraph) -> Self {
        GraphData {
            directed: g.directed,
            edges: g
                .edges
                .iter()
                .zip(&g.edge_weights)
                .map(|(&(u, v), &w)| (u, v, w))
                .collect(),
            node_weights: g.node_weights,
        }
    }
}

impl WeightedGraph {
    /// Validates and builds a graph.
    ///
    /// Rejects self-loops, parallel edges, zero weights and inputs whose
    /// squared total finite weight does not fit in 64 bits.
    pub fn new(
        directed: bool,
        node_weights: Vec<Weight>,
        edges: Vec<(usize, usize, Weight)>,
    ) -> Result<Self> {
        let n = node_weights.len();
        let mut total: u64 = 0;
        for (v, w) in node_weights.iter().enumerate() {
            if let Weight::Finite(x) = w {
                if *x == 0 {
                    return Err(Error::InvalidGraph(format!("node {v} has zero weight")));
                }
                total = total.checked_add(*x).ok_or(Error::WeightOverflow)?;
            }
        }
        let mut seen = HashMap::with_capacity(edges.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut pairs = Vec::with_capacity(edges.len());
        let mut weights = Vec::with_capacity(edges.len());
        for (id, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} ({u},{v}) references a node outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            let key = if directed {
                (u, v)
            } else {
                (u.min(v), u.max(v))
            };
            if seen.insert(key, id).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            if let Weight::Finite(x) = w {
                if x == 0 {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({u},{v}) has zero weight"
                    )));
                }
                total = total.checked_add(x).ok_or(Error::WeightOverflow)?;
            }
            out_adj[u].push((v, id));
            in_adj[v].push((u, id));
            if !directed {
                out_adj[v].push((u, id));
                in_adj[u].push((v, id));
            }
            pairs.push((u, v));
            weights.push(w);
        }
        total.checked_mul(total).ok_or(Error::WeightOverflow)?;
        Ok(WeightedGraph {
            directed,
            node_weights,
            edges: pairs,
            edge_weights: weights,
            out_adj,
            in_adj,
        })
    }

    /// Unit node and edge weights.
    pub fn unit(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            directed,
            vec![Weight::Finite(1); n],
            edges
                .iter()
                .map(|&(u, v)| (u, v, Weight::Finite(1)))
                .collect(),
        )
    }

    /// Unit node weights with the given edge weights.
    pub fn with_edge_weights(
        n: usize,
        directed: bool,
        edges: &[(usize, usize, u64)],
    ) -> Result<Self> {
        Self::new(
            directed,
            vec![Weight::Finite(1); n],
            edges
                .iter()
                .map(|&(u, v, w)| (u, v, Weight::Finite(w)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.node_weights.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_weight(&self, v: usize) -> Weight {
        self.node_weights[v]
    }

    pub fn node_weights(&self) -> &[Weight] {
        &self.node_weights
    }

    pub fn edge_weight(&self, e: usize) -> Weight {
        self.edge_weights[e]
    }

    pub fn edge_weights(&self) -> &[Weight] {
        &self.edge_weights
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbours as `(node, edge id)`; all neighbours when undirected.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.out_adj[v]
    }

    /// In-neighbours as `(node, edge id)`; all neighbours when undirected.
    pub fn in_neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.in_adj[v]
    }

    /// Edge id of `u -> v` (or `{u, v}` when undirected).
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.out_adj[u]
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, e)| e)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    /// Sum of finite node and edge weights.
    pub fn total_finite_weight(&self) -> u64 {
        self.node_weights
            .iter()
            .chain(&self.edge_weights)
            .filter_map(|w| w.finite())
            .sum()
    }

    /// Sum of finite edge weights.
    pub fn total_edge_weight(&self) -> u64 {
        self.edge_weights.iter().filter_map(|w| w.finite()).sum()
    }

    /// Nodes reachable from `from` after deleting masked nodes and edges.
    ///
    /// Follows arc direction in directed graphs. Removed start nodes are skipped.
    pub fn reachable(
        &self,
        from: &[usize],
        removed_nodes: &[bool],
        removed_edges: &[bool],
    ) -> Vec<bool> {
        self.search(from, removed_nodes, removed_edges, false)
    }

    /// Nodes that can reach `to` after deleting masked nodes and edges.
    pub fn reaching(
        &self,
        to: &[usize],
        removed_nodes: &[bool],
        removed_edges: &[bool],
    ) -> Vec<bool> {
        self.search(to, removed_nodes, removed_edges, true)
    }

    fn search(&self, start: &[usize], rn: &[bool], re: &[bool], backward: bool) -> Vec<bool> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in start {
            if !masked(rn, s) && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let adj = if backward {
                &self.in_adj[u]
            } else {
                &self.out_adj[u]
            };
            for &(v, e) in adj {
                if !seen[v] && !masked(rn, v) && !masked(re, e) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Weakly connected components after deleting masked nodes and edges.
    ///
    /// Each component is sorted; components are ordered by smallest member.
    pub fn components(&self, removed_nodes: &[bool], removed_edges: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || masked(removed_nodes, s) {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &(v, e) in self.out_adj[u].iter().chain(&self.in_adj[u]) {
                    if comp[v] == usize::MAX
                        && !masked(removed_nodes, v)
                        && !masked(removed_edges, e)
                    {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True when `set` induces a weakly connected subgraph.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut outside = vec![true; self.n()];
        for &v in set {
            outside[v] = false;
        }
        let comps = self.components(&outside, &[]);
        comps.len() == 1
    }

    /// True when the graph is weakly connected.
    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components(&[], &[]).len() == 1
    }
}

pub(crate) fn masked(mask: &[bool], i: usize) -> bool {
    mask.get(i).copied().unwrap_or(false)
}

/// Boolean mask of length `n` with `members` set.
pub fn mask_of(n: usize, members: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in members {
        m[i] = true;
    }
    m
}
