//! Network diversion and two-node constrained shortest paths as 2-vs-2 instances.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::embedding::{build_embedding, PlanarEmbedding};
use super::twovtwo::ThreeNodeSolver;
use crate::cpmc::CpmcInstance;
use crate::error::{Error, Result};
use crate::graph::{mask_of, CutKind, Weight, WeightedGraph};

/// A 2-vs-2 instance built from a diversion query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiversionReduction {
    /// Source `s`, partner `u`, destinations `t` and `v`, on the graph without the diversion edge.
    pub instance: CpmcInstance,
    /// Original id of each edge of the reduced graph.
    pub edge_map: Vec<usize>,
    pub diversion_edge: usize,
}

/// Builds the instance pairing `s` with `u` and `t` with `v`.
///
/// The diversion edge is deleted: a cut of the remaining graph that keeps
/// `s ~ u` and `v ~ t` but separates the pairs leaves every `s`-`t` path
/// running through `u`-`v`.
pub fn reduce_network_diversion(
    g: &WeightedGraph,
    s: usize,
    t: usize,
    edge: (usize, usize),
) -> Result<DiversionReduction> {
    if g.is_directed() {
        return Err(Error::InvalidGraph(
            "network diversion needs an undirected graph".into(),
        ));
    }
    let (u, v) = edge;
    let Some(e) = g.find_edge(u, v) else {
        return Err(Error::InvalidInstance(format!("no edge {u}-{v}")));
    };
    if [u, v].contains(&s) || [u, v].contains(&t) || s == t {
        return Err(Error::InvalidInstance(
            "diversion edge must avoid s and t, and s != t".into(),
        ));
    }
    build_embedding(g)?;
    let mut edges = Vec::with_capacity(g.m() - 1);
    let mut edge_map = Vec::with_capacity(g.m() - 1);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if i != e {
            edges.push((a, b, g.edge_weight(i)));
            edge_map.push(i);
        }
    }
    let reduced = WeightedGraph::new(false, g.node_weights().to_vec(), edges)?;
    let instance = CpmcInstance::new(reduced, s, vec![u], vec![t, v], CutKind::Edge)?
        .preserving_destinations();
    Ok(DiversionReduction {
        instance,
        edge_map,
        diversion_edge: e,
    })
}

/// A diversion cut in original edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiversionCut {
    pub members: Vec<usize>,
    pub weight: u64,
    /// Endpoint of the diversion edge kept on the side of `s`.
    pub near_s: usize,
}

/// Cheapest cut after which `s` still reaches `t` and every `s`-`t` path uses the diversion edge.
pub fn solve_network_diversion(
    g: &WeightedGraph,
    s: usize,
    t: usize,
    edge: (usize, usize),
    backend: &dyn ThreeNodeSolver,
) -> Result<DiversionCut> {
    let mut best: Option<DiversionCut> = None;
    for (a, b) in [edge, (edge.1, edge.0)] {
        let red = reduce_network_diversion(g, s, t, (a, b))?;
        let out = backend.solve(&red.instance)?;
        let Some(cut) = out.cut() else { continue };
        let mut members: Vec<usize> = cut.members.iter().map(|&i| red.edge_map[i]).collect();
        members.sort_unstable();
        let cand = DiversionCut {
            members,
            weight: cut.weight,
            near_s: a,
        };
        if best.as_ref().map_or(true, |b| {
            (cand.weight, &cand.members) < (b.weight, &b.members)
        }) {
            best = Some(cand);
        }
    }
    let best = best.ok_or(Error::Infeasible)?;
    let e = g
        .find_edge(edge.0, edge.1)
        .expect("checked by the reduction");
    if !diversion_holds(g, s, t, e, &best.members) {
        return Err(Error::Other("diversion audit failed".into()));
    }
    Ok(best)
}

/// After removing `cut`, `s` reaches `t` and loses `t` once edge `e` is also removed.
pub fn diversion_holds(g: &WeightedGraph, s: usize, t: usize, e: usize, cut: &[usize]) -> bool {
    let mut removed = mask_of(g.m(), cut);
    if removed[e] || !g.reachable(&[s], &[], &removed)[t] {
        return false;
    }
    removed[e] = true;
    !g.reachable(&[s], &[], &removed)[t]
}

/// A node-mode 2-vs-2 instance built from a two-node LCSP query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcspReduction {
    /// Source `s1`, partner `above`, destinations `s1p` and `below`.
    pub instance: CpmcInstance,
    pub s1: usize,
    pub s1p: usize,
    /// Outer boundary nodes strictly between `p` and `q`, following the outer face walk.
    pub top_arc: Vec<usize>,
    /// The remaining outer boundary nodes, from `q` back to `p`.
    pub bottom_arc: Vec<usize>,
    /// Uncuttable hub nodes placed inside inner faces.
    pub hubs: Vec<usize>,
}

/// Node-weighted shortest `p`-`q` path with `above` on one side and `below` on the other.
///
/// The top side is the outer boundary walked from `p` to `q`. Dummy `s1`
/// joins `p`, `q` and the top arc; dummy `s1p` joins `p`, `q` and the bottom
/// arc. Every inner face with four or more nodes receives an uncuttable hub
/// joined to its boundary, so a separator cannot jump across a face and the
/// minimal separators are exactly the `p`-`q` paths.
pub fn reduce_two_node_lcsp(
    emb: &PlanarEmbedding,
    p: usize,
    q: usize,
    above: usize,
    below: usize,
) -> Result<LcspReduction> {
    let g = &emb.graph;
    let n = g.n();
    if [p, q, above, below].iter().any(|&x| x >= n) {
        return Err(Error::InvalidInstance("node out of range".into()));
    }
    if p == q || above == below || [p, q].contains(&above) || [p, q].contains(&below) {
        return Err(Error::InvalidInstance(
            "p, q, above and below must be distinct".into(),
        ));
    }
    let outer = emb.face_nodes(emb.outer_face);
    let (Some(i), Some(j)) = (
        outer.iter().position(|&x| x == p),
        outer.iter().position(|&x| x == q),
    ) else {
        return Err(Error::InvalidInstance(
            "p and q must lie on the outer face".into(),
        ));
    };
    let len = outer.len();
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = (from + 1) % len;
        while k != to {
            if !out.contains(&outer[k]) && outer[k] != p && outer[k] != q {
                out.push(outer[k]);
            }
            k = (k + 1) % len;
        }
        out
    };
    let top_arc = arc(i, j);
    let bottom_arc = arc(j, i);

    let s1 = n;
    let s1p = n + 1;
    let mut weights = g.node_weights().to_vec();
    weights.push(Weight::Finite(1));
    weights.push(Weight::Finite(1));
    let mut edges: Vec<(usize, usize, Weight)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (a, b, Weight::Finite(1)))
        .collect();
    for &x in top_arc.iter().chain([p, q].iter()) {
        edges.push((s1, x, Weight::Finite(1)));
    }
    for &x in bottom_arc.iter().chain([p, q].iter()) {
        edges.push((s1p, x, Weight::Finite(1)));
    }
    let mut hubs = Vec::new();
    for f in 0..emb.faces.len() {
        if f == emb.outer_face {
            continue;
        }
        let mut nodes = emb.face_nodes(f);
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.len() < 4 {
            continue;
        }
        let h = weights.len();
        weights.push(Weight::Inf);
        hubs.push(h);
        for x in nodes {
            edges.push((h, x, Weight::Finite(1)));
        }
    }
    let graph = WeightedGraph::new(false, weights, edges)?;
    let instance = CpmcInstance::new(graph, s1, vec![above], vec![s1p, below], CutKind::Node)?
        .preserving_destinations();
    Ok(LcspReduction {
        instance,
        s1,
        s1p,
        top_arc,
        bottom_arc,
        hubs,
    })
}

/// A constrained path and its node weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcspPath {
    pub nodes: Vec<usize>,
    pub weight: u64,
}

pub fn solve_two_node_lcsp(
    emb: &PlanarEmbedding,
    p: usize,
    q: usize,
    above: usize,
    below: usize,
    backend: &dyn ThreeNodeSolver,
) -> Result<LcspPath> {
    let red = reduce_two_node_lcsp(emb, p, q, above, below)?;
    let out = backend.solve(&red.instance)?;
    let cut = out.cut().ok_or(Error::Infeasible)?;
    let g = &emb.graph;
    let inside = mask_of(g.n(), &cut.members);
    let path = bfs_path(g, p, q, &inside)
        .ok_or_else(|| Error::Other("minimum separator holds no p-q path".into()))?;
    if !red.instance.is_valid_cut(&path) {
        return Err(Error::Other(
            "recovered path does not separate the sides".into(),
        ));
    }
    let weight = path
        .iter()
        .map(|&x| g.node_weight(x).finite().expect("cut nodes are finite"))
        .sum();
    Ok(LcspPath {
        nodes: path,
        weight,
    })
}

fn bfs_path(g: &WeightedGraph, p: usize, q: usize, allowed: &[bool]) -> Option<Vec<usize>> {
    if !allowed[p] || !allowed[q] {
        return None;
    }
    let mut parent = vec![usize::MAX; g.n()];
    parent[p] = p;
    let mut queue = VecDeque::from([p]);
    while let Some(x) = queue.pop_front() {
        if x == q {
            let mut path = vec![q];
            let mut y = q;
            while y != p {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &(y, _) in g.neighbors(x) {
            if allowed[y] && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}
