//! Weight perturbation and principal cut components.

use serde::{Deserialize, Serialize};

use super::embedding::PlanarEmbedding;
use crate::error::{Error, Result};
use crate::graph::flow::FlowNetwork;
use crate::graph::{mask_of, CutKind, Weight, WeightedGraph};

/// Largest perturbed total the flow arithmetic accepts.
pub const PERTURB_BOUND: u64 = 1 << 62;

/// Base weights scaled by `2^m` plus a distinct power of two per element.
///
/// The powers `2^0 .. 2^(m-1)` sum to less than the scale, so a strict order
/// of base sums survives and equal base sums are told apart by their bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedWeights {
    pub mode: CutKind,
    pub base: Vec<Weight>,
    pub scale: u64,
    pub epsilon: Vec<u64>,
}

impl PerturbedWeights {
    /// Perturbed weight of one element, `None` if uncuttable.
    pub fn total(&self, i: usize) -> Option<u64> {
        self.base[i]
            .finite()
            .map(|b| b * self.scale + self.epsilon[i])
    }

    /// Perturbed weight of a set of elements, `None` if any is uncuttable.
    pub fn total_of(&self, members: &[usize]) -> Option<u64> {
        members
            .iter()
            .try_fold(0u64, |acc, &i| Some(acc + self.total(i)?))
    }

    /// Sum of all finite perturbed weights.
    pub fn finite_total(&self) -> u64 {
        (0..self.base.len()).filter_map(|i| self.total(i)).sum()
    }
}

pub fn perturb(g: &WeightedGraph, mode: CutKind) -> Result<PerturbedWeights> {
    let base: Vec<Weight> = match mode {
        CutKind::Edge => g.edge_weights().to_vec(),
        CutKind::Node => g.node_weights().to_vec(),
    };
    let m = base.len();
    if m >= 62 {
        return Err(Error::ArithmeticBoundExceeded);
    }
    let scale = 1u64 << m;
    let base_sum: u64 = base.iter().filter_map(|w| w.finite()).sum();
    // Every perturbed total stays below (base_sum + 1) * scale.
    match (base_sum + 1).checked_mul(scale) {
        Some(x) if x <= PERTURB_BOUND => {}
        _ => return Err(Error::ArithmeticBoundExceeded),
    }
    let epsilon = (0..m).map(|i| 1u64 << i).collect();
    Ok(PerturbedWeights {
        mode,
        base,
        scale,
        epsilon,
    })
}

/// The minimum perturbed cut between two nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbedCut {
    /// Edge ids or node ids, sorted.
    pub members: Vec<usize>,
    pub total: u64,
    /// Nodes on the `v` side of the cut (excluding cut nodes).
    pub side: Vec<usize>,
    /// The closest and farthest minimum cuts from `v` have the same members.
    pub unique: bool,
}

/// Minimum cut between `v` and `t` under perturbed weights.
pub fn perturbed_min_cut(
    g: &WeightedGraph,
    pw: &PerturbedWeights,
    v: usize,
    t: usize,
) -> Result<PerturbedCut> {
    let n = g.n();
    if v >= n || t >= n || v == t {
        return Err(Error::InvalidInstance(
            "v and t must be distinct nodes".into(),
        ));
    }
    let big = pw.finite_total() + 1;
    let cap = |i: usize| pw.total(i).unwrap_or(big);
    match pw.mode {
        CutKind::Edge => {
            let mut f = FlowNetwork::new(n);
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                if g.is_directed() {
                    f.add_arc(a, b, cap(e));
                } else {
                    f.add_edge(a, b, cap(e));
                }
            }
            let total = f.max_flow(v, t);
            if total >= big {
                return Err(Error::NoFiniteCut);
            }
            let near = f.residual_reach(v);
            let far = f.residual_coreach(t);
            let members: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| near[a] != near[b])
                .map(|(e, _)| e)
                .collect();
            let farthest: Vec<usize> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| far[a] != far[b])
                .map(|(e, _)| e)
                .collect();
            let unique = members == farthest;
            let side = (0..n).filter(|&x| near[x]).collect();
            Ok(PerturbedCut {
                members,
                total,
                side,
                unique,
            })
        }
        CutKind::Node => {
            // Node x splits into x_in = x and x_out = x + n.
            let mut f = FlowNetwork::new(2 * n);
            for x in 0..n {
                let c = if x == v || x == t { big } else { cap(x) };
                f.add_arc(x, x + n, c);
            }
            for &(a, b) in g.edges() {
                f.add_arc(a + n, b, big);
                if !g.is_directed() {
                    f.add_arc(b + n, a, big);
                }
            }
            let total = f.max_flow(v + n, t);
            if total >= big {
                return Err(Error::NoFiniteCut);
            }
            let near = f.residual_reach(v + n);
            let far = f.residual_coreach(t);
            let members: Vec<usize> = (0..n).filter(|&x| near[x] && !near[x + n]).collect();
            let farthest: Vec<usize> = (0..n).filter(|&x| !far[x] && far[x + n]).collect();
            let unique = members == farthest;
            let side = (0..n).filter(|&x| near[x] && near[x + n]).collect();
            Ok(PerturbedCut {
                members,
                total,
                side,
                unique,
            })
        }
    }
}

/// Component of `v` after removing the unique minimum perturbed cut to `t`.
pub fn principal_cut_component(
    g: &WeightedGraph,
    pw: &PerturbedWeights,
    v: usize,
    t: usize,
) -> Result<Vec<usize>> {
    let cut = perturbed_min_cut(g, pw, v, t)?;
    let (rn, re) = match pw.mode {
        CutKind::Edge => (Vec::new(), mask_of(g.m(), &cut.members)),
        CutKind::Node => (mask_of(g.n(), &cut.members), Vec::new()),
    };
    let reach = g.reachable(&[v], &rn, &re);
    Ok((0..g.n()).filter(|&x| reach[x]).collect())
}

/// Faces enclosed by two components.
///
/// Nodes outside `a ∪ b` and the faces they lie on form the free part of the
/// plane; a face or node there is enclosed when its free region does not
/// reach `t`. Faces bounded entirely by `a ∪ b` count as covered. An empty
/// result means the union encloses no hole.
pub fn enclosed_faces(emb: &PlanarEmbedding, a: &[usize], b: &[usize], t: usize) -> Vec<usize> {
    let g = &emb.graph;
    let n = g.n();
    let mut removed = mask_of(n, a);
    for &x in b {
        removed[x] = true;
    }
    // Union-find over nodes 0..n and faces n..n+F.
    let mut parent: Vec<usize> = (0..n + emb.faces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        if !removed[u] && !removed[v] {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
    }
    for (f, darts) in emb.faces.iter().enumerate() {
        for &(u, _) in darts {
            if !removed[u] {
                let (ru, rf) = (find(&mut parent, u), find(&mut parent, n + f));
                parent[ru] = rf;
            }
        }
    }
    let t_root = (!removed[t]).then(|| find(&mut parent, t));
    (0..emb.faces.len())
        .filter(|&f| {
            let free = emb.faces[f].iter().any(|&(u, _)| !removed[u]);
            free && Some(find(&mut parent, n + f)) != t_root
        })
        .collect()
}
