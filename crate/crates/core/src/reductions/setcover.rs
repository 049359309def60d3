//! Set cover encoded as connectivity preserving edge cuts.

use serde::{Deserialize, Serialize};

use super::cover::SetCoverInstance;
use crate::cpmc::CpmcInstance;
use crate::error::Result;
use crate::graph::{CutKind, Weight, WeightedGraph};

/// One (element, set) incidence and the cuttable edges of its gadget node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub element: usize,
    pub set: usize,
    /// Edges that must all be cut when the set is not chosen.
    pub edges: Vec<usize>,
}

/// Edge ids of a set cover gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverGadget {
    /// Set edge of each set.
    pub set_edges: Vec<usize>,
    pub incidences: Vec<Incidence>,
    /// `n1·k`, the multiplier on set weights.
    pub scale: u64,
}

impl SetCoverGadget {
    /// Cut induced by choosing `sets`.
    pub fn forward(&self, sets: &[usize]) -> Vec<usize> {
        let mut chosen = vec![false; self.set_edges.len()];
        for &i in sets {
            if i < chosen.len() {
                chosen[i] = true;
            }
        }
        let mut cut: Vec<usize> = sets
            .iter()
            .filter(|&&i| i < chosen.len())
            .map(|&i| self.set_edges[i])
            .collect();
        for inc in &self.incidences {
            if !chosen[inc.set] {
                cut.extend(&inc.edges);
            }
        }
        cut.sort_unstable();
        cut.dedup();
        cut
    }

    /// Sets whose set edge lies in the cut.
    pub fn backward(&self, cut: &[usize]) -> Vec<usize> {
        (0..self.set_edges.len())
            .filter(|&i| cut.contains(&self.set_edges[i]))
            .collect()
    }

    /// Incidences of sets outside `sets`, each counted once per gadget edge.
    pub fn penalty(&self, sets: &[usize]) -> u64 {
        self.incidences
            .iter()
            .filter(|inc| !sets.contains(&inc.set))
            .map(|inc| inc.edges.len() as u64)
            .sum()
    }
}

struct Builder {
    weights: Vec<Weight>,
    edges: Vec<(usize, usize, Weight)>,
}

impl Builder {
    fn node(&mut self) -> usize {
        self.weights.push(Weight::Finite(1));
        self.weights.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, w: Weight) -> usize {
        self.edges.push((u, v, w));
        self.edges.len() - 1
    }
}

/// Directed gadget: a chain of element gadgets from `s1` to `s2` and one set arc per set.
///
/// Element `e` has end nodes `L_e`, `R_e` and one node `x` per set containing
/// it, with unit arcs `L_e → x → R_e`. The set arc `a_i → b_i` weighs
/// `w_i·n1·k`; `t → a_i`, `b_i → x` and the chain arcs are uncuttable. Node 0
/// is `s1`, node 1 is `s2`, node 2 is `t`.
pub fn reduce_setcover_to_directed_cpmec(
    sc: &SetCoverInstance,
) -> Result<(CpmcInstance, SetCoverGadget)> {
    sc.validate()?;
    let (n1, k) = (sc.elements, sc.k());
    let scale = (n1 * k) as u64;
    let mut b = Builder {
        weights: Vec::new(),
        edges: Vec::new(),
    };
    let (s1, s2, t) = (b.node(), b.node(), b.node());
    let containing = sc.containing();
    let mut x_of = vec![Vec::new(); k];
    let mut incidences = Vec::new();
    let mut prev = s1;
    for (e, sets) in containing.iter().enumerate() {
        let (l, r) = (b.node(), b.node());
        b.edge(prev, l, Weight::Inf);
        for &i in sets {
            let x = b.node();
            b.edge(l, x, Weight::Finite(1));
            let out = b.edge(x, r, Weight::Finite(1));
            x_of[i].push(x);
            incidences.push(Incidence {
                element: e,
                set: i,
                edges: vec![out],
            });
        }
        prev = r;
    }
    b.edge(prev, s2, Weight::Inf);
    let mut set_edges = Vec::with_capacity(k);
    for i in 0..k {
        let (a, bb) = (b.node(), b.node());
        set_edges.push(b.edge(a, bb, Weight::Finite(sc.weights[i] * scale)));
        b.edge(t, a, Weight::Inf);
        for &x in &x_of[i] {
            b.edge(bb, x, Weight::Inf);
        }
    }
    let g = WeightedGraph::new(true, b.weights, b.edges)?;
    let mut inst = CpmcInstance::new(g, s1, vec![s2], vec![t], CutKind::Edge)?;
    if let Some(d1) = sc.budget {
        inst = inst.with_budget(scale * d1 + scale - 1);
    }
    incidences.sort_by_key(|inc| (inc.set, inc.element));
    Ok((
        inst,
        SetCoverGadget {
            set_edges,
            incidences,
            scale,
        },
    ))
}

/// Undirected gadget with one partner per element.
///
/// A hub `s1` is tied to every `L_e`; the partners are the `R_e`. Each
/// incidence node `x` hangs between `L_e` and `R_e` by two unit edges
/// and is tied to the set edge `a_i - b_i` of weight `w_i·n1·k`, whose other
/// end is tied to `t`. An unchosen set forces both unit edges of each of its
/// incidence nodes into the cut. Node 0 is `s1`, node 1 is `t`.
pub fn reduce_setcover_to_multipartner_cpmec(
    sc: &SetCoverInstance,
) -> Result<(CpmcInstance, SetCoverGadget)> {
    sc.validate()?;
    let (n1, k) = (sc.elements, sc.k());
    let scale = (n1 * k) as u64;
    let mut b = Builder {
        weights: Vec::new(),
        edges: Vec::new(),
    };
    let (s1, t) = (b.node(), b.node());
    let containing = sc.containing();
    let mut x_of = vec![Vec::new(); k];
    let mut incidences = Vec::new();
    let mut partners = Vec::with_capacity(n1);
    for (e, sets) in containing.iter().enumerate() {
        let (l, r) = (b.node(), b.node());
        b.edge(s1, l, Weight::Inf);
        partners.push(r);
        for &i in sets {
            let x = b.node();
            let left = b.edge(l, x, Weight::Finite(1));
            let right = b.edge(x, r, Weight::Finite(1));
            x_of[i].push(x);
            incidences.push(Incidence {
                element: e,
                set: i,
                edges: vec![left, right],
            });
        }
    }
    let mut set_edges = Vec::with_capacity(k);
    for i in 0..k {
        let (a, bb) = (b.node(), b.node());
        set_edges.push(b.edge(a, bb, Weight::Finite(sc.weights[i] * scale)));
        b.edge(t, a, Weight::Inf);
        for &x in &x_of[i] {
            b.edge(bb, x, Weight::Inf);
        }
    }
    let g = WeightedGraph::new(false, b.weights, b.edges)?;
    let mut inst = CpmcInstance::new(g, s1, partners, vec![t], CutKind::Edge)?;
    if let Some(d1) = sc.budget {
        inst = inst.with_budget(scale * d1 + scale - 1);
    }
    incidences.sort_by_key(|inc| (inc.set, inc.element));
    Ok((
        inst,
        SetCoverGadget {
            set_edges,
            incidences,
            scale,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpmc::solve_cpmc_exact;
    use crate::reductions::cover::min_set_cover;

    fn triangle_cover() -> SetCoverInstance {
        SetCoverInstance::new(3, vec![vec![0, 2], vec![1, 2], vec![0, 1]], vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn directed_triangle_shape_and_value() {
        let sc = triangle_cover();
        let (inst, gad) = reduce_setcover_to_directed_cpmec(&sc).unwrap();
        // s1, s2, t + three gadgets of 4 nodes + 3 set arcs of 2 nodes.
        assert_eq!(inst.graph.n(), 3 + 12 + 6);
        assert!(gad
            .set_edges
            .iter()
            .all(|&e| inst.graph.edge_weight(e) == Weight::Finite(9)));
        let (d, _) = min_set_cover(&sc).unwrap();
        assert_eq!(d, 2);
        let sol = solve_cpmc_exact(&inst).unwrap();
        let cut = sol.cut().unwrap();
        let g = cut.weight - 9 * d;
        assert!(cut.weight >= 9 * d && g > 0 && g < 9);
        let back = gad.backward(&cut.members);
        assert!(sc.is_cover(&back));
        assert_eq!(sc.weight(&back), d);
    }

    #[test]
    fn forward_cut_is_valid() {
        let sc = triangle_cover();
        let (inst, gad) = reduce_setcover_to_directed_cpmec(&sc).unwrap();
        let cut = gad.forward(&[0, 1]);
        assert!(inst.is_valid_cut(&cut));
        assert!(!inst.is_valid_cut(&gad.forward(&[0])));
        let (inst, gad) = reduce_setcover_to_multipartner_cpmec(&sc).unwrap();
        assert!(inst.is_valid_cut(&gad.forward(&[1, 2])));
        assert!(!inst.is_valid_cut(&gad.forward(&[2])));
    }

    #[test]
    fn single_element_single_set() {
        let sc = SetCoverInstance::new(1, vec![vec![0]], vec![3]).unwrap();
        let (inst, gad) = reduce_setcover_to_multipartner_cpmec(&sc).unwrap();
        let sol = solve_cpmc_exact(&inst).unwrap();
        assert_eq!(sol.cut().unwrap().members, vec![gad.set_edges[0]]);
        assert_eq!(gad.backward(&sol.cut().unwrap().members), vec![0]);
    }

    #[test]
    fn budget_carried() {
        let sc = triangle_cover().with_budget(2);
        let (inst, _) = reduce_setcover_to_directed_cpmec(&sc).unwrap();
        assert_eq!(inst.budget, Some(9 * 2 + 8));
        assert!(crate::cpmc::decide(&inst).unwrap());
    }
}
