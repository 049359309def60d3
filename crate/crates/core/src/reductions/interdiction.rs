//! Network interdiction instances and the max-cover encoding.

use serde::{Deserialize, Serialize};

use super::cover::{CoverInstance, CoverObjective};
use crate::error::{Error, Result};
use crate::graph::flow::FlowNetwork;
use crate::graph::{mask_of, Weight, WeightedGraph};

/// Directed network whose edge weights are capacities, plus a blocking cost per arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterdictionInstance {
    pub graph: WeightedGraph,
    pub source: usize,
    pub sink: usize,
    pub cost: Vec<Weight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl InterdictionInstance {
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        if !g.is_directed() {
            return Err(Error::InvalidInstance(
                "interdiction needs a directed graph".into(),
            ));
        }
        if self.cost.len() != g.m() {
            return Err(Error::InvalidInstance(
                "one blocking cost per arc required".into(),
            ));
        }
        if self.source >= g.n() || self.sink >= g.n() || self.source == self.sink {
            return Err(Error::InvalidInstance(
                "source and sink must be distinct nodes".into(),
            ));
        }
        Ok(())
    }

    /// Max flow after deleting the blocked arcs; `Inf` when an uncapacitated path survives.
    pub fn max_flow(&self, blocked: &[usize]) -> Weight {
        let g = &self.graph;
        let removed = mask_of(g.m(), blocked);
        let big = g.total_edge_weight() + 1;
        let mut f = FlowNetwork::new(g.n());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !removed[e] {
                f.add_arc(u, v, g.edge_weight(e).finite().unwrap_or(big));
            }
        }
        let flow = f.max_flow(self.source, self.sink);
        if flow >= big {
            Weight::Inf
        } else {
            Weight::Finite(flow)
        }
    }

    /// Total blocking cost, `Inf` if an unblockable arc is included.
    pub fn blocking_cost(&self, blocked: &[usize]) -> Weight {
        let mut total = 0u64;
        for &e in blocked {
            match self.cost.get(e).copied() {
                Some(Weight::Finite(c)) => total += c,
                _ => return Weight::Inf,
            }
        }
        Weight::Finite(total)
    }
}

/// Arc ids of the interdiction gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterdictionGadget {
    /// Blockable arc of each ground element.
    pub element_arcs: Vec<usize>,
}

/// Source `U` feeds one blockable arc per element; each element reaches the
/// subsets containing it, and each subset drains into `T` with capacity 1.
///
/// Node 0 is `U`, node 1 is `T`, then element start/end pairs, then subsets.
pub fn reduce_maxcover_to_interdiction(
    c: &CoverInstance,
) -> Result<(InterdictionInstance, InterdictionGadget)> {
    c.validate()?;
    let CoverObjective::Max { n1 } = c.objective else {
        return Err(Error::InvalidInstance(
            "interdiction encodes max-cover instances".into(),
        ));
    };
    // An empty subset is covered by every choice but carries no flow.
    if let Some(j) = c.subsets.iter().position(Vec::is_empty) {
        return Err(Error::InvalidInstance(format!("subset {j} is empty")));
    }
    let elem_start = |a: usize| 2 + 2 * a;
    let subset_node = |j: usize| 2 + 2 * c.ground + j;
    let n = 2 + 2 * c.ground + c.subsets.len();
    let mut edges = Vec::new();
    let mut cost = Vec::new();
    let mut element_arcs = Vec::with_capacity(c.ground);
    for a in 0..c.ground {
        let s = elem_start(a);
        edges.push((0, s, Weight::Inf));
        cost.push(Weight::Inf);
        element_arcs.push(edges.len());
        edges.push((s, s + 1, Weight::Inf));
        cost.push(Weight::Finite(1));
    }
    for (j, sub) in c.subsets.iter().enumerate() {
        for &a in sub {
            edges.push((elem_start(a) + 1, subset_node(j), Weight::Inf));
            cost.push(Weight::Inf);
        }
        edges.push((subset_node(j), 1, Weight::Finite(1)));
        cost.push(Weight::Inf);
    }
    let graph = WeightedGraph::new(true, vec![Weight::Finite(1); n], edges)?;
    let inst = InterdictionInstance {
        graph,
        source: 0,
        sink: 1,
        cost,
        budget: Some(n1 as u64),
    };
    Ok((inst, InterdictionGadget { element_arcs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_elements_two_subsets() {
        let c = CoverInstance::new(
            3,
            vec![vec![0, 1], vec![1, 2]],
            CoverObjective::Max { n1: 2 },
        )
        .unwrap();
        let (inst, gad) = reduce_maxcover_to_interdiction(&c).unwrap();
        inst.validate().unwrap();
        assert_eq!(inst.max_flow(&[]), Weight::Finite(2));
        assert_eq!(
            inst.max_flow(&[gad.element_arcs[0], gad.element_arcs[1]]),
            Weight::Finite(1)
        );
        assert_eq!(inst.max_flow(&gad.element_arcs), Weight::Finite(0));
        assert_eq!(inst.blocking_cost(&gad.element_arcs), Weight::Finite(3));
        assert_eq!(inst.blocking_cost(&[0]), Weight::Inf);
    }

    #[test]
    fn empty_subset_rejected() {
        let c =
            CoverInstance::new(2, vec![vec![0], vec![]], CoverObjective::Max { n1: 1 }).unwrap();
        assert!(matches!(
            reduce_maxcover_to_interdiction(&c),
            Err(Error::InvalidInstance(_))
        ));
    }
}
