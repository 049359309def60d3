//! Minimum bisection encoded as a threshold edge cut.

use crate::error::{Error, Result};
use crate::graph::{CutKind, Weight, WeightedGraph};
use crate::tmc::TmcInstance;

/// Adds a client joined to every node by an edge of cost `n²`; every node is a
/// service and half of them must be cut off.
pub fn reduce_bisection_to_tmec(g: &WeightedGraph) -> Result<TmcInstance> {
    if g.is_directed() {
        return Err(Error::InvalidInstance(
            "bisection reduction needs an undirected graph".into(),
        ));
    }
    if g.edge_weights().iter().any(|&w| w != Weight::Finite(1)) {
        return Err(Error::InvalidInstance(
            "bisection reduction needs unit edge costs".into(),
        ));
    }
    let n = g.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if n == 0 {
        return Err(Error::InvalidInstance("empty graph".into()));
    }
    let big = Weight::Finite((n * n) as u64);
    let mut edges: Vec<(usize, usize, Weight)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u, v, Weight::Finite(1)))
        .collect();
    edges.extend((0..n).map(|v| (n, v, big)));
    let mut weights = g.node_weights().to_vec();
    weights.push(Weight::Finite(1));
    let h = WeightedGraph::new(false, weights, edges)?;
    TmcInstance::new(h, (0..n).collect(), n, n / 2, CutKind::Edge)
}

/// `n³/2`, the client-edge part of every optimal threshold cut.
pub fn tmec_offset(n: usize) -> u64 {
    (n * n * n / 2) as u64
}

/// Balanced side assignment read off a threshold cut: the first `n/2` cut-off nodes.
pub fn partition_from_cut(inst: &TmcInstance, members: &[usize]) -> Vec<bool> {
    let g = &inst.graph;
    let n = inst.k();
    let reach = g.reachable(&[inst.client], &[], &crate::graph::mask_of(g.m(), members));
    let mut side = vec![false; n];
    for v in (0..n).filter(|&v| !reach[v]).take(n / 2) {
        side[v] = true;
    }
    side
}

/// Cut for a balanced partition: client edges into the `true` side plus crossing edges.
pub fn cut_from_partition(inst: &TmcInstance, side: &[bool]) -> Vec<usize> {
    let g = &inst.graph;
    let n = inst.k();
    (0..g.m())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            if u == n || v == n {
                side[u.min(v)]
            } else {
                side[u] != side[v]
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmc::solve_tmc_exact;

    #[test]
    fn two_triangles() {
        let g = WeightedGraph::unit(
            6,
            false,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        let inst = reduce_bisection_to_tmec(&g).unwrap();
        assert_eq!(solve_tmc_exact(&inst).unwrap().weight, 1 + 108);
    }

    #[test]
    fn k4_and_edgeless() {
        let k4 = WeightedGraph::unit(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(
            solve_tmc_exact(&reduce_bisection_to_tmec(&k4).unwrap())
                .unwrap()
                .weight,
            36
        );
        let empty = WeightedGraph::unit(4, false, &[]).unwrap();
        assert_eq!(
            solve_tmc_exact(&reduce_bisection_to_tmec(&empty).unwrap())
                .unwrap()
                .weight,
            32
        );
    }

    #[test]
    fn odd_order_rejected() {
        let g = WeightedGraph::unit(3, false, &[(0, 1)]).unwrap();
        assert_eq!(
            reduce_bisection_to_tmec(&g).unwrap_err(),
            Error::OddOrder(3)
        );
    }

    #[test]
    fn partition_round_trip() {
        let g = WeightedGraph::unit(4, false, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let inst = reduce_bisection_to_tmec(&g).unwrap();
        let side = vec![true, true, false, false];
        let cut = cut_from_partition(&inst, &side);
        assert!(inst.is_feasible(&cut));
        assert_eq!(partition_from_cut(&inst, &cut), side);
    }
}
