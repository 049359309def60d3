mod common;

use common::*;
use cutkit::tmc::{
    build_bisection_gadget, j_range, min_bisection, solve_tmc_exact, solve_tmnc_lp, tmnc_lp_bound,
    BisectionBackend, GadgetScales, TmcInstance, LP_TOLERANCE,
};
use cutkit::{CutKind, Weight, WeightedGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random threshold instance without client-service edges.
fn instance(seed: u64, n: usize, k: usize, l: usize, mode: CutKind) -> TmcInstance {
    let mut r = rng(seed);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(&mut r);
    let (client, services) = (nodes[0], nodes[1..=k].to_vec());
    let base = random_graph(&mut r, n, false, 0.35, 6, true);
    let edges: Vec<(usize, usize, Weight)> = (0..base.m())
        .filter(|&e| {
            let (u, v) = base.endpoints(e);
            !(u == client && services.contains(&v) || v == client && services.contains(&u))
        })
        .map(|e| {
            (
                base.endpoints(e).0,
                base.endpoints(e).1,
                base.edge_weight(e),
            )
        })
        .collect();
    let g = WeightedGraph::new(false, base.node_weights().to_vec(), edges).unwrap();
    TmcInstance::new(g, services, client, l, mode).unwrap()
}

/// Client joined to `k` parallel chains of equal weight, each ending in a service:
/// every LP variable on the chains ties.
fn tied_chains(k: usize, len: usize, l: usize) -> TmcInstance {
    let mut edges = Vec::new();
    let mut next = 1;
    let mut services = Vec::new();
    for _ in 0..k {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        services.push(next);
        edges.push((prev, next));
        next += 1;
    }
    let g = WeightedGraph::unit(next, false, &edges).unwrap();
    TmcInstance::new(g, services, 0, l, CutKind::Node).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn exact_matches_enumeration(seed: u64, n in 5usize..=9, k in 1usize..=4, node_mode: bool) {
        prop_assume!(k < n);
        let l = 1 + (seed as usize) % k;
        let mode = if node_mode { CutKind::Node } else { CutKind::Edge };
        let inst = instance(seed, n, k, l, mode);
        prop_assume!(node_mode || inst.graph.m() <= 18);
        let want = brute_tmc(&inst.graph, mode, inst.client, &inst.services, l);
        let got = solve_tmc_exact(&inst).ok().map(|c| c.weight);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn rounding_is_feasible_and_within_ratio(seed: u64, n in 6usize..=20, k in 1usize..=5) {
        prop_assume!(k < n);
        let l = 1 + (seed as usize) % k;
        let inst = instance(seed, n, k, l, CutKind::Node);
        let opt = solve_tmc_exact(&inst).unwrap().weight;
        let lp = tmnc_lp_bound(&inst).unwrap();
        prop_assert!(lp <= opt as f64 + LP_TOLERANCE * 10.0);
        let sol = solve_tmnc_lp(&inst).unwrap();
        prop_assert!(tmc_count(&inst.graph, CutKind::Node, inst.client, &inst.services, &sol.members) >= l);
        prop_assert!(sol.weight as f64 <= 2.0 * (n as f64).sqrt() * opt as f64 + 1e-9);
    }

    #[test]
    fn rounding_survives_ties(k in 1usize..=6, len in 1usize..=4) {
        for l in 1..=k {
            let inst = tied_chains(k, len, l);
            let sol = solve_tmnc_lp(&inst).unwrap();
            prop_assert!(tmc_count(&inst.graph, CutKind::Node, 0, &inst.services, &sol.members) >= l);
            prop_assert_eq!(sol.weight as usize, l);
        }
    }

    #[test]
    fn gadget_bisection_maps_to_base_edges(seed: u64, n in 4usize..=5) {
        let inst = instance(seed, n, 3, 2, CutKind::Edge);
        let scales = GadgetScales { size: 1, cost: inst.graph.total_edge_weight() + 1 };
        let mut r = rng(seed);
        let i = r.gen_range(0..3);
        let j = *j_range(n, 3, 2, scales.size).collect::<Vec<_>>().choose(&mut r).unwrap();
        let gadget = build_bisection_gadget(&inst, i, j, scales).unwrap();
        let b = min_bisection(&gadget.graph, BisectionBackend::Exact).unwrap();
        prop_assert_eq!(b.weight, brute_bisection(&gadget.graph));
        let (members, _) = gadget.map_back(&b);
        let gadget_edges = gadget.graph.edges().iter().enumerate()
            .filter(|&(e, &(u, v))| b.side[u] != b.side[v] && gadget.base_edge[e].is_none())
            .count() as u64;
        let base: u64 = members.iter().map(|&e| inst.graph.edge_weight(e).finite().unwrap()).sum();
        prop_assert_eq!(base + gadget_edges * scales.cost, b.weight);
    }
}
