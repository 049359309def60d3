mod common;

use common::*;
use cutkit::planar::{
    build_embedding, perturb, reduce_two_node_lcsp, solve_2v2_planar_cpmec,
    solve_network_diversion, solve_two_node_lcsp, ExactOracle,
};
use cutkit::{CutKind, Error};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn embedding_traces_every_dart_once(seed: u64, n in 1usize..=16) {
        let mut r = rng(seed);
        let g = random_planar(&mut r, n, 3);
        let emb = build_embedding(&g).unwrap();
        prop_assert!(emb.is_consistent());
        prop_assert_eq!(emb.faces.len() + n, g.m() + 2);
        let mut darts: Vec<(usize, usize)> = emb.faces.iter().flatten().copied().collect();
        darts.sort_unstable();
        let mut want: Vec<(usize, usize)> = g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        want.sort_unstable();
        prop_assert_eq!(darts, want);
    }

    #[test]
    fn perturbation_orders_and_separates(seed: u64, n in 2usize..=12, node_mode: bool) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, false, 0.4, 9, true);
        let mode = if node_mode { CutKind::Node } else { CutKind::Edge };
        let pw = perturb(&g, mode).unwrap();
        let len = if node_mode { n } else { g.m() };
        for _ in 0..50 {
            let a: Vec<usize> = (0..len).filter(|_| r.gen_bool(0.5)).collect();
            let b: Vec<usize> = (0..len).filter(|_| r.gen_bool(0.5)).collect();
            let base = |s: &[usize]| cost(&g, mode, s).unwrap();
            let (ta, tb) = (pw.total_of(&a).unwrap(), pw.total_of(&b).unwrap());
            if base(&a) < base(&b) {
                prop_assert!(ta < tb);
            }
            if a != b {
                prop_assert_ne!(ta, tb);
            }
        }
    }

    #[test]
    fn two_vs_two_matches_enumeration(seed: u64, n in 4usize..=9) {
        let mut r = rng(seed);
        let g = random_planar(&mut r, n, 4);
        prop_assume!(g.m() <= 18);
        let emb = build_embedding(&g).unwrap();
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut r);
        let (s1, s2, d1, d2) = (nodes[0], nodes[1], nodes[2], nodes[3]);
        let got = match solve_2v2_planar_cpmec(&emb, s1, s2, d1, d2, &ExactOracle) {
            Ok(c) => {
                prop_assert!(cpmc_valid(&g, CutKind::Edge, s1, &[s2], &[d1, d2], true, &c.members));
                Some(c.weight)
            }
            Err(Error::Infeasible) => None,
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(got, brute_cpmc(&g, CutKind::Edge, s1, &[s2], &[d1, d2], true).map(|b| b.0));
    }

    #[test]
    fn diversion_is_optimal(seed: u64, n in 4usize..=9) {
        let mut r = rng(seed);
        let g = random_planar(&mut r, n, 4);
        prop_assume!(g.m() <= 18);
        let s = r.gen_range(0..n);
        let t = (s + r.gen_range(1..n)) % n;
        let inner: Vec<usize> = (0..g.m()).filter(|&e| {
            let (u, v) = g.endpoints(e);
            ![s, t].contains(&u) && ![s, t].contains(&v)
        }).collect();
        let Some(&e) = inner.choose(&mut r) else { return Ok(()) };
        let others: Vec<usize> = (0..g.m()).filter(|&x| x != e).collect();
        let brute = min_subset(&g, CutKind::Edge, &others, |c| {
            let mut dead = mask(g.m(), c);
            if !reach(&g, &[s], &[], &dead)[t] {
                return false;
            }
            dead[e] = true;
            !reach(&g, &[s], &[], &dead)[t]
        });
        let got = match solve_network_diversion(&g, s, t, g.endpoints(e), &ExactOracle) {
            Ok(c) => Some(c.weight),
            Err(Error::Infeasible) => None,
            Err(err) => return Err(TestCaseError::fail(err.to_string())),
        };
        prop_assert_eq!(got, brute.map(|b| b.0));
    }

    #[test]
    fn lcsp_path_is_the_cheapest_separator(seed: u64, n in 6usize..=12) {
        let mut r = rng(seed);
        let g = random_planar(&mut r, n, 4);
        let emb = build_embedding(&g).unwrap();
        let mut outer = emb.face_nodes(emb.outer_face);
        outer.sort_unstable();
        outer.dedup();
        outer.shuffle(&mut r);
        prop_assume!(outer.len() >= 2);
        let (p, q) = (outer[0], outer[1]);
        let mut rest: Vec<usize> = (0..n).filter(|&x| x != p && x != q).collect();
        rest.shuffle(&mut r);
        let (above, below) = (rest[0], rest[1]);
        let red = reduce_two_node_lcsp(&emb, p, q, above, below).unwrap();
        let inst = &red.instance;
        let brute = brute_cpmc(&inst.graph, CutKind::Node, inst.source, &inst.partners, &inst.destinations, true);
        match solve_two_node_lcsp(&emb, p, q, above, below, &ExactOracle) {
            Ok(path) => {
                prop_assert_eq!(path.nodes.first(), Some(&p));
                prop_assert_eq!(path.nodes.last(), Some(&q));
                for w in path.nodes.windows(2) {
                    prop_assert!(g.find_edge(w[0], w[1]).is_some());
                }
                let mut sorted = path.nodes.clone();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), path.nodes.len());
                prop_assert_eq!(Some(path.weight), cost(&g, CutKind::Node, &path.nodes));
                prop_assert_eq!(Some(path.weight), brute.map(|b| b.0));
            }
            Err(Error::Infeasible) => prop_assert!(brute.is_none()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
