mod common;

use common::*;
use cutkit::cpmc::{classify_partner, solve_cpmc_exact, CpmcInstance, PartnerVerdict};
use cutkit::graph::min_st_cut_value;
use cutkit::{CutKind, WeightedGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn terminals(
    r: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    partners: usize,
    dests: usize,
) -> (usize, Vec<usize>, Vec<usize>) {
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(r);
    (
        nodes[0],
        nodes[1..=partners].to_vec(),
        nodes[partners + 1..=partners + dests].to_vec(),
    )
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn exact_matches_enumeration(seed: u64, n in 4usize..=9, directed: bool, node_mode: bool, partners in 1usize..=2, dests in 1usize..=2) {
        let mut r = rng(seed);
        prop_assume!(partners + dests < n);
        let g = random_graph(&mut r, n, directed, 0.3, 7, true);
        prop_assume!(node_mode || g.m() <= 18);
        let mode = if node_mode { CutKind::Node } else { CutKind::Edge };
        let (s, p, d) = terminals(&mut r, n, partners, dests);
        let inst = CpmcInstance::new(g.clone(), s, p.clone(), d.clone(), mode).unwrap();
        let out = solve_cpmc_exact(&inst).unwrap();
        let want = brute_cpmc(&g, mode, s, &p, &d, false);
        prop_assert_eq!(out.weight(), want.map(|w| w.0));
        if let Some(cut) = out.cut() {
            prop_assert!(cpmc_valid(&g, mode, s, &p, &d, false, &cut.members));
            prop_assert_eq!(cost(&g, mode, &cut.members), Some(cut.weight));
            if !directed {
                // Source reaches every partner and no destination.
                let (dn, de) = masks(&g, mode, &cut.members);
                let from = reach(&g, &[s], &dn, &de);
                prop_assert!(p.iter().all(|&x| from[x]) && d.iter().all(|&x| !from[x]));
            }
        }
    }

    #[test]
    fn guaranteed_preserving_partner_costs_the_joint_cut(seed: u64, n in 3usize..=9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, false, 0.35, 9, true);
        prop_assume!(g.m() <= 18);
        let (s1, p, d) = terminals(&mut r, n, 1, 1);
        let brute = brute_cpmc(&g, CutKind::Edge, s1, &p, &d, false);
        let c = match classify_partner(&g, s1, p[0], d[0]) {
            Ok(c) => c,
            Err(cutkit::Error::NoFiniteCut) => {
                prop_assert!(brute.is_none());
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(Some(c.cep), brute.map(|b| b.0));
        match c.verdict {
            PartnerVerdict::GuaranteedPreserving => {
                prop_assert!(c.ce_s1t + c.ce_s2t > c.ce_joint);
                prop_assert_eq!(c.cep, c.ce_joint);
            }
            PartnerVerdict::Outer => prop_assert!(c.cep > c.ce_s1t + c.ce_s2t),
            PartnerVerdict::Threshold => prop_assert!(c.cep <= c.ce_s1t + c.ce_s2t),
        }
        prop_assert_eq!(c.ce_joint, min_st_cut_value(&g, CutKind::Edge, &[s1, p[0]], &d).unwrap());
    }

    #[test]
    fn cut_stays_valid_in_subgraphs_keeping_preserved_paths(seed: u64, n in 4usize..=12) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, false, 0.3, 9, true);
        let (s, p, d) = terminals(&mut r, n, 2, 1);
        let inst = CpmcInstance::new(g.clone(), s, p.clone(), d.clone(), CutKind::Edge).unwrap();
        let Some(cut) = solve_cpmc_exact(&inst).unwrap().cut().cloned() else { return Ok(()) };
        // Keep the cut, a BFS tree of the source's side, and a random share of the rest.
        let dead = mask(g.m(), &cut.members);
        let mut keep = mask(g.m(), &cut.members);
        let mut seen = mask(n, &[s]);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.neighbors(u) {
                if !dead[e] && !seen[v] {
                    seen[v] = true;
                    keep[e] = true;
                    queue.push_back(v);
                }
            }
        }
        let edges: Vec<(usize, usize, cutkit::Weight)> = (0..g.m())
            .filter(|&e| keep[e] || r.gen_bool(0.5))
            .map(|e| (g.endpoints(e).0, g.endpoints(e).1, g.edge_weight(e)))
            .collect();
        let h = WeightedGraph::new(false, g.node_weights().to_vec(), edges).unwrap();
        let members: Vec<usize> = cut.members.iter().map(|&e| {
            let (u, v) = g.endpoints(e);
            h.find_edge(u, v).unwrap()
        }).collect();
        prop_assert!(cpmc_valid(&h, CutKind::Edge, s, &p, &d, false, &members));
    }
}
