//! Brute-force oracles and instance generators shared by the integration tests.
//!
//! Nothing here calls a library solver: cuts are enumerated and checked with
//! a local BFS.

#![allow(dead_code)]

use std::collections::VecDeque;

use cutkit::{CutKind, Weight, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Proptest settings without failure files: the seeds are the regression record.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph on `n` nodes. With `connected`, a random spanning tree is laid first.
pub fn random_graph(
    r: &mut ChaCha8Rng,
    n: usize,
    directed: bool,
    p: f64,
    wmax: u64,
    connected: bool,
) -> WeightedGraph {
    let mut pairs = std::collections::BTreeSet::new();
    if connected {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(r);
        for i in 1..n {
            let (a, b) = (order[r.gen_range(0..i)], order[i]);
            pairs.insert(if directed && r.gen_bool(0.5) {
                (b, a)
            } else {
                (a.min(b), a.max(b))
            });
        }
    }
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if r.gen_bool(p) && (directed || !pairs.contains(&(u, v))) {
                pairs.insert((u, v));
            }
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(u, v)| (u, v, Weight::Finite(r.gen_range(1..=wmax))))
        .collect();
    let nw = (0..n)
        .map(|_| Weight::Finite(r.gen_range(1..=wmax)))
        .collect();
    WeightedGraph::new(directed, nw, edges).unwrap()
}

/// Grid-shaped planar graph on `n` nodes: random edges dropped while connected,
/// random diagonals added in some cells.
pub fn random_planar(r: &mut ChaCha8Rng, n: usize, wmax: u64) -> WeightedGraph {
    let rows = ((n as f64).sqrt().floor() as usize).max(1);
    let cols = n.div_ceil(rows);
    let mut edges = Vec::new();
    for v in 0..n {
        if v % cols + 1 < cols && v + 1 < n {
            edges.push((v, v + 1));
        }
        if v + cols < n {
            edges.push((v, v + cols));
            // One diagonal per cell keeps the grid planar.
            if v % cols + 1 < cols && v + cols + 1 < n && r.gen_bool(0.3) {
                edges.push(if r.gen_bool(0.5) {
                    (v, v + cols + 1)
                } else {
                    (v + 1, v + cols)
                });
            }
        }
    }
    let mut keep = vec![true; edges.len()];
    for i in 0..edges.len() {
        if r.gen_bool(0.25) {
            keep[i] = false;
            let trial: Vec<(usize, usize)> = edges
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            if !connected_pairs(n, &trial) {
                keep[i] = true;
            }
        }
    }
    let list = edges
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(u, v), _)| (u, v, Weight::Finite(r.gen_range(1..=wmax))))
        .collect();
    let nw = (0..n)
        .map(|_| Weight::Finite(r.gen_range(1..=wmax)))
        .collect();
    WeightedGraph::new(false, nw, list).unwrap()
}

fn connected_pairs(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Nodes reachable from `from` along arcs (both ways if undirected), avoiding dead nodes and edges.
pub fn reach(
    g: &WeightedGraph,
    from: &[usize],
    dead_nodes: &[bool],
    dead_edges: &[bool],
) -> Vec<bool> {
    walk(g, from, dead_nodes, dead_edges, false)
}

/// Nodes that reach `to`.
pub fn coreach(
    g: &WeightedGraph,
    to: &[usize],
    dead_nodes: &[bool],
    dead_edges: &[bool],
) -> Vec<bool> {
    walk(g, to, dead_nodes, dead_edges, true)
}

fn walk(
    g: &WeightedGraph,
    from: &[usize],
    dead_nodes: &[bool],
    dead_edges: &[bool],
    backwards: bool,
) -> Vec<bool> {
    let n = g.n();
    let dn = |v: usize| dead_nodes.get(v).copied().unwrap_or(false);
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if dead_edges.get(e).copied().unwrap_or(false) {
            continue;
        }
        if !g.is_directed() || !backwards {
            adj[u].push(v);
        }
        if !g.is_directed() || backwards {
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut q = VecDeque::new();
    for &s in from {
        if !dn(s) && !seen[s] {
            seen[s] = true;
            q.push_back(s);
        }
    }
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if !seen[v] && !dn(v) {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    seen
}

pub fn mask(len: usize, members: &[usize]) -> Vec<bool> {
    let mut m = vec![false; len];
    for &i in members {
        m[i] = true;
    }
    m
}

/// Cost of a member list, `None` if any member is `Inf`.
pub fn cost(g: &WeightedGraph, kind: CutKind, members: &[usize]) -> Option<u64> {
    members
        .iter()
        .map(|&i| match kind {
            CutKind::Node => g.node_weight(i).finite(),
            CutKind::Edge => g.edge_weight(i).finite(),
        })
        .sum()
}

/// Min `s`-`t` edge cut by enumerating every node bipartition with `s` inside and `t` outside.
pub fn partition_min_cut(g: &WeightedGraph, s: usize, t: usize) -> Option<u64> {
    let n = g.n();
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best: Option<u64> = None;
    for bits in 0u64..1 << others.len() {
        let mut inside = vec![false; n];
        inside[s] = true;
        for (i, &v) in others.iter().enumerate() {
            inside[v] = bits >> i & 1 == 1;
        }
        let mut w = Some(0u64);
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let crosses = if g.is_directed() {
                inside[u] && !inside[v]
            } else {
                inside[u] != inside[v]
            };
            if crosses {
                w = w.and_then(|acc| g.edge_weight(e).finite().map(|c| acc + c));
            }
        }
        if let Some(w) = w {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    best
}

/// Every subset of `candidates`, cheapest valid one by `valid`.
pub fn min_subset<F: FnMut(&[usize]) -> bool>(
    g: &WeightedGraph,
    kind: CutKind,
    candidates: &[usize],
    mut valid: F,
) -> Option<(u64, Vec<usize>)> {
    assert!(
        candidates.len() <= 22,
        "too many candidates for enumeration"
    );
    let mut best: Option<(u64, Vec<usize>)> = None;
    for bits in 0u64..1 << candidates.len() {
        let members: Vec<usize> = (0..candidates.len())
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| candidates[i])
            .collect();
        let Some(w) = cost(g, kind, &members) else {
            continue;
        };
        if best.as_ref().is_some_and(|b| b.0 <= w) {
            continue;
        }
        if valid(&members) {
            best = Some((w, members));
        }
    }
    best
}

/// Dead-node and dead-edge masks for a member list.
pub fn masks(g: &WeightedGraph, kind: CutKind, members: &[usize]) -> (Vec<bool>, Vec<bool>) {
    match kind {
        CutKind::Node => (mask(g.n(), members), vec![false; g.m()]),
        CutKind::Edge => (vec![false; g.n()], mask(g.m(), members)),
    }
}

/// Generalized connectivity preserving cut: each terminal is a node set.
///
/// Valid when no destination set touches the source side and the source set
/// is linked to every partner set. Edges inside a terminal set and the
/// terminal nodes themselves are never cut.
pub fn generalized_cpmc(
    g: &WeightedGraph,
    kind: CutKind,
    source: &[usize],
    partners: &[Vec<usize>],
    dests: &[Vec<usize>],
) -> Option<u64> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    let all: Vec<&[usize]> = std::iter::once(source)
        .chain(partners.iter().map(Vec::as_slice))
        .chain(dests.iter().map(Vec::as_slice))
        .collect();
    for (i, c) in all.iter().enumerate() {
        for &v in c.iter() {
            owner[v] = i;
        }
    }
    let candidates: Vec<usize> = match kind {
        CutKind::Node => (0..n)
            .filter(|&v| owner[v] == usize::MAX && !g.node_weight(v).is_inf())
            .collect(),
        CutKind::Edge => (0..g.m())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                !(owner[u] != usize::MAX && owner[u] == owner[v]) && !g.edge_weight(e).is_inf()
            })
            .collect(),
    };
    let src_side: Vec<usize> = source
        .iter()
        .chain(partners.iter().flatten())
        .copied()
        .collect();
    let dest_nodes: Vec<usize> = dests.iter().flatten().copied().collect();
    min_subset(g, kind, &candidates, |members| {
        let (dn, de) = masks(g, kind, members);
        let from_src = reach(g, &src_side, &dn, &de);
        if dest_nodes.iter().any(|&d| from_src[d]) {
            return false;
        }
        let r = reach(g, source, &dn, &de);
        partners.iter().all(|p| p.iter().all(|&v| r[v]))
    })
    .map(|b| b.0)
}

/// Connectivity preserving cut by enumeration (undirected or directed semantics).
///
/// Directed: no destination may reach the source side, and each partner must
/// be reachable from the source or reach it.
pub fn brute_cpmc(
    g: &WeightedGraph,
    kind: CutKind,
    source: usize,
    partners: &[usize],
    dests: &[usize],
    preserve_dests: bool,
) -> Option<(u64, Vec<usize>)> {
    let term: Vec<usize> = std::iter::once(source)
        .chain(partners.iter().copied())
        .chain(dests.iter().copied())
        .collect();
    let candidates: Vec<usize> = match kind {
        CutKind::Node => (0..g.n())
            .filter(|v| !term.contains(v) && !g.node_weight(*v).is_inf())
            .collect(),
        CutKind::Edge => (0..g.m()).filter(|&e| !g.edge_weight(e).is_inf()).collect(),
    };
    min_subset(g, kind, &candidates, |members| {
        cpmc_valid(g, kind, source, partners, dests, preserve_dests, members)
    })
}

pub fn cpmc_valid(
    g: &WeightedGraph,
    kind: CutKind,
    source: usize,
    partners: &[usize],
    dests: &[usize],
    preserve_dests: bool,
    members: &[usize],
) -> bool {
    let (dn, de) = masks(g, kind, members);
    let src_side: Vec<usize> = std::iter::once(source)
        .chain(partners.iter().copied())
        .collect();
    let separated = if g.is_directed() {
        let back = coreach(g, &src_side, &dn, &de);
        dests.iter().all(|&d| !back[d])
    } else {
        let fwd = reach(g, &src_side, &dn, &de);
        dests.iter().all(|&d| !fwd[d])
    };
    let linked = |root: usize, others: &[usize]| {
        let f = reach(g, &[root], &dn, &de);
        let b = coreach(g, &[root], &dn, &de);
        others.iter().all(|&p| f[p] || b[p])
    };
    separated && linked(source, partners) && (!preserve_dests || linked(dests[0], &dests[1..]))
}

/// Threshold cut by enumeration: at least `l` services unreachable from the client.
pub fn brute_tmc(
    g: &WeightedGraph,
    kind: CutKind,
    client: usize,
    services: &[usize],
    l: usize,
) -> Option<u64> {
    let candidates: Vec<usize> = match kind {
        CutKind::Node => (0..g.n())
            .filter(|v| *v != client && !services.contains(v) && !g.node_weight(*v).is_inf())
            .collect(),
        CutKind::Edge => (0..g.m()).filter(|&e| !g.edge_weight(e).is_inf()).collect(),
    };
    min_subset(g, kind, &candidates, |members| {
        tmc_count(g, kind, client, services, members) >= l
    })
    .map(|b| b.0)
}

pub fn tmc_count(
    g: &WeightedGraph,
    kind: CutKind,
    client: usize,
    services: &[usize],
    members: &[usize],
) -> usize {
    let (dn, de) = masks(g, kind, members);
    let r = reach(g, &[client], &dn, &de);
    services.iter().filter(|&&s| !r[s]).count()
}

/// Minimum bisection weight by enumerating balanced node subsets (unit or weighted edges).
pub fn brute_bisection(g: &WeightedGraph) -> u64 {
    let n = g.n();
    let mut best = u64::MAX;
    for bits in 0u64..1 << n {
        let ones = bits.count_ones() as usize;
        if ones.abs_diff(n - ones) > 1 {
            continue;
        }
        let w = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| (bits >> u & 1) != (bits >> v & 1))
            .map(|(e, _)| g.edge_weight(e).finite().unwrap())
            .sum();
        best = best.min(w);
    }
    best
}

/// Every simple `s`-`t` path as a list of edge ids, skipping dead edges.
pub fn simple_paths(g: &WeightedGraph, s: usize, t: usize, dead_edges: &[bool]) -> Vec<Vec<usize>> {
    fn go(
        g: &WeightedGraph,
        u: usize,
        t: usize,
        dead: &[bool],
        on: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if u == t {
            out.push(path.clone());
            return;
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if dead[e] {
                continue;
            }
            let v = if a == u {
                b
            } else if b == u && !g.is_directed() {
                a
            } else {
                continue;
            };
            if on[v] {
                continue;
            }
            on[v] = true;
            path.push(e);
            go(g, v, t, dead, on, path, out);
            path.pop();
            on[v] = false;
        }
    }
    let mut on = vec![false; g.n()];
    on[s] = true;
    let mut out = Vec::new();
    go(g, s, t, dead_edges, &mut on, &mut Vec::new(), &mut out);
    out
}

/// Minimum weight set cover and, among minimum covers, the smallest number of
/// incidences belonging to unchosen sets.
pub fn set_cover_brute(
    elements: usize,
    sets: &[Vec<usize>],
    weights: &[u64],
) -> Option<(u64, u64, u64)> {
    let k = sets.len();
    let mut best: Option<(u64, u64, u64)> = None; // weight, min penalty, max penalty
    for bits in 0u64..1 << k {
        let mut hit = vec![false; elements];
        for i in (0..k).filter(|&i| bits >> i & 1 == 1) {
            for &e in &sets[i] {
                hit[e] = true;
            }
        }
        if !hit.iter().all(|&h| h) {
            continue;
        }
        let w: u64 = (0..k)
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| weights[i])
            .sum();
        let pen: u64 = (0..k)
            .filter(|&i| bits >> i & 1 == 0)
            .map(|i| sets[i].len() as u64)
            .sum();
        best = match best {
            None => Some((w, pen, pen)),
            Some((bw, _, _)) if w < bw => Some((w, pen, pen)),
            Some((bw, lo, hi)) if w == bw => Some((bw, lo.min(pen), hi.max(pen))),
            b => b,
        };
    }
    best
}

/// Random connected node set of size `size` avoiding `taken`, grown by BFS order.
pub fn grow_set(
    r: &mut ChaCha8Rng,
    g: &WeightedGraph,
    size: usize,
    taken: &[bool],
) -> Option<Vec<usize>> {
    let free: Vec<usize> = (0..g.n()).filter(|&v| !taken[v]).collect();
    let &start = free.choose(r)?;
    let mut set = vec![start];
    while set.len() < size {
        let mut frontier: Vec<usize> = Vec::new();
        for &u in &set {
            for &(v, _) in g.neighbors(u) {
                if !taken[v] && !set.contains(&v) && !frontier.contains(&v) {
                    frontier.push(v);
                }
            }
        }
        let Some(&v) = frontier.choose(r) else { break };
        set.push(v);
    }
    Some(set)
}

/// Cheapest edge cut given by a node set `R` (the destination side): the finite
/// edges leaving `R` (crossing it, if undirected). Searches every `R` that
/// contains `inside`, avoids `outside`, respects `Inf` edges, and satisfies `accept`.
pub fn min_closed_cut<F: Fn(&[bool]) -> bool>(
    g: &WeightedGraph,
    inside: &[usize],
    outside: &[usize],
    accept: F,
) -> Option<(u64, Vec<bool>)> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for &v in inside {
        side[v] = Some(true);
    }
    for &v in outside {
        if side[v] == Some(true) {
            return None;
        }
        side[v] = Some(false);
    }
    let mut best: Option<(u64, Vec<bool>)> = None;
    if propagate(g, &mut side) {
        search(g, side, &accept, &mut best);
    }
    best
}

/// Forces sides along `Inf` edges; false on contradiction.
fn propagate(g: &WeightedGraph, side: &mut [Option<bool>]) -> bool {
    loop {
        let mut changed = false;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if !g.edge_weight(e).is_inf() {
                continue;
            }
            let pairs: &[(usize, usize)] = if g.is_directed() {
                &[(u, v)]
            } else {
                &[(u, v), (v, u)]
            };
            for &(a, b) in pairs {
                // a in R forces b in R; b out forces a out.
                match (side[a], side[b]) {
                    (Some(true), Some(false)) => return false,
                    (Some(true), None) => {
                        side[b] = Some(true);
                        changed = true;
                    }
                    (None, Some(false)) => {
                        side[a] = Some(false);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn decided_cost(g: &WeightedGraph, side: &[Option<bool>]) -> u64 {
    let mut c = 0;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let crosses = match (side[u], side[v]) {
            (Some(true), Some(false)) => true,
            (Some(false), Some(true)) => !g.is_directed(),
            _ => false,
        };
        if crosses {
            c += g.edge_weight(e).finite().unwrap();
        }
    }
    c
}

fn search<F: Fn(&[bool]) -> bool>(
    g: &WeightedGraph,
    side: Vec<Option<bool>>,
    accept: &F,
    best: &mut Option<(u64, Vec<bool>)>,
) {
    let c = decided_cost(g, &side);
    if best.as_ref().is_some_and(|b| b.0 <= c) {
        return;
    }
    match side.iter().position(Option::is_none) {
        None => {
            let r: Vec<bool> = side.iter().map(|s| s.unwrap()).collect();
            if accept(&r) {
                *best = Some((c, r));
            }
        }
        Some(v) => {
            for choice in [false, true] {
                let mut next = side.clone();
                next[v] = Some(choice);
                if propagate(g, &mut next) {
                    search(g, next, accept, best);
                }
            }
        }
    }
}

/// Edges cut by the side set `r`.
pub fn cut_of(g: &WeightedGraph, r: &[bool]) -> Vec<usize> {
    (0..g.m())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            (r[u] && !r[v]) || (!g.is_directed() && r[v] && !r[u])
        })
        .collect()
}
