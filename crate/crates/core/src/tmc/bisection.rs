//! Threshold edge cuts through minimum bisection of a clique gadget.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TmcInstance;
use crate::error::{Error, Result};
use crate::graph::{CutKind, CutSolution, Weight, WeightedGraph};

/// Largest graph the exact bisection backend accepts.
pub const EXACT_BISECTION_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum BisectionBackend {
    Exact,
    LocalSearch { seed: u64, restarts: usize },
}

impl Default for BisectionBackend {
    fn default() -> Self {
        BisectionBackend::Exact
    }
}

/// A balanced 2-partition: side sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bisection {
    pub side: Vec<bool>,
    pub weight: u64,
}

fn matrix(g: &WeightedGraph) -> Result<Vec<Vec<u64>>> {
    if g.is_directed() {
        return Err(Error::InvalidInstance(
            "bisection needs an undirected graph".into(),
        ));
    }
    let n = g.n();
    let mut w = vec![vec![0u64; n]; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = g
            .edge_weight(e)
            .finite()
            .ok_or_else(|| Error::InvalidInstance("bisection needs finite edge weights".into()))?;
        w[u][v] = c;
        w[v][u] = c;
    }
    Ok(w)
}

fn cut_weight(w: &[Vec<u64>], side: &[bool]) -> u64 {
    let n = side.len();
    let mut total = 0;
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] {
                total += w[u][v];
            }
        }
    }
    total
}

/// Minimum weight bisection by the chosen backend.
pub fn min_bisection(g: &WeightedGraph, backend: BisectionBackend) -> Result<Bisection> {
    let w = matrix(g)?;
    match backend {
        BisectionBackend::Exact => {
            if g.n() > EXACT_BISECTION_LIMIT {
                return Err(Error::InstanceTooLarge {
                    what: "exact bisection",
                    size: g.n() as u128,
                    limit: EXACT_BISECTION_LIMIT as u128,
                });
            }
            let start = local_search(&w, 0, 4);
            Ok(exact(&w, start))
        }
        BisectionBackend::LocalSearch { seed, restarts } => {
            Ok(local_search(&w, seed, restarts.max(1)))
        }
    }
}

fn local_search(w: &[Vec<u64>], seed: u64, restarts: usize) -> Bisection {
    let n = w.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Bisection> = None;
    for _ in 0..restarts {
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let big = if n % 2 == 1 && rng.gen::<bool>() {
            n / 2 + 1
        } else {
            n / 2
        };
        let mut side = vec![false; n];
        for &v in &nodes[big..] {
            side[v] = true;
        }
        descend(w, &mut side);
        let weight = cut_weight(w, &side);
        if best.as_ref().map_or(true, |b| weight < b.weight) {
            best = Some(Bisection { side, weight });
        }
    }
    best.unwrap_or(Bisection {
        side: Vec::new(),
        weight: 0,
    })
}

/// Pairwise swaps (and single moves when `n` is odd) until no move helps.
fn descend(w: &[Vec<u64>], side: &mut [bool]) {
    let n = side.len();
    loop {
        // d[v] = external - internal weight
        let d: Vec<i64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v)
                    .map(|u| {
                        if side[u] != side[v] {
                            w[v][u] as i64
                        } else {
                            -(w[v][u] as i64)
                        }
                    })
                    .sum()
            })
            .collect();
        let mut best: (i64, usize, usize) = (0, usize::MAX, usize::MAX);
        for u in (0..n).filter(|&u| !side[u]) {
            for v in (0..n).filter(|&v| side[v]) {
                let gain = d[u] + d[v] - 2 * w[u][v] as i64;
                if gain > best.0 {
                    best = (gain, u, v);
                }
            }
        }
        if n % 2 == 1 {
            let ones = side.iter().filter(|&&s| s).count();
            let larger = ones > n / 2;
            for u in (0..n).filter(|&u| side[u] == larger) {
                if d[u] > best.0 {
                    best = (d[u], u, usize::MAX);
                }
            }
        }
        if best.1 == usize::MAX {
            return;
        }
        side[best.1] = !side[best.1];
        if best.2 != usize::MAX {
            side[best.2] = !side[best.2];
        }
    }
}

struct Exact<'a> {
    w: &'a [Vec<u64>],
    order: Vec<usize>,
    side: Vec<u8>,
    conn: Vec<[u64; 2]>,
    count: [usize; 2],
    cap: usize,
    best: Bisection,
}

fn exact(w: &[Vec<u64>], start: Bisection) -> Bisection {
    let n = w.len();
    if n < 2 {
        return start;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<u64> = (0..n).map(|v| w[v].iter().sum()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut s = Exact {
        w,
        order,
        side: vec![2; n],
        conn: vec![[0, 0]; n],
        count: [0, 0],
        cap: n.div_ceil(2),
        best: start,
    };
    // Fixing the first node removes the mirror symmetry.
    let first = s.order[0];
    s.place(first, 0);
    s.search(1, 0);
    s.best
}

impl Exact<'_> {
    fn place(&mut self, v: usize, sd: u8) {
        self.side[v] = sd;
        self.count[sd as usize] += 1;
        for u in 0..self.w.len() {
            self.conn[u][sd as usize] += self.w[v][u];
        }
    }

    fn unplace(&mut self, v: usize) {
        let sd = self.side[v];
        self.side[v] = 2;
        self.count[sd as usize] -= 1;
        for u in 0..self.w.len() {
            self.conn[u][sd as usize] -= self.w[v][u];
        }
    }

    fn search(&mut self, pos: usize, cost: u64) {
        let n = self.w.len();
        if pos == n {
            if cost < self.best.weight {
                let side = self.side.iter().map(|&s| s == 1).collect();
                self.best = Bisection { side, weight: cost };
            }
            return;
        }
        let lb: u64 = self.order[pos..]
            .iter()
            .map(|&v| self.conn[v][0].min(self.conn[v][1]))
            .sum();
        if cost + lb >= self.best.weight {
            return;
        }
        let v = self.order[pos];
        for sd in [0u8, 1] {
            if self.count[sd as usize] < self.cap {
                // Joining side sd cuts the edges to the other side.
                let add = self.conn[v][1 - sd as usize];
                self.place(v, sd);
                self.search(pos + 1, cost + add);
                self.unplace(v);
            }
        }
    }
}

/// Clique sizes and the cost that keeps gadget edges out of every optimal bisection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetScales {
    pub size: usize,
    pub cost: u64,
}

impl GadgetScales {
    /// `n²` for both scales.
    pub fn standard(n: usize) -> Self {
        GadgetScales {
            size: n * n,
            cost: (n * n) as u64,
        }
    }
}

/// Where a gadget node comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "of")]
pub enum Provenance {
    Original(usize),
    /// Clique attached to the service with this index into `services`.
    ServiceClique(usize),
    ClientClique,
    Padding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisectionGadget {
    /// Index into `services` of the service whose clique has size `(k-1)·size`.
    pub i: usize,
    pub j: usize,
    pub scales: GadgetScales,
    pub graph: WeightedGraph,
    pub provenance: Vec<Provenance>,
    /// Base edge behind each gadget edge, `None` for added edges.
    pub base_edge: Vec<Option<usize>>,
}

/// Range of client-clique sizes worth scanning.
///
/// A bisection with `w` services and `β` base nodes on the side away from
/// the client balances exactly when `j = 2β − n + (2w − 2)·size`.
pub fn j_range(n: usize, k: usize, l: usize, size: usize) -> std::ops::RangeInclusive<usize> {
    let lo = ((2 * l - 2) * size + l) as i64 - n as i64;
    let hi = 2 * (k - 1) * size + n - 2;
    (lo.max(0) as usize)..=hi
}

fn check_edge_instance(inst: &TmcInstance) -> Result<()> {
    inst.validate()?;
    if inst.mode != CutKind::Edge || inst.graph.is_directed() {
        return Err(Error::InvalidInstance(
            "bisection gadget needs an undirected edge-cut instance".into(),
        ));
    }
    if inst.graph.edge_weights().iter().any(|w| w.is_inf()) {
        return Err(Error::InvalidInstance(
            "bisection gadget needs finite edge weights".into(),
        ));
    }
    Ok(())
}

/// Builds the gadget graph for service index `i` and client clique size `j`.
pub fn build_bisection_gadget(
    inst: &TmcInstance,
    i: usize,
    j: usize,
    scales: GadgetScales,
) -> Result<BisectionGadget> {
    check_edge_instance(inst)?;
    let g = &inst.graph;
    let (n, k) = (g.n(), inst.k());
    if i >= k {
        return Err(Error::InvalidInstance(format!(
            "service index {i} out of range"
        )));
    }
    let total = g.total_edge_weight();
    if scales.cost <= total || scales.size == 0 {
        return Err(Error::ScaleTooSmall {
            m_cost: scales.cost,
            total,
        });
    }
    let mut provenance: Vec<Provenance> = (0..n).map(Provenance::Original).collect();
    let mut edges: Vec<(usize, usize, Weight)> = (0..g.m())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (u, v, g.edge_weight(e))
        })
        .collect();
    let mut base_edge: Vec<Option<usize>> = (0..g.m()).map(Some).collect();
    let cost = Weight::Finite(scales.cost);
    let mut clique = |size: usize, anchor: usize, tag: Provenance, prov: &mut Vec<Provenance>| {
        let start = prov.len();
        prov.extend(std::iter::repeat(tag).take(size));
        for a in start..start + size {
            for b in a + 1..start + size {
                edges.push((a, b, cost));
                base_edge.push(None);
            }
        }
        if size > 0 {
            edges.push((anchor, start, cost));
            base_edge.push(None);
        }
    };
    for u in (0..k).filter(|&u| u != i) {
        clique(
            scales.size,
            inst.services[u],
            Provenance::ServiceClique(u),
            &mut provenance,
        );
    }
    clique(
        (k - 1) * scales.size,
        inst.services[i],
        Provenance::ServiceClique(i),
        &mut provenance,
    );
    clique(j, inst.client, Provenance::ClientClique, &mut provenance);
    if provenance.len() % 2 == 1 {
        provenance.push(Provenance::Padding);
    }
    let weights = vec![Weight::Finite(1); provenance.len()];
    let graph = WeightedGraph::new(false, weights, edges)?;
    Ok(BisectionGadget {
        i,
        j,
        scales,
        graph,
        provenance,
        base_edge,
    })
}

impl BisectionGadget {
    /// Base edges crossing the bisection, and whether any added edge crosses it.
    pub fn map_back(&self, b: &Bisection) -> (Vec<usize>, bool) {
        let mut members = Vec::new();
        let mut gadget_cut = false;
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            if b.side[u] != b.side[v] {
                match self.base_edge[e] {
                    Some(be) => members.push(be),
                    None => gadget_cut = true,
                }
            }
        }
        (members, gadget_cut)
    }
}

/// Scans every `(i, j)`, bisects each gadget and keeps the best audited cut.
pub fn solve_tmec_via_bisection(
    inst: &TmcInstance,
    backend: BisectionBackend,
    scales: Option<GadgetScales>,
) -> Result<CutSolution> {
    check_edge_instance(inst)?;
    let n = inst.graph.n();
    let scales = scales.unwrap_or_else(|| GadgetScales::standard(n));
    let pairs: Vec<(usize, usize)> = (0..inst.k())
        .flat_map(|i| j_range(n, inst.k(), inst.threshold, scales.size).map(move |j| (i, j)))
        .collect();
    let found: Vec<Option<(u64, Vec<usize>)>> = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<(u64, Vec<usize>)>> {
            let gadget = build_bisection_gadget(inst, i, j, scales)?;
            let b = min_bisection(&gadget.graph, backend)?;
            let (mut members, gadget_cut) = gadget.map_back(&b);
            members.sort_unstable();
            if gadget_cut || !inst.is_feasible(&members) {
                return Ok(None);
            }
            let w = members
                .iter()
                .map(|&e| inst.graph.edge_weight(e).finite().unwrap())
                .sum();
            Ok(Some((w, members)))
        })
        .collect::<Result<_>>()?;
    let best = found.into_iter().flatten().min().ok_or(Error::Infeasible)?;
    Ok(inst.solution(best.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmc::solve_tmc_exact;

    fn brute(w: &[Vec<u64>]) -> u64 {
        let n = w.len();
        (0u32..1 << n)
            .filter(|m| (m.count_ones() as usize).abs_diff(n - m.count_ones() as usize) <= 1)
            .map(|m| cut_weight(w, &(0..n).map(|v| m >> v & 1 == 1).collect::<Vec<_>>()))
            .min()
            .unwrap()
    }

    #[test]
    fn small_bisections() {
        let two_triangles = WeightedGraph::unit(
            6,
            false,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        let k4 = WeightedGraph::unit(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let c6 = WeightedGraph::unit(6, false, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
            .unwrap();
        for (g, want) in [(two_triangles, 1), (k4, 4), (c6, 2)] {
            for backend in [
                BisectionBackend::Exact,
                BisectionBackend::LocalSearch {
                    seed: 7,
                    restarts: 8,
                },
            ] {
                let b = min_bisection(&g, backend).unwrap();
                assert_eq!(b.weight, want);
                assert_eq!(b.side.iter().filter(|&&s| s).count(), g.n() / 2);
            }
        }
    }

    #[test]
    fn exact_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(2..=11);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v, rng.gen_range(1..=5)));
                    }
                }
            }
            let g = WeightedGraph::with_edge_weights(n, false, &edges).unwrap();
            let b = min_bisection(&g, BisectionBackend::Exact).unwrap();
            let w = matrix(&g).unwrap();
            assert_eq!(b.weight, brute(&w));
            assert_eq!(cut_weight(&w, &b.side), b.weight);
        }
    }

    #[test]
    fn standard_scale_sizes() {
        let g = WeightedGraph::unit(4, false, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = TmcInstance::new(g, vec![1, 2, 3], 0, 2, CutKind::Edge).unwrap();
        let gad = build_bisection_gadget(&inst, 0, 5, GadgetScales::standard(4)).unwrap();
        let count = |p: Provenance| gad.provenance.iter().filter(|&&q| q == p).count();
        assert_eq!(count(Provenance::ServiceClique(1)), 16);
        assert_eq!(count(Provenance::ServiceClique(2)), 16);
        assert_eq!(count(Provenance::ServiceClique(0)), 32);
        assert_eq!(count(Provenance::ClientClique), 5);
        assert_eq!(gad.graph.n(), 4 + 16 + 16 + 32 + 5 + 1);
        assert_eq!(j_range(4, 3, 2, 16), 30..=66);
    }

    #[test]
    fn scale_too_small() {
        let g = WeightedGraph::with_edge_weights(3, false, &[(0, 1, 3), (1, 2, 3)]).unwrap();
        let inst = TmcInstance::new(g, vec![1, 2], 0, 1, CutKind::Edge).unwrap();
        assert_eq!(
            build_bisection_gadget(&inst, 0, 0, GadgetScales { size: 2, cost: 6 }).unwrap_err(),
            Error::ScaleTooSmall {
                m_cost: 6,
                total: 6
            }
        );
    }

    #[test]
    fn tiny_instance_matches_oracle() {
        // Path 0-1-2-3 plus chord 1-3; client 0, services 1,2,3, l=2.
        let g = WeightedGraph::with_edge_weights(
            4,
            false,
            &[(0, 1, 2), (1, 2, 1), (2, 3, 1), (1, 3, 3)],
        )
        .unwrap();
        let inst = TmcInstance::new(g, vec![1, 2, 3], 0, 2, CutKind::Edge).unwrap();
        let scales = GadgetScales { size: 2, cost: 8 };
        let want = solve_tmc_exact(&inst).unwrap();
        let got = solve_tmec_via_bisection(&inst, BisectionBackend::Exact, Some(scales)).unwrap();
        assert_eq!(got.weight, want.weight);
        assert!(got.feasible);
        let ls = solve_tmec_via_bisection(
            &inst,
            BisectionBackend::LocalSearch {
                seed: 1,
                restarts: 16,
            },
            Some(scales),
        )
        .unwrap();
        assert!(ls.feasible && ls.weight >= want.weight);
    }
}
