//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::document::{InstanceDocument, Payload};
use crate::cpmc::CpmcInstance;
use crate::error::{Error, Result};
use crate::graph::{CutKind, Weight, WeightedGraph};
use crate::planar::build_embedding;
use crate::reductions::{CoverInstance, CoverObjective, InterdictionInstance, SetCoverInstance};
use crate::tmc::TmcInstance;

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    /// Connected G(n, p) graph.
    Gnp,
    /// Grid with random edges removed, kept connected.
    Planar,
    Cpmc,
    Tmc,
    Setcover,
    Cover,
    Interdiction,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::Gnp,
        GenKind::Planar,
        GenKind::Cpmc,
        GenKind::Tmc,
        GenKind::Setcover,
        GenKind::Cover,
        GenKind::Interdiction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Gnp => "gnp",
            GenKind::Planar => "planar",
            GenKind::Cpmc => "cpmc",
            GenKind::Tmc => "tmc",
            GenKind::Setcover => "setcover",
            GenKind::Cover => "cover",
            GenKind::Interdiction => "interdiction",
        }
    }

    pub fn parse(s: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Generator parameters. Meaning of `k` and `l` depends on the kind:
/// partners and destinations (cpmc), services and threshold (tmc),
/// sets and budget or objective size (setcover, cover).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenParams {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// Edge probability; for planar graphs, the probability of keeping a grid edge.
    pub density: f64,
    pub min_weight: u64,
    pub max_weight: u64,
    pub mode: CutKind,
    pub directed: bool,
    /// Max-cover instead of min-cover for the cover kind.
    pub maximize: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 10,
            k: 3,
            l: 2,
            density: 0.4,
            min_weight: 1,
            max_weight: 5,
            mode: CutKind::Edge,
            directed: false,
            maximize: true,
        }
    }
}

impl GenParams {
    fn check(&self, kind: GenKind) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if !(0.0..=1.0).contains(&self.density) || self.density.is_nan() {
            return bad(format!("density {} outside [0, 1]", self.density));
        }
        if self.min_weight == 0 || self.min_weight > self.max_weight {
            return bad(format!(
                "weight range {}..={} invalid",
                self.min_weight, self.max_weight
            ));
        }
        if self.n > 100_000 || self.max_weight > 1 << 20 {
            return bad("n at most 100000 and weights at most 2^20".into());
        }
        let needed = match kind {
            GenKind::Gnp | GenKind::Planar => 1,
            GenKind::Cpmc => 1 + self.k + self.l,
            GenKind::Tmc => 2 + self.k,
            GenKind::Interdiction => 2,
            GenKind::Setcover | GenKind::Cover => 1,
        };
        if self.n < needed {
            return bad(format!(
                "n = {} too small for {}, need {needed}",
                self.n,
                kind.name()
            ));
        }
        match kind {
            GenKind::Cpmc if self.k == 0 || self.l == 0 => {
                bad("cpmc needs k >= 1 partners and l >= 1 destinations".into())
            }
            GenKind::Tmc if self.k == 0 || self.l == 0 || self.l > self.k => {
                bad("tmc needs 1 <= l <= k".into())
            }
            GenKind::Setcover | GenKind::Cover if self.k == 0 => bad("need k >= 1 subsets".into()),
            GenKind::Cover if self.l > if self.maximize { self.n } else { self.k } => {
                bad("cover objective size exceeds the instance".into())
            }
            GenKind::Planar if self.directed => bad("planar graphs are undirected".into()),
            _ => Ok(()),
        }
    }
}

fn weight(rng: &mut ChaCha8Rng, p: &GenParams) -> u64 {
    rng.gen_range(p.min_weight..=p.max_weight)
}

/// Connected random graph: a random spanning tree plus G(n, p) edges.
fn gnp(
    rng: &mut ChaCha8Rng,
    p: &GenParams,
    forbidden: &dyn Fn(usize, usize) -> bool,
) -> Result<WeightedGraph> {
    let n = p.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let key = |u: usize, v: usize| {
        if p.directed {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        }
    };
    let mut placed = vec![order[0]];
    let mut pending: std::collections::VecDeque<usize> = order[1..].iter().copied().collect();
    let mut stalls = 0;
    while let Some(v) = pending.pop_front() {
        // Attach to a placed node; nodes with only forbidden partners wait their turn.
        let choices: Vec<usize> = placed
            .iter()
            .copied()
            .filter(|&u| !forbidden(u, v))
            .collect();
        let Some(&u) = choices.choose(rng) else {
            pending.push_back(v);
            stalls += 1;
            if stalls > n {
                return Err(Error::InvalidParams(
                    "no connected graph avoids the forbidden pairs".into(),
                ));
            }
            continue;
        };
        stalls = 0;
        placed.push(v);
        let (a, b) = if p.directed && rng.gen_bool(0.5) {
            (v, u)
        } else {
            (u, v)
        };
        present.insert(key(a, b));
        let w = weight(rng, p);
        edges.push((a, b, Weight::Finite(w)));
    }
    for u in 0..n {
        for v in 0..n {
            if u == v || (!p.directed && v < u) || forbidden(u, v) || present.contains(&key(u, v)) {
                continue;
            }
            if rng.gen_bool(p.density) {
                present.insert(key(u, v));
                let w = weight(rng, p);
                edges.push((u, v, Weight::Finite(w)));
            }
        }
    }
    let nw = (0..n).map(|_| Weight::Finite(weight(rng, p))).collect();
    WeightedGraph::new(p.directed, nw, edges)
}

fn planar(rng: &mut ChaCha8Rng, p: &GenParams) -> Result<WeightedGraph> {
    let n = p.n;
    let rows = ((n as f64).sqrt().floor() as usize).max(1);
    let cols = n.div_ceil(rows);
    let mut grid = Vec::new();
    for v in 0..n {
        if v % cols + 1 < cols && v + 1 < n {
            grid.push((v, v + 1));
        }
        if v + cols < n {
            grid.push((v, v + cols));
        }
    }
    // Drop edges at random while the graph stays connected.
    let mut keep = vec![true; grid.len()];
    for i in 0..grid.len() {
        if rng.gen_bool(1.0 - p.density) {
            keep[i] = false;
            let trial: Vec<(usize, usize)> = grid
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            if !WeightedGraph::unit(n, false, &trial)?.is_connected() {
                keep[i] = true;
            }
        }
    }
    let edges = grid
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(u, v), _)| (u, v, Weight::Finite(weight(rng, p))))
        .collect();
    let nw = (0..n).map(|_| Weight::Finite(weight(rng, p))).collect();
    let g = WeightedGraph::new(false, nw, edges)?;
    build_embedding(&g)?;
    Ok(g)
}

/// Generates one document; the same kind, parameters and seed give the same bytes.
pub fn generate_random(kind: GenKind, params: &GenParams, seed: u64) -> Result<InstanceDocument> {
    params.check(kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = params;
    let none = |_: usize, _: usize| false;
    let payload = match kind {
        GenKind::Gnp => Payload::Graph(gnp(&mut rng, p, &none)?),
        GenKind::Planar => Payload::Graph(planar(&mut rng, p)?),
        GenKind::Cpmc => {
            let g = gnp(&mut rng, p, &none)?;
            let mut nodes: Vec<usize> = (0..p.n).collect();
            nodes.shuffle(&mut rng);
            let source = nodes[0];
            let partners = nodes[1..1 + p.k].to_vec();
            let destinations = nodes[1 + p.k..1 + p.k + p.l].to_vec();
            Payload::Cpmc(CpmcInstance::new(
                g,
                source,
                partners,
                destinations,
                p.mode,
            )?)
        }
        GenKind::Tmc => {
            let mut nodes: Vec<usize> = (0..p.n).collect();
            nodes.shuffle(&mut rng);
            let client = nodes[0];
            let services = nodes[1..1 + p.k].to_vec();
            // No client-service edge, so isolating the client is always a finite cut.
            let sv = services.clone();
            let forbid = move |u: usize, v: usize| {
                (u == client && sv.contains(&v)) || (v == client && sv.contains(&u))
            };
            let g = gnp(&mut rng, p, &forbid)?;
            Payload::Tmc(TmcInstance::new(g, services, client, p.l, p.mode)?)
        }
        GenKind::Setcover => {
            let sets = random_sets(&mut rng, p.n, p.k, p.density, true);
            let weights = (0..p.k).map(|_| weight(&mut rng, p)).collect();
            let mut sc = SetCoverInstance::new(p.n, sets, weights)?;
            if p.l > 0 {
                sc = sc.with_budget(p.l as u64);
            }
            Payload::Setcover(sc)
        }
        GenKind::Cover => {
            let subsets = random_sets(&mut rng, p.n, p.k, p.density, false);
            let objective = if p.maximize {
                CoverObjective::Max { n1: p.l }
            } else {
                CoverObjective::Min { m: p.l }
            };
            Payload::Cover(CoverInstance::new(p.n, subsets, objective)?)
        }
        GenKind::Interdiction => {
            let q = GenParams {
                directed: true,
                ..p.clone()
            };
            let g = gnp(&mut rng, &q, &none)?;
            let cost = (0..g.m())
                .map(|_| Weight::Finite(weight(&mut rng, p)))
                .collect();
            let mut nodes: Vec<usize> = (0..p.n).collect();
            nodes.shuffle(&mut rng);
            let budget = if p.l > 0 { Some(p.l as u64) } else { None };
            let inst = InterdictionInstance {
                graph: g,
                source: nodes[0],
                sink: nodes[1],
                cost,
                budget,
            };
            inst.validate()?;
            Payload::Interdiction(inst)
        }
    };
    Ok(InstanceDocument::new(payload).with_seed(seed))
}

/// `k` random subsets of `0..n`, each element kept with probability `density`.
/// With `cover_all`, uncovered elements join a random subset; empty subsets get one element.
fn random_sets(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    density: f64,
    cover_all: bool,
) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    if cover_all {
        for a in 0..n {
            if !sets.iter().any(|s| s.contains(&a)) {
                let j = rng.gen_range(0..k);
                sets[j].push(a);
            }
        }
    }
    for s in sets.iter_mut() {
        if s.is_empty() && n > 0 {
            s.push(rng.gen_range(0..n));
        }
        s.sort_unstable();
    }
    sets
}
