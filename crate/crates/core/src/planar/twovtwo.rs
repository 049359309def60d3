//! The 2-vs-2 planar edge cut procedure over a pluggable 3-node solver.

use crate::cpmc::{solve_cpmc_exact, CpmcInstance, CpmcOutcome};
use crate::error::{Error, Result};
use crate::graph::{CutKind, CutSolution};

use super::embedding::PlanarEmbedding;

/// Solves connectivity preserving cut instances with one source, a partner
/// set and a destination set.
pub trait ThreeNodeSolver {
    fn solve(&self, inst: &CpmcInstance) -> Result<CpmcOutcome>;
}

/// The exact enumerative oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOracle;

impl ThreeNodeSolver for ExactOracle {
    fn solve(&self, inst: &CpmcInstance) -> Result<CpmcOutcome> {
        solve_cpmc_exact(inst)
    }
}

/// One evaluated face completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub face: usize,
    /// The node where growth touched the face of `s2`.
    pub touch: usize,
    pub clockwise: bool,
    pub weight: Option<u64>,
}

/// Trace of the procedure: the direct solve and each face completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVsTwoRun {
    pub cut: CutSolution,
    pub completions: Vec<Completion>,
}

/// Minimum edge cut separating `{s1, s2}` from `{s1p, s2p}` that keeps both
/// pairs connected.
pub fn solve_2v2_planar_cpmec(
    emb: &PlanarEmbedding,
    s1: usize,
    s2: usize,
    s1p: usize,
    s2p: usize,
    backend: &dyn ThreeNodeSolver,
) -> Result<CutSolution> {
    run_2v2(emb, s1, s2, s1p, s2p, backend).map(|r| r.cut)
}

/// Same as [`solve_2v2_planar_cpmec`], keeping the per-completion trace.
pub fn run_2v2(
    emb: &PlanarEmbedding,
    s1: usize,
    s2: usize,
    s1p: usize,
    s2p: usize,
    backend: &dyn ThreeNodeSolver,
) -> Result<TwoVsTwoRun> {
    let g = &emb.graph;
    let base = CpmcInstance::new(g.clone(), s1, vec![s2], vec![s1p, s2p], CutKind::Edge)?
        .preserving_destinations();
    let mut best = backend.solve(&base)?.cut().cloned();

    // Growth from s1 that touches the face of s2 at some node must claim one
    // of the two boundary arcs between that node and s2. Each arc becomes a
    // set of extra partners; any feasible answer is feasible for the base.
    let terminals = [s1, s2, s1p, s2p];
    let mut completions = Vec::new();
    for f in emb.faces_of(s2) {
        let walk = emb.face_nodes(f);
        let len = walk.len();
        let at = walk.iter().position(|&x| x == s2).expect("face touches s2");
        for (k, &touch) in walk.iter().enumerate() {
            if terminals.contains(&touch) {
                continue;
            }
            for clockwise in [true, false] {
                let mut arc = Vec::new();
                let mut i = k;
                let mut blocked = false;
                while i != at {
                    let x = walk[i];
                    if x == s1p || x == s2p {
                        blocked = true;
                        break;
                    }
                    if !terminals.contains(&x) && !arc.contains(&x) {
                        arc.push(x);
                    }
                    i = if clockwise {
                        (i + 1) % len
                    } else {
                        (i + len - 1) % len
                    };
                }
                if blocked {
                    completions.push(Completion {
                        face: f,
                        touch,
                        clockwise,
                        weight: None,
                    });
                    continue;
                }
                let mut partners = vec![s2];
                partners.extend(arc);
                let mut inst = base.clone();
                inst.partners = partners;
                let out = backend.solve(&inst)?;
                completions.push(Completion {
                    face: f,
                    touch,
                    clockwise,
                    weight: out.weight(),
                });
                if let Some(c) = out.cut() {
                    if best
                        .as_ref()
                        .map_or(true, |b| (c.weight, &c.members) < (b.weight, &b.members))
                    {
                        best = Some(base.solution(c.members.clone()));
                    }
                }
            }
        }
    }
    match best {
        Some(cut) => Ok(TwoVsTwoRun { cut, completions }),
        None => Err(Error::Infeasible),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::planar::build_embedding;

    #[test]
    fn cycle_with_one_valid_cut() {
        // 4-cycle s1 - a - s2 - s2p - b - s1p - s1 with the partner sides on opposite arcs.
        // Nodes: 0 = s1, 1 = s2, 2 = s1p, 3 = s2p, 4 = a, 5 = b.
        let g = WeightedGraph::with_edge_weights(
            6,
            false,
            &[
                (0, 4, 5),
                (4, 1, 5),
                (1, 3, 1),
                (3, 5, 5),
                (5, 2, 5),
                (2, 0, 1),
            ],
        )
        .unwrap();
        let emb = build_embedding(&g).unwrap();
        let cut = solve_2v2_planar_cpmec(&emb, 0, 1, 2, 3, &ExactOracle).unwrap();
        assert_eq!(cut.members, vec![2, 5]);
        assert_eq!(cut.weight, 2);
        assert!(cut.feasible);
    }

    #[test]
    fn interleaved_is_infeasible() {
        // Cycle s1, s1p, s2, s2p: keeping s1 ~ s2 crosses any path s1p ~ s2p.
        let g = WeightedGraph::unit(4, false, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let emb = build_embedding(&g).unwrap();
        assert_eq!(
            solve_2v2_planar_cpmec(&emb, 0, 1, 2, 3, &ExactOracle).unwrap_err(),
            Error::Infeasible
        );
    }

    #[test]
    fn completions_never_beat_the_direct_solve() {
        let g = WeightedGraph::unit(
            9,
            false,
            &[
                (0, 1),
                (1, 2),
                (3, 4),
                (4, 5),
                (6, 7),
                (7, 8),
                (0, 3),
                (3, 6),
                (1, 4),
                (4, 7),
                (2, 5),
                (5, 8),
            ],
        )
        .unwrap();
        let emb = build_embedding(&g).unwrap();
        let run = run_2v2(&emb, 0, 2, 6, 8, &ExactOracle).unwrap();
        assert_eq!(run.cut.weight, 3);
        assert!(!run.completions.is_empty());
        for c in &run.completions {
            if let Some(w) = c.weight {
                assert!(w >= run.cut.weight);
            }
        }
    }
}
