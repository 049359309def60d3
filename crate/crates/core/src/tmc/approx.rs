//! LP relaxation and rounding for threshold node cuts.

use super::lp::{solve_lp, LpModel, LpSolution, Sense};
use super::TmcInstance;
use crate::error::{Error, Result};
use crate::graph::{CutKind, CutSolution};

fn check(inst: &TmcInstance) -> Result<()> {
    inst.validate()?;
    if inst.mode != CutKind::Node || inst.graph.is_directed() {
        return Err(Error::InvalidInstance(
            "LP rounding needs an undirected node-cut instance".into(),
        ));
    }
    Ok(())
}

/// LP with one `X` per cuttable node and one `Y` per node.
///
/// Variables `0..n` are `Y`; `X` variables follow in candidate order. Returns
/// the model and, per node, the index of its `X` variable.
pub fn tmnc_lp_model(inst: &TmcInstance) -> Result<(LpModel, Vec<Option<usize>>)> {
    check(inst)?;
    let g = &inst.graph;
    let n = g.n();
    let cut_graph = inst.cut_graph();
    let mut x_of = vec![None; n];
    let mut next = n;
    for v in 0..n {
        if !cut_graph.node_weight(v).is_inf() {
            x_of[v] = Some(next);
            next += 1;
        }
    }
    let mut lp = LpModel::new(next);
    for v in 0..n {
        lp.names[v] = format!("Y{v}");
        lp.upper[v] = Some(1.0);
        if let Some(x) = x_of[v] {
            lp.names[x] = format!("X{v}");
            lp.upper[x] = Some(1.0);
            lp.objective[x] = cut_graph.node_weight(v).finite().unwrap() as f64;
        }
    }
    for &(u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            // Y_a ≤ X_a + Y_b
            let mut coeffs = vec![(a, 1.0), (b, -1.0)];
            if let Some(x) = x_of[a] {
                coeffs.push((x, -1.0));
            }
            lp.add(coeffs, Sense::Le, 0.0);
        }
    }
    lp.add(vec![(inst.client, 1.0)], Sense::Eq, 0.0);
    lp.add(
        inst.services.iter().map(|&s| (s, 1.0)).collect(),
        Sense::Ge,
        inst.threshold as f64,
    );
    Ok((lp, x_of))
}

fn solve_relaxation(inst: &TmcInstance) -> Result<LpSolution> {
    let (lp, _) = tmnc_lp_model(inst)?;
    solve_lp(&lp)
}

/// Optimal value of the relaxation, a lower bound on the optimum.
pub fn tmnc_lp_bound(inst: &TmcInstance) -> Result<f64> {
    Ok(solve_relaxation(inst)?.objective)
}

/// Rounds the relaxation into a feasible node cut.
///
/// With `l < √n` the `l` services with the cheapest individual cuts are
/// separated. Otherwise services are ranked by their `Y` value; the prefix
/// above `1/√n` is kept and topped up with the cheapest remaining services.
pub fn solve_tmnc_lp(inst: &TmcInstance) -> Result<CutSolution> {
    check(inst)?;
    let n = inst.graph.n();
    let k = inst.k();
    let l = inst.threshold;
    let root = (n as f64).sqrt();
    let single: Vec<Option<u64>> = inst
        .services
        .iter()
        .map(|&s| match inst.cut_value(&[s]) {
            Ok(v) => Ok(Some(v)),
            Err(Error::NoFiniteCut) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    if single.iter().flatten().count() < l {
        return Err(Error::NoFiniteCut);
    }
    let cheapest = |pool: &[usize]| -> Vec<usize> {
        let mut p: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&i| single[i].is_some())
            .collect();
        p.sort_by_key(|&i| (single[i], i));
        p
    };

    let chosen: Vec<usize> = if (l as f64) < root {
        cheapest(&(0..k).collect::<Vec<_>>())[..l].to_vec()
    } else {
        let sol = solve_relaxation(inst)?;
        let mut order: Vec<usize> = (0..k).collect();
        let y = |i: usize| sol.values[inst.services[i]];
        order.sort_by(|&a, &b| y(b).total_cmp(&y(a)).then(a.cmp(&b)));
        // 1-based position of the first service below 1/√n, k+1 if none.
        let cutoff = 1.0 / root - 1e-9;
        let i = order
            .iter()
            .position(|&s| y(s) < cutoff)
            .map_or(k + 1, |p| p + 1);
        if i > l {
            order[..l].to_vec()
        } else {
            let mut picked = order[..i - 1].to_vec();
            let need = l - i + 1;
            let mut rest = cheapest(&order[i..]);
            if rest.len() < need {
                rest = cheapest(&order[i - 1..]);
            }
            if rest.len() < need {
                return Err(Error::NoFiniteCut);
            }
            picked.extend(&rest[..need]);
            picked
        }
    };
    let targets: Vec<usize> = chosen.iter().map(|&i| inst.services[i]).collect();
    let sol = inst.cut_services(&targets)?;
    debug_assert!(sol.feasible);
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Weight, WeightedGraph};
    use crate::tmc::lp::LP_TOLERANCE;
    use crate::tmc::solve_tmc_exact;
    use crate::tmc::tests::star;

    #[test]
    fn star_is_solved_optimally() {
        let inst = star();
        let sol = solve_tmnc_lp(&inst).unwrap();
        assert_eq!(sol.weight, 3);
        assert!(sol.feasible);
        assert!(tmnc_lp_bound(&inst).unwrap() <= 3.0 + LP_TOLERANCE);
    }

    #[test]
    fn single_path_lp() {
        // A=0, m=1 with weight 5, S1=2.
        let g = WeightedGraph::new(
            false,
            vec![Weight::Finite(1), Weight::Finite(5), Weight::Finite(1)],
            vec![(0, 1, Weight::Finite(1)), (1, 2, Weight::Finite(1))],
        )
        .unwrap();
        let inst = TmcInstance::new(g, vec![2], 0, 1, CutKind::Node).unwrap();
        let (lp, x_of) = tmnc_lp_model(&inst).unwrap();
        let s = solve_lp(&lp).unwrap();
        assert!((s.values[x_of[1].unwrap()] - 1.0).abs() < LP_TOLERANCE);
        assert!((s.values[2] - 1.0).abs() < LP_TOLERANCE);
        assert!((s.objective - 5.0).abs() < LP_TOLERANCE);
        assert_eq!(solve_tmnc_lp(&inst).unwrap().weight, 5);
    }

    #[test]
    fn two_parallel_paths_lp_matches_min_cut() {
        // A=0, intermediates 1 and 2, S1=3.
        let g = WeightedGraph::unit(4, false, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let inst = TmcInstance::new(g, vec![3], 0, 1, CutKind::Node).unwrap();
        assert!((tmnc_lp_bound(&inst).unwrap() - 2.0).abs() < LP_TOLERANCE);
        assert_eq!(solve_tmc_exact(&inst).unwrap().weight, 2);
    }

    #[test]
    fn edge_mode_rejected() {
        let g = WeightedGraph::unit(3, false, &[(0, 1), (1, 2)]).unwrap();
        let inst = TmcInstance::new(g, vec![2], 0, 1, CutKind::Edge).unwrap();
        assert!(solve_tmnc_lp(&inst).is_err());
    }
}
