//! Dense two-phase simplex with Bland's rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Feasibility tolerance for constraints and phase one.
pub const LP_TOLERANCE: f64 = 1e-7;
const PIVOT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Sparse linear constraint `Σ coeff·x sense rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// Minimize `objective · x` subject to the constraints, `x ≥ 0` and optional upper bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpModel {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub upper: Vec<Option<f64>>,
    pub names: Vec<String>,
}

impl LpModel {
    pub fn new(num_vars: usize) -> Self {
        LpModel {
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
            upper: vec![None; num_vars],
            names: (0..num_vars).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    /// Largest violation of any constraint or bound by `x`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in &self.constraints {
            let lhs: f64 = c.coeffs.iter().map(|&(i, a)| a * x[i]).sum();
            let v = match c.sense {
                Sense::Le => lhs - c.rhs,
                Sense::Ge => c.rhs - lhs,
                Sense::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        for (i, &xi) in x.iter().enumerate() {
            worst = worst.max(-xi);
            if let Some(u) = self.upper[i] {
                worst = worst.max(xi - u);
            }
        }
        worst
    }

    fn well_formed(&self) -> Result<()> {
        let n = self.num_vars();
        if self.upper.len() != n {
            return Err(Error::InvalidInstance(
                "upper bounds length differs from variable count".into(),
            ));
        }
        let finite = |x: f64| x.is_finite();
        if !self.objective.iter().all(|&c| finite(c)) {
            return Err(Error::InvalidInstance(
                "non-finite objective coefficient".into(),
            ));
        }
        for c in &self.constraints {
            if !finite(c.rhs) || c.coeffs.iter().any(|&(i, a)| i >= n || !finite(a)) {
                return Err(Error::InvalidInstance("malformed constraint".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    iterations: usize,
    limit: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize, cost_row: &mut [f64]) {
        let p = self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let f = cost_row[c];
        if f != 0.0 {
            for (x, &y) in cost_row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row for `cost` given the current basis; last entry is minus the objective.
    fn cost_row(&self, cost: &[f64]) -> Vec<f64> {
        let mut row = cost.to_vec();
        row.push(0.0);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (x, &y) in row.iter_mut().zip(&self.rows[r]) {
                    *x -= cb * y;
                }
            }
        }
        row
    }

    /// Minimizes over columns in `allowed`; returns the objective.
    fn run(&mut self, cost: &[f64], allowed: &[bool]) -> Result<f64> {
        let mut z = self.cost_row(cost);
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed[j] && z[j] < -PIVOT_EPS) else {
                return Ok(-z[self.cols]);
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][c];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r) / a;
                    let better = match best {
                        None => true,
                        Some((br, _, bb)) => {
                            ratio < br - PIVOT_EPS
                                || (ratio <= br + PIVOT_EPS && self.basis[r] < bb)
                        }
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return Err(Error::LpUnbounded);
            };
            self.iterations += 1;
            if self.iterations > self.limit {
                return Err(Error::IterationLimit(self.limit));
            }
            self.pivot(r, c, &mut z);
        }
    }
}

/// Solves the model to an optimal basic solution.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    model.well_formed()?;
    let n = model.num_vars();
    let mut rows: Vec<(Vec<f64>, Sense, f64)> = Vec::new();
    for c in &model.constraints {
        let mut a = vec![0.0; n];
        for &(i, v) in &c.coeffs {
            a[i] += v;
        }
        rows.push((a, c.sense, c.rhs));
    }
    for (i, u) in model.upper.iter().enumerate() {
        if let Some(u) = *u {
            let mut a = vec![0.0; n];
            a[i] = 1.0;
            rows.push((a, Sense::Le, u));
        }
    }
    for (a, sense, b) in rows.iter_mut() {
        if *b < 0.0 {
            a.iter_mut().for_each(|x| *x = -*x);
            *b = -*b;
            *sense = match *sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }
    let m = rows.len();
    let slacks = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let arts = rows.iter().filter(|r| r.1 != Sense::Le).count();
    let cols = n + slacks + arts;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        cols,
        iterations: 0,
        limit: 50 * (m + cols) + 10_000,
    };
    let (mut s, mut a) = (n, n + slacks);
    for (coef, sense, b) in &rows {
        let mut row = vec![0.0; cols + 1];
        row[..n].copy_from_slice(coef);
        row[cols] = *b;
        match sense {
            Sense::Le => {
                row[s] = 1.0;
                tab.basis.push(s);
                s += 1;
            }
            Sense::Ge => {
                row[s] = -1.0;
                row[a] = 1.0;
                tab.basis.push(a);
                s += 1;
                a += 1;
            }
            Sense::Eq => {
                row[a] = 1.0;
                tab.basis.push(a);
                a += 1;
            }
        }
        tab.rows.push(row);
    }
    let is_art = |j: usize| j >= n + slacks;

    if arts > 0 {
        let mut cost = vec![0.0; cols];
        cost[n + slacks..].iter_mut().for_each(|c| *c = 1.0);
        let all = vec![true; cols];
        let infeas = tab.run(&cost, &all)?;
        if infeas > LP_TOLERANCE {
            return Err(Error::LpInfeasible);
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..n + slacks).find(|&j| tab.rows[r][j].abs() > PIVOT_EPS) {
                    Some(c) => {
                        let mut dummy = vec![0.0; cols + 1];
                        tab.pivot(r, c, &mut dummy);
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut cost = vec![0.0; cols];
    cost[..n].copy_from_slice(&model.objective);
    let allowed: Vec<bool> = (0..cols).map(|j| !is_art(j)).collect();
    tab.run(&cost, &allowed)?;
    let mut values = vec![0.0; n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            values[b] = tab.rhs(r).max(0.0);
        }
    }
    let objective = values
        .iter()
        .zip(&model.objective)
        .map(|(x, c)| x * c)
        .sum();
    Ok(LpSolution {
        values,
        objective,
        iterations: tab.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_lower_bound() {
        let mut m = LpModel::new(1);
        m.objective[0] = 1.0;
        m.upper[0] = Some(10.0);
        m.add(vec![(0, 1.0)], Sense::Ge, 3.0);
        let s = solve_lp(&m).unwrap();
        assert!((s.values[0] - 3.0).abs() < LP_TOLERANCE);
        assert!((s.objective - 3.0).abs() < LP_TOLERANCE);
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36.
        let mut m = LpModel::new(2);
        m.objective = vec![-3.0, -5.0];
        m.add(vec![(0, 1.0)], Sense::Le, 4.0);
        m.add(vec![(1, 2.0)], Sense::Le, 12.0);
        m.add(vec![(0, 3.0), (1, 2.0)], Sense::Le, 18.0);
        let s = solve_lp(&m).unwrap();
        assert!((s.objective + 36.0).abs() < 1e-9);
        assert!(m.violation(&s.values) < LP_TOLERANCE);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut m = LpModel::new(1);
        m.add(vec![(0, 1.0)], Sense::Ge, 2.0);
        m.add(vec![(0, 1.0)], Sense::Le, 1.0);
        assert_eq!(solve_lp(&m), Err(Error::LpInfeasible));
        let mut m = LpModel::new(2);
        m.objective = vec![-1.0, 0.0];
        m.add(vec![(0, 1.0), (1, -1.0)], Sense::Le, 1.0);
        assert_eq!(solve_lp(&m), Err(Error::LpUnbounded));
    }

    #[test]
    fn equality_and_redundant_rows() {
        let mut m = LpModel::new(2);
        m.objective = vec![1.0, 2.0];
        m.add(vec![(0, 1.0), (1, 1.0)], Sense::Eq, 1.0);
        m.add(vec![(0, 2.0), (1, 2.0)], Sense::Eq, 2.0);
        m.add(vec![(0, 1.0)], Sense::Le, 0.25);
        let s = solve_lp(&m).unwrap();
        assert!((s.objective - 1.75).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_normalised() {
        let mut m = LpModel::new(1);
        m.objective[0] = 1.0;
        m.add(vec![(0, -1.0)], Sense::Le, -2.5);
        assert!((solve_lp(&m).unwrap().values[0] - 2.5).abs() < 1e-9);
    }
}
