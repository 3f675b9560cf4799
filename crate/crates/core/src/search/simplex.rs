//! Dense two-phase simplex for small linear programs.
//!
//! Entering and leaving variables follow Bland's rule (lowest index), which
//! rules out cycling. The solver is meant for problems with tens of
//! variables; nothing here is sparse.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::tolerance;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `maximize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constrain(&mut self, name: impl Into<String>, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.variables(), "constraint width");
        self.constraints.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<LpSolution> {
        Tableau::build(self).solve(&self.objective)
    }

    /// Optimal solution that is lexicographically smallest in `x` among all
    /// optimal solutions, found by minimising each coordinate in turn.
    pub fn solve_lexicographic(&self) -> Result<LpSolution> {
        let best = self.solve()?;
        let slack = tolerance::OPTIMIZATION * (1.0 + best.value.abs());
        let mut lp = self.clone();
        lp.constrain(
            "optimality",
            self.objective.clone(),
            Relation::Ge,
            best.value - slack,
        );
        let mut x = best.x;
        for i in 0..self.variables() {
            let mut unit = vec![0.0; self.variables()];
            unit[i] = -1.0;
            let step = LinearProgram {
                objective: unit.clone(),
                constraints: lp.constraints.clone(),
            };
            let sol = step.solve()?;
            let xi = sol.x[i];
            unit[i] = 1.0;
            lp.constrain("lexicographic", unit, Relation::Le, xi + tolerance::OPTIMIZATION);
            x = sol.x;
        }
        Ok(LpSolution { value: best.value, x })
    }
}

struct Tableau {
    /// `rows x (columns + 1)`; the last column is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    structural: usize,
    artificial_start: usize,
    columns: usize,
    names: Vec<String>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.variables();
        let m = lp.constraints.len();
        let slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let artificial_start = n + slacks;
        let columns = artificial_start + m;
        let mut t = vec![vec![0.0; columns + 1]; m];
        let mut basis = vec![0; m];
        let mut slack = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            // keep right-hand sides non-negative
            let sign = if c.rhs < 0.0 { -1.0 } else { 1.0 };
            for (j, &a) in c.coeffs.iter().enumerate() {
                t[i][j] = sign * a;
            }
            t[i][columns] = sign * c.rhs;
            match c.relation {
                Relation::Le => {
                    t[i][slack] = sign;
                    slack += 1;
                }
                Relation::Ge => {
                    t[i][slack] = -sign;
                    slack += 1;
                }
                Relation::Eq => {}
            }
            t[i][artificial_start + i] = 1.0;
            basis[i] = artificial_start + i;
        }
        // a slack with coefficient +1 can start in the basis directly
        for i in 0..m {
            if let Some(j) = (n..artificial_start).find(|&j| t[i][j] == 1.0) {
                basis[i] = j;
            }
        }
        Tableau {
            t,
            basis,
            structural: n,
            artificial_start,
            columns,
            names: lp.constraints.iter().map(|c| c.name.clone()).collect(),
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, &pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximises `cost . x` over columns `< limit`.
    fn optimize(&mut self, cost: &[f64], limit: usize) -> Result<()> {
        let rhs = self.columns;
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j]
                    - self
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| cost[b] * self.t[i][j])
                        .sum::<f64>();
                reduced > tolerance::PIVOT
            });
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let a = self.t[i][col];
                if a > tolerance::PIVOT {
                    let ratio = self.t[i][rhs] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((k, r)) => {
                            if ratio < r - tolerance::ALGEBRAIC
                                || (ratio <= r + tolerance::ALGEBRAIC && self.basis[i] < self.basis[k])
                            {
                                Some((i, ratio))
                            } else {
                                Some((k, r))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(row, col);
        }
    }

    fn solve(mut self, objective: &[f64]) -> Result<LpSolution> {
        let rhs = self.columns;
        let mut phase1 = vec![0.0; self.columns];
        for c in phase1.iter_mut().skip(self.artificial_start) {
            *c = -1.0;
        }
        self.optimize(&phase1, self.columns)?;
        let residual: f64 = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.artificial_start)
            .map(|(i, _)| self.t[i][rhs])
            .sum();
        if residual > tolerance::OPTIMIZATION {
            let worst = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| b >= self.artificial_start)
                .max_by(|a, b| self.t[a.0][rhs].total_cmp(&self.t[b.0][rhs]))
                .map(|(_, &b)| self.names[b - self.artificial_start].clone())
                .unwrap_or_default();
            return Err(Error::Infeasible(worst));
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..self.t.len() {
            if self.basis[i] >= self.artificial_start {
                if let Some(j) = (0..self.artificial_start).find(|&j| self.t[i][j].abs() > tolerance::PIVOT) {
                    self.pivot(i, j);
                }
            }
        }
        let mut cost = vec![0.0; self.columns];
        cost[..self.structural].copy_from_slice(objective);
        self.optimize(&cost, self.artificial_start)?;
        let mut x = vec![0.0; self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                x[b] = self.t[i][rhs].max(0.0);
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution { value, x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::maximize(vec![3.0, 5.0]);
        lp.constrain("a", vec![1.0, 0.0], Relation::Le, 4.0);
        lp.constrain("b", vec![0.0, 2.0], Relation::Le, 12.0);
        lp.constrain("c", vec![3.0, 2.0], Relation::Le, 18.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 36.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12 && (s.x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn equality_and_ge_constraints() {
        // max x + y, x + y + z = 1, x >= 0.25, z >= 0.5
        let mut lp = LinearProgram::maximize(vec![1.0, 1.0, 0.0]);
        lp.constrain("norm", vec![1.0, 1.0, 1.0], Relation::Eq, 1.0);
        lp.constrain("x", vec![1.0, 0.0, 0.0], Relation::Ge, 0.25);
        lp.constrain("z", vec![0.0, 0.0, 1.0], Relation::Ge, 0.5);
        let s = lp.solve().unwrap();
        assert!((s.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn infeasible_names_a_constraint() {
        let mut lp = LinearProgram::maximize(vec![1.0]);
        lp.constrain("low", vec![1.0], Relation::Le, 1.0);
        lp.constrain("high", vec![1.0], Relation::Ge, 2.0);
        assert_eq!(lp.solve().unwrap_err(), Error::Infeasible("high".into()));
    }

    #[test]
    fn unbounded_is_reported() {
        let mut lp = LinearProgram::maximize(vec![1.0, 0.0]);
        lp.constrain("a", vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(lp.solve().unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn negative_rhs() {
        // max -x, -x <= -2 -> x = 2
        let mut lp = LinearProgram::maximize(vec![-1.0]);
        lp.constrain("a", vec![-1.0], Relation::Le, -2.0);
        let s = lp.solve().unwrap();
        assert!((s.x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::maximize(vec![1.0, 0.0]);
        lp.constrain("n1", vec![1.0, 1.0], Relation::Eq, 1.0);
        lp.constrain("n2", vec![2.0, 2.0], Relation::Eq, 2.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lexicographic_witness() {
        // every point of the simplex x + y + z = 1 maximises 0
        let mut lp = LinearProgram::maximize(vec![0.0, 0.0, 0.0]);
        lp.constrain("norm", vec![1.0, 1.0, 1.0], Relation::Eq, 1.0);
        let s = lp.solve_lexicographic().unwrap();
        assert!(s.x[0].abs() < 1e-8 && s.x[1].abs() < 1e-8);
        assert!((s.x[2] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // classic cycling example for Dantzig's rule
        let mut lp = LinearProgram::maximize(vec![10.0, -57.0, -9.0, -24.0]);
        lp.constrain("a", vec![0.5, -5.5, -2.5, 9.0], Relation::Le, 0.0);
        lp.constrain("b", vec![0.5, -1.5, -0.5, 1.0], Relation::Le, 0.0);
        lp.constrain("c", vec![1.0, 0.0, 0.0, 0.0], Relation::Le, 1.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 1.0).abs() < 1e-9);
    }
}
