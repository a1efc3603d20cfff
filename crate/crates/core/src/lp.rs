//! Exact-rational simplex for packing LPs `max c·x, Ax <= b, x >= 0, b >= 0`.
//!
//! Dense tableau, Bland's rule, slack starting basis. The dual solution is
//! read off the slack columns of the final objective row.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint matrix is {rows}x{cols}, but b has {b} and c has {c} entries")]
    Shape {
        rows: usize,
        cols: usize,
        b: usize,
        c: usize,
    },
    #[error("right-hand side {0} is negative; the slack basis is infeasible")]
    NegativeRhs(usize),
    #[error("objective is unbounded along variable {0}")]
    Unbounded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LPProblem {
    /// Row-major `m x n` constraint matrix.
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LPSolution {
    pub objective: Rat,
    pub primal: Vec<Rat>,
    pub dual: Vec<Rat>,
    /// Both assignments feasible and `c·x = b·y = objective`.
    pub certificate: bool,
    pub pivots: usize,
}

fn dot(u: &[Rat], v: &[Rat]) -> Rat {
    u.iter()
        .zip(v)
        .fold(Rat::zero(), |acc, (a, b)| &acc + &(a * b))
}

impl LPProblem {
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    fn check_shape(&self) -> Result<(), LpError> {
        let cols = self.cols();
        if self.b.len() != self.rows() || self.a.iter().any(|r| r.len() != cols) {
            return Err(LpError::Shape {
                rows: self.rows(),
                cols: self.a.first().map_or(cols, Vec::len),
                b: self.b.len(),
                c: cols,
            });
        }
        Ok(())
    }

    pub fn primal_feasible(&self, x: &[Rat]) -> bool {
        x.len() == self.cols()
            && x.iter().all(|v| !v.is_negative())
            && self
                .a
                .iter()
                .zip(&self.b)
                .all(|(row, bi)| dot(row, x) <= *bi)
    }

    /// `y >= 0` and `Aᵀy >= c`.
    pub fn dual_feasible(&self, y: &[Rat]) -> bool {
        y.len() == self.rows()
            && y.iter().all(|v| !v.is_negative())
            && (0..self.cols()).all(|j| {
                let col: Vec<Rat> = self.a.iter().map(|r| r[j].clone()).collect();
                dot(&col, y) >= self.c[j]
            })
    }

    /// Re-checks a solution from scratch.
    pub fn verify(&self, sol: &LPSolution) -> bool {
        self.primal_feasible(&sol.primal)
            && self.dual_feasible(&sol.dual)
            && dot(&self.c, &sol.primal) == sol.objective
            && dot(&self.b, &sol.dual) == sol.objective
    }

    pub fn solve(&self) -> Result<LPSolution, LpError> {
        self.check_shape()?;
        let (m, n) = (self.rows(), self.cols());
        if let Some(i) = self.b.iter().position(Rat::is_negative) {
            return Err(LpError::NegativeRhs(i));
        }
        let width = n + m + 1;
        let mut t: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut row = vec![BigRational::zero(); width];
                for (cell, a) in row.iter_mut().zip(&self.a[i]) {
                    *cell = a.as_big().clone();
                }
                row[n + i] = BigRational::from_integer(1.into());
                row[width - 1] = self.b[i].as_big().clone();
                row
            })
            .collect();
        let mut obj = vec![BigRational::zero(); width];
        for (cell, c) in obj.iter_mut().zip(&self.c) {
            *cell = -c.as_big().clone();
        }
        let mut basis: Vec<usize> = (n..n + m).collect();
        let mut pivots = 0;

        while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..m {
                if !t[i][enter].is_positive() {
                    continue;
                }
                let r = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
            let (row, _) = leave.ok_or(LpError::Unbounded(enter))?;
            let piv = t[row][enter].clone();
            for v in t[row].iter_mut() {
                *v /= &piv;
            }
            let pivot_row = t[row].clone();
            for (i, r) in t.iter_mut().enumerate() {
                if i == row || r[enter].is_zero() {
                    continue;
                }
                let factor = r[enter].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
            let factor = obj[enter].clone();
            for (v, p) in obj.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
            basis[row] = enter;
            pivots += 1;
        }

        let mut primal = vec![Rat::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                primal[bv] = Rat::from_big(t[i][width - 1].clone());
            }
        }
        let dual: Vec<Rat> = (0..m).map(|i| Rat::from_big(obj[n + i].clone())).collect();
        let objective = Rat::from_big(obj[width - 1].clone());
        let mut sol = LPSolution {
            objective,
            primal,
            dual,
            certificate: false,
            pivots,
        };
        sol.certificate = self.verify(&sol);
        Ok(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rat>> {
        m.iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect()
    }

    #[test]
    fn triangle_matching() {
        // Three pairwise-meeting sets, each point in exactly two of them.
        let lp = LPProblem {
            a: rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
            b: vec![r(1); 3],
            c: vec![r(1); 3],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, Rat::new(3, 2));
        assert!(sol.certificate);
        assert_eq!(sol.primal, vec![Rat::new(1, 2); 3]);
    }

    #[test]
    fn textbook_example() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 → 36 at (2, 6)
        let lp = LPProblem {
            a: rows(&[&[1, 0], &[0, 2], &[3, 2]]),
            b: vec![r(4), r(12), r(18)],
            c: vec![r(3), r(5)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, r(36));
        assert_eq!(sol.primal, vec![r(2), r(6)]);
        assert_eq!(sol.dual, vec![r(0), Rat::new(3, 2), r(1)]);
        assert!(sol.certificate);
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // A classic cycling instance under the largest-coefficient rule.
        let q = |n, d| Rat::new(n, d);
        let lp = LPProblem {
            a: vec![
                vec![q(1, 4), q(-8, 1), q(-1, 1), q(9, 1)],
                vec![q(1, 2), q(-12, 1), q(-1, 2), q(3, 1)],
                vec![r(0), r(0), r(1), r(0)],
            ],
            b: vec![r(0), r(0), r(1)],
            c: vec![q(3, 4), q(-20, 1), q(1, 2), q(-6, 1)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, Rat::new(5, 4));
        assert!(sol.certificate);
    }

    #[test]
    fn unbounded_and_shape_errors() {
        let lp = LPProblem {
            a: rows(&[&[1, 0]]),
            b: vec![r(1)],
            c: vec![r(1), r(1)],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Unbounded(1));
        let bad = LPProblem {
            a: rows(&[&[1]]),
            b: vec![],
            c: vec![r(1)],
        };
        assert!(matches!(bad.solve(), Err(LpError::Shape { .. })));
        let neg = LPProblem {
            a: rows(&[&[1]]),
            b: vec![r(-1)],
            c: vec![r(1)],
        };
        assert_eq!(neg.solve().unwrap_err(), LpError::NegativeRhs(0));
    }
}
