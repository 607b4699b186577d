//! Dense two-phase simplex over an exact ordered field.
//!
//! Problems are in standard form `A x = b, x >= 0`, optionally maximizing
//! `c . x`. Pivoting follows Bland's rule, so degenerate problems (collinear
//! payoff points are common) terminate.

use crate::error::{Error, Result};

use super::field::ExactField;

#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    pub rows: Vec<Vec<F>>,
    pub rhs: Vec<F>,
    /// Maximized when present.
    pub objective: Option<Vec<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { x: Vec<F>, value: F },
    Infeasible,
    Unbounded,
}

impl<F: ExactField> LinearProgram<F> {
    pub fn feasibility(rows: Vec<Vec<F>>, rhs: Vec<F>) -> Self {
        LinearProgram {
            rows,
            rhs,
            objective: None,
        }
    }

    pub fn maximize(rows: Vec<Vec<F>>, rhs: Vec<F>, objective: Vec<F>) -> Self {
        LinearProgram {
            rows,
            rhs,
            objective: Some(objective),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.rows
            .first()
            .map(Vec::len)
            .or_else(|| self.objective.as_ref().map(Vec::len))
            .unwrap_or(0)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.num_vars();
        if self.rows.len() != self.rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: self.rhs.len(),
            });
        }
        for row in &self.rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        if let Some(c) = &self.objective {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: c.len(),
                });
            }
        }
        Ok(())
    }

    /// Exact substitution check of `A x = b, x >= 0`.
    pub fn is_feasible_point(&self, x: &[F]) -> bool {
        if x.len() != self.num_vars() || x.iter().any(ExactField::is_negative) {
            return false;
        }
        self.rows.iter().zip(&self.rhs).all(|(row, b)| {
            let lhs = row
                .iter()
                .zip(x)
                .fold(F::zero(), |acc, (a, xi)| acc + a.clone() * xi.clone());
            lhs == *b
        })
    }

    pub fn solve(&self) -> Result<LpOutcome<F>> {
        self.check_shape()?;
        Ok(Tableau::new(self).run(self.objective.as_deref()))
    }
}

/// Finds a point of `{x >= 0 : A x = b}` or reports infeasibility.
pub fn lp_feasible<F: ExactField>(rows: Vec<Vec<F>>, rhs: Vec<F>) -> Result<Option<Vec<F>>> {
    match LinearProgram::feasibility(rows, rhs).solve()? {
        LpOutcome::Optimal { x, .. } => Ok(Some(x)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("feasibility problems have no objective"),
    }
}

struct Tableau<F> {
    /// `m` rows of `[A | artificials | b]`.
    t: Vec<Vec<F>>,
    basis: Vec<usize>,
    n: usize,
    /// Reduced costs `z_j - c_j`, last entry is the objective value.
    obj: Vec<F>,
}

impl<F: ExactField> Tableau<F> {
    fn new(lp: &LinearProgram<F>) -> Self {
        let m = lp.rows.len();
        let n = lp.num_vars();
        let width = n + m + 1;
        let mut t = Vec::with_capacity(m);
        for (r, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut line = Vec::with_capacity(width);
            for a in row {
                line.push(if flip { -a.clone() } else { a.clone() });
            }
            for k in 0..m {
                line.push(if k == r { F::one() } else { F::zero() });
            }
            line.push(if flip { -b.clone() } else { b.clone() });
            t.push(line);
        }
        // phase one: maximize -(sum of artificials)
        let mut obj = vec![F::zero(); width];
        for line in &t {
            for j in 0..n {
                obj[j] = obj[j].clone() - line[j].clone();
            }
            obj[width - 1] = obj[width - 1].clone() - line[width - 1].clone();
        }
        Tableau {
            t,
            basis: (n..n + m).collect(),
            n,
            obj,
        }
    }

    fn rhs_col(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule iterations over columns `< limit`. Returns `false` if unbounded.
    fn iterate(&mut self, limit: usize) -> bool {
        let rhs = self.rhs_col();
        loop {
            let Some(col) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, F)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.t[r][rhs].clone() / a.clone();
                best = match best {
                    None => Some((r, ratio)),
                    Some((br, bv)) => {
                        let diff = ratio.clone() - bv.clone();
                        if diff.is_negative()
                            || (diff.is_zero() && self.basis[r] < self.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    }
                };
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn run(mut self, objective: Option<&[F]>) -> LpOutcome<F> {
        let n = self.n;
        let total = self.rhs_col();
        self.iterate(total);
        if self.obj[total].is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < self.t.len() {
            if self.basis[r] >= n {
                match (0..n).find(|&j| !self.t[r][j].is_zero()) {
                    Some(j) => {
                        self.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        self.t.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        // phase two on the original columns
        for line in self.t.iter_mut() {
            let b = line[total].clone();
            line.truncate(n);
            line.push(b);
        }
        let zero = vec![F::zero(); n];
        let c = objective.unwrap_or(&zero);
        let mut obj: Vec<F> = c.iter().map(|cj| -cj.clone()).collect();
        obj.push(F::zero());
        for (line, &bv) in self.t.iter().zip(&self.basis) {
            let cb = c[bv].clone();
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(line) {
                *o = o.clone() + cb.clone() * v.clone();
            }
        }
        self.obj = obj;
        if !self.iterate(n) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![F::zero(); n];
        for (line, &bv) in self.t.iter().zip(&self.basis) {
            x[bv] = line[n].clone();
        }
        LpOutcome::Optimal {
            x,
            value: self.obj[n].clone(),
        }
    }
}
