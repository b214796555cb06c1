//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are stated over free variables `x ∈ Qⁿ` with equalities
//! `a·x = b` and inequalities `a·x ≥ b`; internally each `x_i` is split into
//! `x_i⁺ − x_i⁻` and each inequality receives a surplus variable.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::num::Rational;

/// Outcome of [`minimize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rational>, value: Rational },
}

/// A linear constraint `a·x (= | ≥) b`.
pub type Row = (Vec<Rational>, Rational);

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost·z` over columns `< active`; returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], active: usize) -> bool {
        loop {
            let mut entering = None;
            for j in 0..active {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => match ratio.cmp(best) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*k],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, j);
        }
    }
}

/// Minimizes `c·x` subject to `eqs` (`a·x = b`) and `ineqs` (`a·x ≥ b`).
pub fn minimize(c: &[Rational], eqs: &[Row], ineqs: &[Row]) -> LpOutcome {
    let n = c.len();
    let m = eqs.len() + ineqs.len();
    let nstruct = 2 * n + ineqs.len();
    let ncols = nstruct + m;
    let mut rows = Vec::with_capacity(m);
    for (k, (a, b)) in eqs.iter().chain(ineqs).enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        for (i, x) in a.iter().enumerate() {
            row[2 * i] = x.clone();
            row[2 * i + 1] = -x;
        }
        if k >= eqs.len() {
            row[2 * n + k - eqs.len()] = -Rational::one();
        }
        row[ncols] = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        row[nstruct + k] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (nstruct..ncols).collect(), ncols };

    let mut phase1 = vec![Rational::zero(); ncols];
    for x in phase1.iter_mut().skip(nstruct) {
        *x = Rational::one();
    }
    t.optimize(&phase1, ncols);
    let infeasibility: Rational =
        t.basis.iter().enumerate().filter(|(_, &b)| b >= nstruct).map(|(i, _)| t.rhs(i).clone()).sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nstruct {
            match (0..nstruct).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    for (i, x) in c.iter().enumerate() {
        cost[2 * i] = x.clone();
        cost[2 * i + 1] = -x;
    }
    if !t.optimize(&cost, nstruct) {
        return LpOutcome::Unbounded;
    }
    let mut z = vec![Rational::zero(); nstruct];
    for (i, &b) in t.basis.iter().enumerate() {
        z[b] = t.rhs(i).clone();
    }
    let point: Vec<Rational> = (0..n).map(|i| &z[2 * i] - &z[2 * i + 1]).collect();
    let value = crate::num::dot(c, &point);
    LpOutcome::Optimal { point, value }
}

/// Some point satisfying all constraints, if one exists.
pub fn feasible_point(n: usize, eqs: &[Row], ineqs: &[Row]) -> Option<Vec<Rational>> {
    match minimize(&vec![Rational::zero(); n], eqs, ineqs) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}
