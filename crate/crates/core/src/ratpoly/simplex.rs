//! Exact rational two-phase simplex with Bland's anti-cycling rule.
//!
//! Variables are free; internally each is split into a difference of two
//! nonnegative variables, inequalities get surplus columns, and phase 1
//! runs on artificial columns. Bland's rule guarantees termination, and
//! all pivoting is exact, so answers are deterministic and bit-for-bit
//! reproducible.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rat::Rational;

/// One linear constraint `coeffs . x (>=|=) rhs` over free variables.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub relation: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Eq,
}

/// Outcome of `maximize`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // m x (ncols + 1), last entry is rhs >= 0
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            let pivot_row = self.rows[row].clone();
            for j in 0..=self.ncols {
                let sub = &f * &pivot_row[j];
                self.rows[i][j] = &self.rows[i][j] - &sub;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced cost of column `col` for minimizing `obj`.
    fn reduced_cost(&self, obj: &[Rational], col: usize) -> Rational {
        let mut z = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !obj[b].is_zero() && !self.rows[i][col].is_zero() {
                z = z + &obj[b] * &self.rows[i][col];
            }
        }
        obj[col].clone() - z
    }

    fn objective_value(&self, obj: &[Rational]) -> Rational {
        let mut v = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if !obj[b].is_zero() {
                v = v + &obj[b] * self.rhs(i);
            }
        }
        v
    }

    /// Runs simplex minimizing `obj` over columns where `allowed` is true.
    /// Returns false when the objective is unbounded below.
    fn minimize(&mut self, obj: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // Bland: lowest-index improving column.
            let entering = (0..self.ncols)
                .find(|&j| allowed[j] && self.reduced_cost(obj, j).is_negative());
            let Some(col) = entering else {
                return true;
            };
            // Ratio test, ties broken by lowest basic-variable index.
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col);
        }
    }
}

/// Maximizes `objective . x` over the constraint set. Constants in the
/// objective are the caller's business.
pub fn maximize(constraints: &[Constraint], nvars: usize, objective: &[Rational]) -> LpOutcome {
    let m = constraints.len();
    let n_surplus = constraints.iter().filter(|c| c.relation == Relation::Ge).count();
    // Columns: x+ | x- | surplus | artificial.
    let ncols = 2 * nvars + n_surplus + m;
    let art0 = 2 * nvars + n_surplus;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut surplus_idx = 0usize;
    for (i, c) in constraints.iter().enumerate() {
        debug_assert_eq!(c.coeffs.len(), nvars);
        let negate = c.rhs.is_negative();
        let sign = if negate { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); ncols + 1];
        for (k, a) in c.coeffs.iter().enumerate() {
            let v = &sign * a;
            row[k + nvars] = -v.clone();
            row[k] = v;
        }
        if c.relation == Relation::Ge {
            row[2 * nvars + surplus_idx] = -&sign;
            surplus_idx += 1;
        }
        row[ncols] = &sign * &c.rhs;
        row[art0 + i] = Rational::one();
        rows.push(row);
        basis.push(art0 + i);
    }

    let mut t = Tableau { rows, basis, ncols };

    // Phase 1: drive artificials to zero.
    let mut phase1_obj = vec![Rational::zero(); ncols];
    for j in art0..ncols {
        phase1_obj[j] = Rational::one();
    }
    let all_allowed = vec![true; ncols];
    let ok = t.minimize(&phase1_obj, &all_allowed);
    debug_assert!(ok, "phase-1 objective is bounded below by zero");
    if !t.objective_value(&phase1_obj).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Pivot remaining (zero-valued) artificials out of the basis.
    let mut drop_rows = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] < art0 {
            continue;
        }
        match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
            Some(col) => t.pivot(i, col),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }

    // Phase 2: minimize the negated objective, artificials banned.
    let mut phase2_obj = vec![Rational::zero(); ncols];
    for (k, c) in objective.iter().enumerate() {
        phase2_obj[k] = -c.clone();
        phase2_obj[k + nvars] = c.clone();
    }
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().skip(art0) {
        *a = false;
    }
    if !t.minimize(&phase2_obj, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut point = vec![Rational::zero(); nvars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < nvars {
            point[b] = &point[b] + t.rhs(i);
        } else if b < 2 * nvars {
            point[b - nvars] = &point[b - nvars] - t.rhs(i);
        }
    }
    let value = objective
        .iter()
        .zip(point.iter())
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    LpOutcome::Optimal { value, point }
}

/// A feasible point of the constraint set, if any.
pub fn feasible_point(constraints: &[Constraint], nvars: usize) -> Option<Vec<Rational>> {
    match maximize(constraints, nvars, &vec![Rational::zero(); nvars]) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}
