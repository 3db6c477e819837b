//! Exact rational linear algebra and polyhedral geometry.
//!
//! Coordinates are 0-based throughout this module. Polyhedra are given by
//! affine forms (`form(x) >= 0` and `form(x) = 0`); all queries reduce to
//! exact rank computations and exact simplex calls.

pub mod linalg;
pub mod simplex;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::rat::Rational;

pub use linalg::{rank, rref};
use simplex::{Constraint, LpOutcome, Relation};

/// Exact rational affine-linear form `coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.coeffs.len());
        self.coeffs
            .iter()
            .zip(point.iter())
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn linear_part_is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn negated(&self) -> Self {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }

    fn augmented_row(&self) -> Vec<Rational> {
        let mut row = self.coeffs.clone();
        row.push(self.constant.clone());
        row
    }

    fn from_augmented_row(mut row: Vec<Rational>) -> Self {
        let constant = row.pop().expect("augmented row has a constant column");
        AffineForm { coeffs: row, constant }
    }
}

/// Polyhedron `{ x | f(x) >= 0 for f in inequalities, g(x) = 0 for g in equalities }`.
/// Empty constraint lists denote all of R^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    pub ambient_dim: usize,
    pub inequalities: Vec<AffineForm>,
    pub equalities: Vec<AffineForm>,
}

impl Polyhedron {
    pub fn whole_space(ambient_dim: usize) -> Self {
        Polyhedron { ambient_dim, inequalities: Vec::new(), equalities: Vec::new() }
    }

    pub fn new(
        ambient_dim: usize,
        inequalities: Vec<AffineForm>,
        equalities: Vec<AffineForm>,
    ) -> Result<Self, Error> {
        for f in inequalities.iter().chain(equalities.iter()) {
            if f.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: f.ambient_dim() });
            }
        }
        Ok(Polyhedron { ambient_dim, inequalities, equalities })
    }

    fn constraints(&self) -> Vec<Constraint> {
        let mut out = Vec::with_capacity(self.inequalities.len() + self.equalities.len());
        for f in &self.inequalities {
            out.push(Constraint { coeffs: f.coeffs.clone(), rhs: -&f.constant, relation: Relation::Ge });
        }
        for f in &self.equalities {
            out.push(Constraint { coeffs: f.coeffs.clone(), rhs: -&f.constant, relation: Relation::Eq });
        }
        out
    }

    /// Adjoins the flat's equations as equality constraints.
    pub fn intersect_flat(&self, flat: &Flat) -> Result<Polyhedron, Error> {
        if flat.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: flat.ambient_dim });
        }
        let mut equalities = self.equalities.clone();
        equalities.extend(flat.equations.iter().cloned());
        Ok(Polyhedron {
            ambient_dim: self.ambient_dim,
            inequalities: self.inequalities.clone(),
            equalities,
        })
    }
}

/// Affine subspace given by an independent system of equations
/// `form(x) = 0`, stored in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    pub ambient_dim: usize,
    equations: Vec<AffineForm>,
}

impl Flat {
    /// Reduces `equations` to canonical RREF. Errors if the system is
    /// inconsistent (the subspace would be empty).
    pub fn new(ambient_dim: usize, equations: Vec<AffineForm>) -> Result<Self, Error> {
        for f in &equations {
            if f.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: f.ambient_dim() });
            }
        }
        let mut rows: Vec<Vec<Rational>> = equations.iter().map(AffineForm::augmented_row).collect();
        let pivots = linalg::rref(&mut rows);
        // A pivot in the constant column means 0 = 1.
        if pivots.iter().any(|&p| p == ambient_dim) {
            return Err(Error::InconsistentFlat);
        }
        let equations = rows.into_iter().map(AffineForm::from_augmented_row).collect();
        Ok(Flat { ambient_dim, equations })
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        Flat { ambient_dim, equations: Vec::new() }
    }

    pub fn equations(&self) -> &[AffineForm] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    /// Whether `form(x) = 0` holds on the whole flat, i.e. the equation is
    /// an affine combination of the flat's equations.
    pub fn implies_equation(&self, form: &AffineForm) -> bool {
        let mut row = form.augmented_row();
        for eq in &self.equations {
            let pivot = eq
                .coeffs
                .iter()
                .position(|c| !c.is_zero())
                .expect("canonical equations have a nonzero linear part");
            if row[pivot].is_zero() {
                continue;
            }
            let f = row[pivot].clone();
            let eq_row = eq.augmented_row();
            for (r, e) in row.iter_mut().zip(eq_row.iter()) {
                let sub = &f * e;
                *r = &*r - &sub;
            }
        }
        row.iter().all(Zero::is_zero)
    }

    /// Intersection with another flat; `None` when disjoint.
    pub fn intersect(&self, other: &Flat) -> Option<Flat> {
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        match Flat::new(self.ambient_dim, eqs) {
            Ok(f) => Some(f),
            Err(_) => None,
        }
    }

    /// A particular point of the flat (free coordinates set to zero).
    pub fn point(&self) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); self.ambient_dim];
        for eq in &self.equations {
            let pivot = eq
                .coeffs
                .iter()
                .position(|c| !c.is_zero())
                .expect("canonical equations have a nonzero linear part");
            // Pivot coefficient is 1, free variables are 0.
            p[pivot] = -&eq.constant;
        }
        p
    }
}

/// Outcome of maximizing a form over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

/// Exact maximum of `objective(x)` over `p`.
pub fn maximize_form(p: &Polyhedron, objective: &AffineForm) -> Result<MaxOutcome, Error> {
    if objective.ambient_dim() != p.ambient_dim {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim, got: objective.ambient_dim() });
    }
    Ok(match simplex::maximize(&p.constraints(), p.ambient_dim, &objective.coeffs) {
        LpOutcome::Infeasible => MaxOutcome::Infeasible,
        LpOutcome::Unbounded => MaxOutcome::Unbounded,
        LpOutcome::Optimal { value, .. } => MaxOutcome::Optimal(value + &objective.constant),
    })
}

/// True iff `p` is nonempty, by exact phase-1 simplex.
pub fn lp_feasible(p: &Polyhedron) -> bool {
    simplex::feasible_point(&p.constraints(), p.ambient_dim).is_some()
}

/// A feasible point of `p`, if any.
pub fn feasible_point(p: &Polyhedron) -> Option<Vec<Rational>> {
    simplex::feasible_point(&p.constraints(), p.ambient_dim)
}

/// The implicit equality system of `p`: explicit equalities plus every
/// inequality whose maximum over `p` is exactly 0. Requires `p` nonempty.
fn implicit_equalities(p: &Polyhedron) -> Result<Vec<AffineForm>, Error> {
    let mut eqs = p.equalities.clone();
    for f in &p.inequalities {
        match maximize_form(p, f)? {
            MaxOutcome::Infeasible => return Err(Error::EmptyPolyhedron),
            // A positive value is attainable, so the face is proper.
            MaxOutcome::Unbounded => {}
            MaxOutcome::Optimal(v) => {
                if v.is_zero() {
                    eqs.push(f.clone());
                }
            }
        }
    }
    Ok(eqs)
}

/// Dimension of `p`; -1 when empty.
pub fn dim(p: &Polyhedron) -> Result<i64, Error> {
    if !lp_feasible(p) {
        return Ok(-1);
    }
    let eqs = implicit_equalities(p)?;
    let rows: Vec<Vec<Rational>> = eqs.iter().map(|f| f.coeffs.clone()).collect();
    let r = linalg::rank(&rows)?;
    Ok(p.ambient_dim as i64 - r as i64)
}

/// Dimension of `flat ∩ p`; -1 when empty.
pub fn dim_intersection(flat: &Flat, p: &Polyhedron) -> Result<i64, Error> {
    dim(&p.intersect_flat(flat)?)
}

/// Affine hull of nonempty `p`, as a flat with an independent equation system.
pub fn affine_hull(p: &Polyhedron) -> Result<Flat, Error> {
    if !lp_feasible(p) {
        return Err(Error::EmptyPolyhedron);
    }
    Flat::new(p.ambient_dim, implicit_equalities(p)?)
}

/// Substitutes variable `var` using equality `eq` (which must have a nonzero
/// coefficient on `var`) into `form`, and drops the coordinate.
fn substitute_and_drop(form: &AffineForm, eq: &AffineForm, var: usize) -> AffineForm {
    // eq: a*x_var + rest = 0  =>  x_var = -rest/a.
    let a = &eq.coeffs[var];
    let f = &form.coeffs[var] / a;
    let mut coeffs = Vec::with_capacity(form.coeffs.len() - 1);
    for k in 0..form.coeffs.len() {
        if k == var {
            continue;
        }
        coeffs.push(&form.coeffs[k] - &(&f * &eq.coeffs[k]));
    }
    let constant = &form.constant - &(&f * &eq.constant);
    AffineForm { coeffs, constant }
}

fn drop_coordinate(form: &AffineForm, var: usize) -> AffineForm {
    debug_assert!(form.coeffs[var].is_zero());
    let mut coeffs = form.coeffs.clone();
    coeffs.remove(var);
    AffineForm { coeffs, constant: form.constant.clone() }
}

/// Removes inequalities implied by the rest of the system.
fn prune_redundant(p: &mut Polyhedron) {
    let mut i = 0;
    while i < p.inequalities.len() {
        let f = p.inequalities[i].clone();
        let mut trimmed = p.clone();
        trimmed.inequalities.remove(i);
        // f >= 0 is redundant iff min f over the rest is >= 0.
        let redundant = match maximize_form(&trimmed, &f.negated()) {
            Ok(MaxOutcome::Optimal(v)) => !v.is_positive(),
            Ok(MaxOutcome::Infeasible) => true,
            _ => false,
        };
        if redundant {
            p.inequalities.remove(i);
        } else {
            i += 1;
        }
    }
}

/// Eliminates variable `var` by substitution through an equality when
/// possible, otherwise by Fourier-Motzkin combination, then prunes
/// redundant inequalities. The result lives in one dimension less.
pub fn eliminate_variable(p: &Polyhedron, var: usize) -> Polyhedron {
    let mut out = Polyhedron {
        ambient_dim: p.ambient_dim - 1,
        inequalities: Vec::new(),
        equalities: Vec::new(),
    };
    if let Some(eq) = p.equalities.iter().find(|e| !e.coeffs[var].is_zero()) {
        for f in &p.inequalities {
            out.inequalities.push(substitute_and_drop(f, eq, var));
        }
        for g in &p.equalities {
            if core::ptr::eq(g, eq) {
                continue;
            }
            out.equalities.push(substitute_and_drop(g, eq, var));
        }
    } else {
        for g in &p.equalities {
            out.equalities.push(drop_coordinate(g, var));
        }
        let (lower, rest): (Vec<_>, Vec<_>) =
            p.inequalities.iter().partition(|f| f.coeffs[var].is_positive());
        let (upper, flat): (Vec<_>, Vec<_>) =
            rest.into_iter().partition(|f| f.coeffs[var].is_negative());
        for f in flat {
            out.inequalities.push(drop_coordinate(f, var));
        }
        for lo in &lower {
            for up in &upper {
                // Positive combination cancelling x_var.
                let a = &lo.coeffs[var]; // > 0
                let b = &up.coeffs[var]; // < 0
                let mut coeffs = Vec::with_capacity(p.ambient_dim - 1);
                for k in 0..p.ambient_dim {
                    if k == var {
                        continue;
                    }
                    coeffs.push(&(-b) * &lo.coeffs[k] + a * &up.coeffs[k]);
                }
                let constant = &(-b) * &lo.constant + a * &up.constant;
                out.inequalities.push(AffineForm { coeffs, constant });
            }
        }
    }
    // Drop trivially true constant inequalities.
    out.inequalities.retain(|f| !(f.linear_part_is_zero() && !f.constant.is_negative()));
    prune_redundant(&mut out);
    out
}

/// Dimension of the orthogonal projection of `p` onto the coordinates in
/// `keep` (0-based, strictly increasing); -1 when `p` is empty. Projection
/// onto no coordinates yields the point R^0, of dimension 0.
pub fn projection_dim(p: &Polyhedron, keep: &[usize]) -> Result<i64, Error> {
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= p.ambient_dim) {
        return Err(Error::Precondition("keep must be a strictly increasing subset of coordinates"));
    }
    if !lp_feasible(p) {
        return Ok(-1);
    }
    let mut q = p.clone();
    for var in (0..p.ambient_dim).rev() {
        if keep.binary_search(&var).is_err() {
            q = eliminate_variable(&q, var);
        }
    }
    dim(&q)
}

/// Sign pattern for a recession-direction query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A recession direction `v` of `p` with `v_j = 0` off `escape`, and
/// `sigma_i * v_i >= 1` on `escape`, if one exists. `escape` pairs 0-based
/// coordinates with their required signs. Requires `p` nonempty.
pub fn recession_direction(
    p: &Polyhedron,
    escape: &[(usize, Sign)],
) -> Result<Option<Vec<Rational>>, Error> {
    if escape.is_empty() {
        return Err(Error::Precondition("escape set must be nonempty"));
    }
    if !lp_feasible(p) {
        return Err(Error::EmptyPolyhedron);
    }
    let n = p.ambient_dim;
    let mut constraints = Vec::new();
    for f in &p.inequalities {
        constraints.push(Constraint {
            coeffs: f.coeffs.clone(),
            rhs: Rational::zero(),
            relation: Relation::Ge,
        });
    }
    for g in &p.equalities {
        constraints.push(Constraint {
            coeffs: g.coeffs.clone(),
            rhs: Rational::zero(),
            relation: Relation::Eq,
        });
    }
    for j in 0..n {
        if let Some(&(_, sign)) = escape.iter().find(|&&(i, _)| i == j) {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[j] = match sign {
                Sign::Plus => Rational::from_integer(1.into()),
                Sign::Minus => Rational::from_integer((-1).into()),
            };
            constraints.push(Constraint {
                coeffs,
                rhs: Rational::from_integer(1.into()),
                relation: Relation::Ge,
            });
        } else {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[j] = Rational::from_integer(1.into());
            constraints.push(Constraint { coeffs, rhs: Rational::zero(), relation: Relation::Eq });
        }
    }
    Ok(simplex::feasible_point(&constraints, n))
}

/// True iff a recession direction with the requested escape pattern exists.
pub fn recession_direction_exists(p: &Polyhedron, escape: &[(usize, Sign)]) -> Result<bool, Error> {
    Ok(recession_direction(p, escape)?.is_some())
}
