//! Convergence conditions of the multivariate zeta function attached to a
//! hyperplane arrangement, polar-locus contribution per integration domain,
//! independence witnesses, and Gamma-product skeletons.
//!
//! Indices `i`, `j` in variable names and infinity subsets are 1-based.
//!
//! Note on naming: in the Koba-Nielsen family the variable attached to the
//! hyperplane `x_i = 1` is written `s_{i(N+1)}`; one printed source lists it
//! once as `s_{i(N-1)}`, which is inconsistent with every other occurrence
//! and is treated here as a typo for `s_{i(N+1)}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::{self, Arrangement, ArrangementKind, EdgeFlat, Locus};
use crate::error::Error;
use crate::rat::{self, Rational};
use crate::ratpoly::{self, Polyhedron, Sign};

/// A coordinate of the zeta-variable vector `s`. For the Koba-Nielsen
/// arrangement the variables are `s_{0i}` (`x_i = 0`), `s_{i(N+1)}`
/// (`x_i = 1`), and `s_{ij}` with `i < j` (`x_i = x_j`); general
/// arrangements use one variable `s_i` per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SVariable {
    Zero(usize),
    One(usize),
    Diag(usize, usize),
    General(usize),
}

impl SVariable {
    /// Index pair `(a, b)` of the `s_{ab}` name; needs `n` to place
    /// `One(i)` at `(i, n+1)`. `General(i)` maps to `(0, i)`.
    pub fn pair(&self, n: usize) -> (usize, usize) {
        match *self {
            SVariable::Zero(i) => (0, i),
            SVariable::One(i) => (i, n + 1),
            SVariable::Diag(i, j) => (i, j),
            SVariable::General(i) => (0, i),
        }
    }

    /// Textual name, e.g. `s01`, `s13` for N = 2, or `s2_11` once an index
    /// exceeds one digit; general variables render as `s1`, `s2`, ...
    pub fn render(&self, n: usize) -> String {
        match *self {
            SVariable::General(i) => format!("s{i}"),
            _ => {
                let (a, b) = self.pair(n);
                if a <= 9 && b <= 9 {
                    format!("s{a}{b}")
                } else {
                    format!("s{a}_{b}")
                }
            }
        }
    }
}

/// The `d = N(N+3)/2` Koba-Nielsen variables in `s_{ab}` name order.
pub fn kn_svariables(n: usize) -> Vec<SVariable> {
    let mut vars = Vec::new();
    for i in 1..=n {
        vars.push(SVariable::Zero(i));
        vars.push(SVariable::One(i));
        for j in i + 1..=n {
            vars.push(SVariable::Diag(i, j));
        }
    }
    vars.sort_by_key(|v| v.pair(n));
    vars
}

/// One primitive inequality of an integration domain in the Koba-Nielsen
/// family: `x_i >= 0`, `x_i <= 0`, `x_i >= 1`, `x_i <= 1`, or `x_i >= x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnAtom {
    Ge0(usize),
    Le0(usize),
    Ge1(usize),
    Le1(usize),
    Ge(usize, usize),
}

/// An integration domain: a conjunction of KN atoms (required for
/// infinity-flat tests), or an arbitrary rational polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    KnAtoms { n: usize, atoms: Vec<KnAtom> },
    General(Polyhedron),
}

impl Domain {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Domain::KnAtoms { n, .. } => *n,
            Domain::General(p) => p.ambient_dim,
        }
    }

    /// The domain as an explicit polyhedron; validates atom indices.
    pub fn polyhedron(&self) -> Result<Polyhedron, Error> {
        match self {
            Domain::General(p) => Ok(p.clone()),
            Domain::KnAtoms { n, atoms } => {
                let n = *n;
                let check = |i: usize| -> Result<(), Error> {
                    if i == 0 || i > n {
                        Err(Error::Precondition("atom index out of range 1..=N"))
                    } else {
                        Ok(())
                    }
                };
                let mut ineqs = Vec::with_capacity(atoms.len());
                for atom in atoms {
                    let form = match *atom {
                        KnAtom::Ge0(i) => {
                            check(i)?;
                            arrangement::unit_form(n, i, rat::int(0))
                        }
                        KnAtom::Le0(i) => {
                            check(i)?;
                            arrangement::unit_form(n, i, rat::int(0)).negated()
                        }
                        KnAtom::Ge1(i) => {
                            check(i)?;
                            arrangement::unit_form(n, i, rat::int(-1))
                        }
                        KnAtom::Le1(i) => {
                            check(i)?;
                            arrangement::unit_form(n, i, rat::int(-1)).negated()
                        }
                        KnAtom::Ge(i, j) => {
                            check(i)?;
                            check(j)?;
                            if i == j {
                                return Err(Error::Precondition("x_i >= x_j needs i != j"));
                            }
                            let (lo, hi) = (j.min(i), j.max(i));
                            let f = arrangement::diff_form(n, lo, hi);
                            if i < j {
                                ineqs.push(f);
                                continue;
                            }
                            f.negated()
                        }
                    };
                    ineqs.push(form);
                }
                Polyhedron::new(n, ineqs, Vec::new())
            }
        }
    }
}

/// Direction of a convergence inequality: `sum > bound` for affine edges,
/// `sum < bound` for flats at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sense {
    Greater,
    Less,
}

/// A convergence condition `sum of support (>|<) bound`, with unit
/// coefficients, induced by a dense edge or infinity flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCondition {
    pub support: BTreeSet<SVariable>,
    pub bound: i64,
    pub sense: Sense,
    pub source: EdgeFlat,
}

impl ConvergenceCondition {
    /// Whether this is the same inequality (support, bound, sense).
    pub fn same_inequality(&self, other: &ConvergenceCondition) -> bool {
        self.support == other.support && self.bound == other.bound && self.sense == other.sense
    }

    /// Exact sum of the witness values over the support.
    pub fn sum_at(&self, w: &WitnessPoint) -> Rational {
        self.support
            .iter()
            .map(|v| w.assignment.get(v).expect("witness assigns every support variable"))
            .fold(rat::int(0), |acc, x| acc + x)
    }

    /// Whether the condition holds with strict inequality at `w`.
    pub fn holds_strictly(&self, w: &WitnessPoint) -> bool {
        let sum = self.sum_at(w);
        let bound = rat::int(self.bound);
        match self.sense {
            Sense::Greater => sum > bound,
            Sense::Less => sum < bound,
        }
    }
}

fn condition_for(n: usize, e: EdgeFlat) -> ConvergenceCondition {
    let sense = match e.locus {
        Locus::Affine => Sense::Greater,
        Locus::Infinity(_) => Sense::Less,
    };
    ConvergenceCondition {
        support: e.containing.clone(),
        bound: -((n - e.dim()) as i64),
        sense,
        source: e,
    }
}

/// The `2^{N+2} - N - 4` convergence conditions of the Koba-Nielsen zeta
/// function: one per dense affine edge of dimension `k` (`sum > -(N-k)`)
/// and one per infinity flat of dimension `d` (`sum < -(N-d)`).
pub fn kn_conditions(n: usize) -> Result<Vec<ConvergenceCondition>, Error> {
    let mut out = Vec::new();
    for e in arrangement::kn_dense_affine(n)? {
        out.push(condition_for(n, e));
    }
    for e in arrangement::kn_infinity_flats(n)? {
        out.push(condition_for(n, e));
    }
    Ok(out)
}

/// Convergence conditions of a general affine arrangement: one per dense
/// edge of dimension `k`, `sum of labels of containing hyperplanes > -(N-k)`.
pub fn general_conditions(a: &Arrangement) -> Result<Vec<ConvergenceCondition>, Error> {
    if a.kind != ArrangementKind::General {
        return Err(Error::NotGeneralArrangement);
    }
    Ok(arrangement::dense_edges(a)
        .into_iter()
        .map(|e| condition_for(a.ambient_dim, e))
        .collect())
}

/// Evidence for a contribution decision. `contributes` holds exactly when
/// `intersection_dim` equals the flat's dimension. For infinity flats,
/// `intersection_dim` is the dimension of the domain's projection onto the
/// coordinates off `J` when some escape direction exists, and -1 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub contributes: bool,
    pub intersection_dim: i64,
    pub flat_dim: usize,
}

/// Whether `flat` contributes a polar hyperplane when integrating over `d`.
/// Affine flats contribute iff the trace `flat ∩ d` has full flat dimension.
/// An infinity flat `J` contributes iff the domain has a recession direction
/// escaping exactly on `J` under some sign pattern, and its projection onto
/// the complementary coordinates is full-dimensional.
pub fn contributes(flat: &EdgeFlat, d: &Domain) -> Result<Contribution, Error> {
    let p = d.polyhedron()?;
    let n = p.ambient_dim;
    let pd = ratpoly::dim(&p)?;
    if pd < n as i64 {
        return Err(Error::DegenerateDomain { dim: pd, ambient: n });
    }
    let flat_dim = flat.dim();
    match &flat.locus {
        Locus::Affine => {
            let intersection_dim = ratpoly::dim_intersection(&flat.flat, &p)?;
            Ok(Contribution {
                contributes: intersection_dim == flat_dim as i64,
                intersection_dim,
                flat_dim,
            })
        }
        Locus::Infinity(j_set) => {
            if !matches!(d, Domain::KnAtoms { .. }) {
                return Err(Error::UnsupportedInfinity);
            }
            let js: Vec<usize> = j_set.iter().map(|&j| j - 1).collect();
            let mut escapes = false;
            for mask in 0u64..(1 << js.len()) {
                let escape: Vec<(usize, Sign)> = js
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        (c, if mask & (1 << k) != 0 { Sign::Minus } else { Sign::Plus })
                    })
                    .collect();
                if ratpoly::recession_direction_exists(&p, &escape)? {
                    escapes = true;
                    break;
                }
            }
            let intersection_dim = if escapes {
                let keep: Vec<usize> = (0..n).filter(|c| !js.contains(c)).collect();
                ratpoly::projection_dim(&p, &keep)?
            } else {
                -1
            };
            Ok(Contribution {
                contributes: intersection_dim == flat_dim as i64,
                intersection_dim,
                flat_dim,
            })
        }
    }
}

/// Per-flat entry of a polar report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatRecord {
    pub condition: ConvergenceCondition,
    pub intersection_dim: i64,
    pub flat_dim: usize,
    pub contributes: bool,
}

/// How a pole family marches away from its leading member: affine families
/// step left (`bound - t`), infinity families step right (`bound + t`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyDirection {
    Decreasing,
    Increasing,
}

/// The symbolic family of candidate polar hyperplanes
/// `sum of support = leading_rhs -/+ t`, `t` a natural number; only the
/// leading (`t = 0`) member is asserted as a pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleFamily {
    pub support: BTreeSet<SVariable>,
    pub leading_rhs: i64,
    pub direction: FamilyDirection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

/// One factor of the Gamma-product skeleton: `Γ(sum + shift)` for sign
/// plus, `Γ(-sum - shift)` for sign minus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub sign: GammaSign,
    pub support: BTreeSet<SVariable>,
    pub shift: u64,
}

/// Full polar-locus report for the Koba-Nielsen arrangement `A_N` over a
/// domain: every condition with its contribution evidence, plus the pole
/// families and Gamma skeleton of the contributing flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarReport {
    pub n: usize,
    pub domain: Domain,
    pub records: Vec<FlatRecord>,
    pub pole_families: Vec<PoleFamily>,
    pub gamma_factors: Vec<GammaFactor>,
}

fn derived_products(records: &[FlatRecord]) -> (Vec<PoleFamily>, Vec<GammaFactor>) {
    let mut families = Vec::new();
    let mut gammas = Vec::new();
    for r in records.iter().filter(|r| r.contributes) {
        let shift = r.condition.bound.unsigned_abs();
        match r.condition.sense {
            Sense::Greater => {
                families.push(PoleFamily {
                    support: r.condition.support.clone(),
                    leading_rhs: r.condition.bound,
                    direction: FamilyDirection::Decreasing,
                });
                gammas.push(GammaFactor {
                    sign: GammaSign::Plus,
                    support: r.condition.support.clone(),
                    shift,
                });
            }
            Sense::Less => {
                families.push(PoleFamily {
                    support: r.condition.support.clone(),
                    leading_rhs: r.condition.bound,
                    direction: FamilyDirection::Increasing,
                });
                gammas.push(GammaFactor {
                    sign: GammaSign::Minus,
                    support: r.condition.support.clone(),
                    shift,
                });
            }
        }
    }
    (families, gammas)
}

/// Polar report for `A_N` over `d` (which must be full-dimensional).
pub fn polar_report(n: usize, d: &Domain) -> Result<PolarReport, Error> {
    if d.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: d.ambient_dim() });
    }
    let mut records = Vec::new();
    for condition in kn_conditions(n)? {
        let c = contributes(&condition.source, d)?;
        records.push(FlatRecord {
            condition,
            intersection_dim: c.intersection_dim,
            flat_dim: c.flat_dim,
            contributes: c.contributes,
        });
    }
    let (pole_families, gamma_factors) = derived_products(&records);
    Ok(PolarReport { n, domain: d.clone(), records, pole_families, gamma_factors })
}

/// Variant for the `+ i0` regularization of the diagonal factors: drops
/// every flat cut out by diagonal hyperplanes alone; the remaining records
/// are unchanged and the derived products are rebuilt.
pub fn i0_filter(report: &PolarReport) -> PolarReport {
    let records: Vec<FlatRecord> = report
        .records
        .iter()
        .filter(|r| {
            !r.condition.support.iter().all(|v| matches!(v, SVariable::Diag(_, _)))
        })
        .cloned()
        .collect();
    let (pole_families, gamma_factors) = derived_products(&records);
    PolarReport {
        n: report.n,
        domain: report.domain.clone(),
        records,
        pole_families,
        gamma_factors,
    }
}

/// A total assignment of real parts to the zeta variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPoint {
    pub assignment: BTreeMap<SVariable, Rational>,
}

impl WitnessPoint {
    pub fn constant(n: usize, value: Rational) -> Self {
        WitnessPoint {
            assignment: kn_svariables(n).into_iter().map(|v| (v, value.clone())).collect(),
        }
    }
}

/// A rational point violating exactly `target` among the conditions of
/// `A_N`: the support variables land exactly on the target's boundary while
/// every other condition holds strictly.
pub fn independence_witness(
    n: usize,
    target: &ConvergenceCondition,
) -> Result<WitnessPoint, Error> {
    let conditions = kn_conditions(n)?;
    let Some(cond) = conditions.iter().find(|c| c.same_inequality(target)) else {
        return Err(Error::UnknownCondition);
    };
    let ni = n as i64;
    let (support_value, other_value) = match &cond.source.locus {
        Locus::Affine => {
            let k = cond.source.dim() as i64;
            (
                rat::frac(-2, ni + 1 - k),
                rat::frac(-2, ni + 2)
                    * rat::frac((k + 1) * ni + 2 * k, 2 * (k + 1) * ni - k * (k - 1)),
            )
        }
        Locus::Infinity(_) => {
            let d = cond.source.dim() as i64;
            if d == 0 {
                return Ok(WitnessPoint::constant(n, rat::frac(-2, ni + 3)));
            }
            (
                rat::frac(-2, ni + d + 3),
                rat::frac(-2, ni + 2) * rat::frac((d + 1) * ni + 2 * d, d * (d + 3)),
            )
        }
    };
    let assignment = kn_svariables(n)
        .into_iter()
        .map(|v| {
            let value = if cond.support.contains(&v) {
                support_value.clone()
            } else {
                other_value.clone()
            };
            (v, value)
        })
        .collect();
    Ok(WitnessPoint { assignment })
}

/// True iff `target` is violated at `w` (landing exactly on the boundary
/// counts as violated) while every other condition holds strictly.
pub fn verify_witness(
    w: &WitnessPoint,
    conditions: &[ConvergenceCondition],
    target: &ConvergenceCondition,
) -> bool {
    conditions.iter().all(|c| {
        if c.same_inequality(target) {
            !c.holds_strictly(w)
        } else {
            c.holds_strictly(w)
        }
    })
}

/// The midpoint of the hypercube `(-2/(N+1), -2/(N+3))^d` on which every
/// convergence condition holds strictly.
pub fn hypercube_point(n: usize) -> WitnessPoint {
    let ni = n as i64;
    let mid = -(rat::frac(1, ni + 1) + rat::frac(1, ni + 3));
    WitnessPoint::constant(n, mid)
}

/// Whether the affine hull of the (nonempty, lower-dimensional) trace
/// `flat ∩ d` is itself a dense affine flat of `A_N`.
pub fn span_is_centre(flat: &EdgeFlat, d: &Domain) -> Result<bool, Error> {
    if flat.locus != Locus::Affine {
        return Err(Error::Precondition("span_is_centre needs an affine flat"));
    }
    let p = d.polyhedron()?;
    let trace = p.intersect_flat(&flat.flat)?;
    let td = ratpoly::dim(&trace)?;
    if td < 0 || td >= flat.dim() as i64 {
        return Err(Error::Precondition(
            "span_is_centre needs a nonempty trace of lower dimension than the flat",
        ));
    }
    let hull = ratpoly::affine_hull(&trace)?;
    Ok(arrangement::kn_dense_affine(p.ambient_dim)?.iter().any(|e| e.flat == hull))
}

#[cfg(test)]
mod tests;
