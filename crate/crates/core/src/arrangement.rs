//! Hyperplane arrangements: the Koba-Nielsen family `A_N`, edge (flat)
//! enumeration, matroid decomposition, and dense edges.
//!
//! Variable indices `i`, `j` in labels and infinity subsets are 1-based,
//! matching the `s_{ij}` naming; coordinates inside forms are 0-based.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{self, Rational};
use crate::ratpoly::{linalg, AffineForm, Flat};
use crate::zeta::SVariable;

/// A labeled hyperplane `form(x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub form: AffineForm,
    pub label: SVariable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrangementKind {
    Kn(usize),
    General,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Hyperplane>,
    pub kind: ArrangementKind,
}

impl Arrangement {
    /// Validates labels and rejects zero or pairwise proportional forms.
    pub fn new(
        ambient_dim: usize,
        hyperplanes: Vec<Hyperplane>,
        kind: ArrangementKind,
    ) -> Result<Self, Error> {
        let mut labels = BTreeSet::new();
        for h in &hyperplanes {
            if h.form.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: h.form.ambient_dim(),
                });
            }
            if h.form.linear_part_is_zero() {
                return Err(Error::ZeroLinearPart);
            }
            if !labels.insert(h.label.clone()) {
                return Err(Error::DuplicateLabel);
            }
        }
        for (a, h1) in hyperplanes.iter().enumerate() {
            for h2 in hyperplanes.iter().skip(a + 1) {
                if proportional(&h1.form, &h2.form) {
                    return Err(Error::ProportionalForms);
                }
            }
        }
        Ok(Arrangement { ambient_dim, hyperplanes, kind })
    }
}

/// Whether two affine forms cut out the same hyperplane (proportional
/// including the constant term).
fn proportional(a: &AffineForm, b: &AffineForm) -> bool {
    let ra = a.augmented();
    let rb = b.augmented();
    linalg::rank(&[ra, rb]).map(|r| r <= 1).unwrap_or(false)
}

impl AffineForm {
    fn augmented(&self) -> Vec<Rational> {
        let mut row = self.coeffs.clone();
        row.push(self.constant.clone());
        row
    }
}

/// Where an edge lives: in affine space, or on the boundary stratum
/// `{z_j = 0 : j in J}` of the compactification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Locus {
    Affine,
    /// 1-based coordinate subset J.
    Infinity(BTreeSet<usize>),
}

/// An edge of an arrangement: the flat, the maximal set of hyperplane
/// labels containing it, and its locus. Infinity edges record `J` in the
/// locus; their `flat` holds the chart equations `z_j = 0 (j in J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFlat {
    pub flat: Flat,
    pub containing: BTreeSet<SVariable>,
    pub locus: Locus,
}

impl EdgeFlat {
    pub fn dim(&self) -> usize {
        self.flat.dim()
    }
}

/// The Koba-Nielsen arrangement `A_N`: hyperplanes `x_i = 0`, `x_i = 1`
/// and `x_i = x_j` (i < j), labeled `s_{0i}`, `s_{i(N+1)}`, `s_{ij}`.
pub fn kn_arrangement(n: usize) -> Result<Arrangement, Error> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let mut hs = Vec::new();
    for i in 1..=n {
        hs.push(Hyperplane { form: unit_form(n, i, rat::int(0)), label: SVariable::Zero(i) });
    }
    for i in 1..=n {
        hs.push(Hyperplane { form: unit_form(n, i, rat::int(-1)), label: SVariable::One(i) });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            hs.push(Hyperplane { form: diff_form(n, i, j), label: SVariable::Diag(i, j) });
        }
    }
    Arrangement::new(n, hs, ArrangementKind::Kn(n))
}

/// `x_i + constant` (1-based `i`).
pub(crate) fn unit_form(n: usize, i: usize, constant: Rational) -> AffineForm {
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[i - 1] = rat::one();
    AffineForm::new(coeffs, constant)
}

/// `x_i - x_j` (1-based).
pub(crate) fn diff_form(n: usize, i: usize, j: usize) -> AffineForm {
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[i - 1] = rat::one();
    coeffs[j - 1] = -rat::one();
    AffineForm::new(coeffs, Rational::zero())
}

/// Maximal set of labels of hyperplanes containing `flat`.
fn containing_labels(a: &Arrangement, flat: &Flat) -> BTreeSet<SVariable> {
    a.hyperplanes
        .iter()
        .filter(|h| flat.implies_equation(&h.form))
        .map(|h| h.label.clone())
        .collect()
}

fn edge_sort_key(e: &EdgeFlat) -> (usize, Locus, Vec<AffineForm>) {
    (e.dim(), e.locus.clone(), e.flat.equations().to_vec())
}

/// All distinct nonempty intersections of subsets of hyperplanes, each with
/// its maximal containing set, by closure of pairwise intersections.
pub fn edges(a: &Arrangement) -> Vec<EdgeFlat> {
    let mut flats: BTreeSet<Flat> = BTreeSet::new();
    let mut frontier: Vec<Flat> = Vec::new();
    for h in &a.hyperplanes {
        let f = Flat::new(a.ambient_dim, vec![h.form.clone()])
            .expect("a hyperplane with nonzero linear part is consistent");
        if flats.insert(f.clone()) {
            frontier.push(f);
        }
    }
    while let Some(f) = frontier.pop() {
        for h in &a.hyperplanes {
            if f.implies_equation(&h.form) {
                continue;
            }
            let mut eqs = f.equations().to_vec();
            eqs.push(h.form.clone());
            if let Ok(g) = Flat::new(a.ambient_dim, eqs) {
                if flats.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
    }
    let mut out: Vec<EdgeFlat> = flats
        .into_iter()
        .map(|flat| {
            let containing = containing_labels(a, &flat);
            EdgeFlat { flat, containing, locus: Locus::Affine }
        })
        .collect();
    out.sort_by(|x, y| edge_sort_key(x).cmp(&edge_sort_key(y)));
    out
}

/// Connected components of the linear matroid on `normals`: the finest
/// partition of the index set with rank additive across blocks.
///
/// Two elements share a block exactly when some circuit contains both.
/// Computed via the fundamental-circuit graph of one basis: row-reduce the
/// matrix whose columns are the normals, then link every non-pivot column
/// to the pivots of its fundamental circuit. Blocks are sorted index lists.
pub fn matroid_components(normals: &[Vec<Rational>]) -> Result<Vec<Vec<usize>>, Error> {
    let m = normals.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let dim = normals[0].len();
    for v in normals {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
    }
    let mut rows: Vec<Vec<Rational>> =
        (0..dim).map(|r| normals.iter().map(|v| v[r].clone()).collect()).collect();
    let pivots = linalg::rref(&mut rows);

    let mut parent: Vec<usize> = (0..m).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (ri, &p) in pivots.iter().enumerate() {
        for j in 0..m {
            if !rows[ri][j].is_zero() {
                let (a, b) = (root(&mut parent, p), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        let r = root(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    Ok(by_root.into_values().collect())
}

/// Dense edges: edges whose local central arrangement (normals of the
/// containing hyperplanes, which already live in the annihilator of the
/// edge's direction space) has a single matroid component.
pub fn dense_edges(a: &Arrangement) -> Vec<EdgeFlat> {
    edges(a)
        .into_iter()
        .filter(|e| {
            let normals: Vec<Vec<Rational>> = a
                .hyperplanes
                .iter()
                .filter(|h| e.containing.contains(&h.label))
                .map(|h| h.form.coeffs.clone())
                .collect();
            matroid_components(&normals).map(|b| b.len() == 1).unwrap_or(false)
        })
        .collect()
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << n)).map(move |mask| {
        (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()
    })
}

/// Closed-form dense affine flats of `A_N`: for each nonempty
/// `S ⊆ {1..N}` the flats `{x_i = 0 : i in S}` and `{x_i = 1 : i in S}`,
/// and for `|S| >= 2` the flat `{x_i = x_j : i, j in S}`; in total
/// `3·2^N − N − 3` flats.
pub fn kn_dense_affine(n: usize) -> Result<Vec<EdgeFlat>, Error> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let mut out = Vec::new();
    for s in nonempty_subsets(n) {
        for (value, label_of) in [
            (rat::int(0), SVariable::Zero as fn(usize) -> SVariable),
            (rat::int(-1), SVariable::One as fn(usize) -> SVariable),
        ] {
            let eqs: Vec<AffineForm> =
                s.iter().map(|&i| unit_form(n, i, value.clone())).collect();
            let flat = Flat::new(n, eqs).expect("coordinate equations are consistent");
            let mut containing: BTreeSet<SVariable> = s.iter().map(|&i| label_of(i)).collect();
            for (a, &i) in s.iter().enumerate() {
                for &j in s.iter().skip(a + 1) {
                    containing.insert(SVariable::Diag(i, j));
                }
            }
            out.push(EdgeFlat { flat, containing, locus: Locus::Affine });
        }
        if s.len() >= 2 {
            let first = s[0];
            let eqs: Vec<AffineForm> =
                s.iter().skip(1).map(|&j| diff_form(n, first, j)).collect();
            let flat = Flat::new(n, eqs).expect("diagonal equations are consistent");
            let mut containing = BTreeSet::new();
            for (a, &i) in s.iter().enumerate() {
                for &j in s.iter().skip(a + 1) {
                    containing.insert(SVariable::Diag(i, j));
                }
            }
            out.push(EdgeFlat { flat, containing, locus: Locus::Affine });
        }
    }
    out.sort_by(|x, y| edge_sort_key(x).cmp(&edge_sort_key(y)));
    out.dedup_by(|x, y| x.flat == y.flat);
    Ok(out)
}

/// One infinity flat `{z_j = 0 : j in J}` per nonempty `J ⊆ {1..N}`;
/// `2^N − 1` flats of dimension `N − |J|`. The containing set lists every
/// component of the compactified arrangement through the flat: `s_{0j}`
/// and `s_{j(N+1)}` for `j in J`, and `s_{ij}` whenever `{i,j}` meets `J`.
pub fn kn_infinity_flats(n: usize) -> Result<Vec<EdgeFlat>, Error> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let mut out = Vec::new();
    for s in nonempty_subsets(n) {
        let j_set: BTreeSet<usize> = s.iter().copied().collect();
        let eqs: Vec<AffineForm> = s.iter().map(|&i| unit_form(n, i, rat::int(0))).collect();
        let flat = Flat::new(n, eqs).expect("chart equations are consistent");
        let mut containing = BTreeSet::new();
        for &j in &j_set {
            containing.insert(SVariable::Zero(j));
            containing.insert(SVariable::One(j));
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if j_set.contains(&i) || j_set.contains(&j) {
                    containing.insert(SVariable::Diag(i, j));
                }
            }
        }
        out.push(EdgeFlat { flat, containing, locus: Locus::Infinity(j_set) });
    }
    out.sort_by(|x, y| edge_sort_key(x).cmp(&edge_sort_key(y)));
    Ok(out)
}
