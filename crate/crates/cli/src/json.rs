//! JSON schemas (`"schema": "kn-polar/1"`) for input specs and reports.
//!
//! Exact values are serialized as `"p/q"` strings, never floats; floats
//! appear only in Monte-Carlo evaluation output. Indices are 1-based.

use std::collections::BTreeMap;

use kn_polar_core::arrangement::{Arrangement, ArrangementKind, EdgeFlat, Hyperplane, Locus};
use kn_polar_core::rat;
use kn_polar_core::ratpoly::{AffineForm, Polyhedron};
use kn_polar_core::zeta::{
    ConvergenceCondition, Domain, FamilyDirection, GammaSign, KnAtom, PolarReport, SVariable,
    Sense, WitnessPoint,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "kn-polar/1";

#[derive(thiserror::Error, Debug)]
pub enum SpecError {
    #[error("unsupported schema {0:?} (expected {SCHEMA:?})")]
    Schema(String),
    #[error("malformed spec: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] kn_polar_core::Error),
}

fn check_schema(schema: &str) -> Result<(), SpecError> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(SpecError::Schema(schema.to_string()))
    }
}

/// An affine form as exact rational strings: `coeffs . x + const`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    pub coeffs: Vec<String>,
    #[serde(rename = "const")]
    pub constant: String,
}

impl FormSpec {
    pub fn to_form(&self) -> Result<AffineForm, SpecError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| rat::parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AffineForm::new(coeffs, rat::parse(&self.constant)?))
    }

    pub fn from_form(f: &AffineForm) -> Self {
        FormSpec {
            coeffs: f.coeffs.iter().map(rat::render).collect(),
            constant: rat::render(&f.constant),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum AtomSpec {
    Ge0 { i: usize },
    Le0 { i: usize },
    Ge1 { i: usize },
    Le1 { i: usize },
    /// x_i >= x_j.
    Ge { i: usize, j: usize },
}

impl AtomSpec {
    fn to_atom(&self) -> KnAtom {
        match *self {
            AtomSpec::Ge0 { i } => KnAtom::Ge0(i),
            AtomSpec::Le0 { i } => KnAtom::Le0(i),
            AtomSpec::Ge1 { i } => KnAtom::Ge1(i),
            AtomSpec::Le1 { i } => KnAtom::Le1(i),
            AtomSpec::Ge { i, j } => KnAtom::Ge(i, j),
        }
    }
}

/// Integration-domain file. An absent/empty atom list denotes R^N.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DomainBody {
    #[serde(rename = "kn-atoms")]
    KnAtoms {
        #[serde(default)]
        atoms: Vec<AtomSpec>,
    },
    #[serde(rename = "general")]
    General {
        inequalities: Vec<FormSpec>,
        #[serde(default)]
        equalities: Vec<FormSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub schema: String,
    #[serde(flatten)]
    pub body: DomainBody,
}

impl DomainSpec {
    /// Builds the domain in ambient dimension `n`.
    pub fn to_domain(&self, n: usize) -> Result<Domain, SpecError> {
        check_schema(&self.schema)?;
        match &self.body {
            DomainBody::KnAtoms { atoms } => Ok(Domain::KnAtoms {
                n,
                atoms: atoms.iter().map(AtomSpec::to_atom).collect(),
            }),
            DomainBody::General { inequalities, equalities } => {
                let ineqs = inequalities
                    .iter()
                    .map(FormSpec::to_form)
                    .collect::<Result<Vec<_>, _>>()?;
                let eqs = equalities
                    .iter()
                    .map(FormSpec::to_form)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Domain::General(Polyhedron::new(n, ineqs, eqs)?))
            }
        }
    }
}

/// Arrangement file: the KN family by N, or explicit labeled hyperplanes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ArrangementBody {
    #[serde(rename = "kn")]
    Kn {
        #[serde(rename = "N")]
        n: usize,
    },
    #[serde(rename = "general")]
    General {
        #[serde(rename = "N")]
        n: usize,
        hyperplanes: Vec<HyperplaneSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneSpec {
    pub coeffs: Vec<String>,
    #[serde(rename = "const")]
    pub constant: String,
    /// General labels are `s1`, `s2`, ...
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub schema: String,
    #[serde(flatten)]
    pub body: ArrangementBody,
}

fn parse_general_label(label: &str) -> Result<SVariable, SpecError> {
    let bad = || SpecError::Malformed(format!("bad hyperplane label {label:?} (want s1, s2, ...)"));
    let idx: usize = label.strip_prefix('s').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if idx == 0 {
        return Err(bad());
    }
    Ok(SVariable::General(idx))
}

impl ArrangementSpec {
    pub fn to_arrangement(&self) -> Result<Arrangement, SpecError> {
        check_schema(&self.schema)?;
        match &self.body {
            ArrangementBody::Kn { n } => Ok(kn_polar_core::arrangement::kn_arrangement(*n)?),
            ArrangementBody::General { n, hyperplanes } => {
                let hs = hyperplanes
                    .iter()
                    .map(|h| {
                        let form =
                            FormSpec { coeffs: h.coeffs.clone(), constant: h.constant.clone() }
                                .to_form()?;
                        Ok(Hyperplane { form, label: parse_general_label(&h.label)? })
                    })
                    .collect::<Result<Vec<_>, SpecError>>()?;
                Ok(Arrangement::new(*n, hs, ArrangementKind::General)?)
            }
        }
    }
}

/// Real parameter file for `eval`: float values keyed by variable name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsSpec {
    pub schema: String,
    pub params: BTreeMap<String, f64>,
}

impl ParamsSpec {
    pub fn to_params(&self, n: usize) -> Result<crate::numerics::RealParams, SpecError> {
        check_schema(&self.schema)?;
        let vars = kn_polar_core::zeta::kn_svariables(n);
        let mut values = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for v in vars {
            let name = v.render(n);
            let Some(&x) = self.params.get(&name) else {
                return Err(SpecError::Malformed(format!("missing parameter {name}")));
            };
            seen.insert(name);
            values.insert(v, x);
        }
        if let Some(extra) = self.params.keys().find(|k| !seen.contains(*k)) {
            return Err(SpecError::Malformed(format!("unknown parameter {extra}")));
        }
        Ok(crate::numerics::RealParams { values })
    }
}

// ---------------------------------------------------------------------------
// Report output types. All round-trip through serde_json.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOut {
    pub equations: Vec<FormSpec>,
    pub dim: usize,
    pub containing: Vec<String>,
    /// The coordinate subset J for flats at infinity; absent for affine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity: Option<Vec<usize>>,
}

pub fn edge_out(e: &EdgeFlat, n: usize) -> EdgeOut {
    EdgeOut {
        equations: e.flat.equations().iter().map(FormSpec::from_form).collect(),
        dim: e.dim(),
        containing: e.containing.iter().map(|v| v.render(n)).collect(),
        infinity: match &e.locus {
            Locus::Affine => None,
            Locus::Infinity(j) => Some(j.iter().copied().collect()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsOut {
    pub affine: usize,
    pub infinity: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseEdgesReport {
    pub schema: String,
    pub affine: Vec<EdgeOut>,
    pub infinity: Vec<EdgeOut>,
    pub counts: CountsOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOut {
    pub support: Vec<String>,
    pub bound: i64,
    pub sense: String,
    pub flat_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity: Option<Vec<usize>>,
}

pub fn condition_out(c: &ConvergenceCondition, n: usize) -> ConditionOut {
    ConditionOut {
        support: c.support.iter().map(|v| v.render(n)).collect(),
        bound: c.bound,
        sense: match c.sense {
            Sense::Greater => "greater".to_string(),
            Sense::Less => "less".to_string(),
        },
        flat_dim: c.source.dim(),
        infinity: match &c.source.locus {
            Locus::Affine => None,
            Locus::Infinity(j) => Some(j.iter().copied().collect()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub schema: String,
    pub conditions: Vec<ConditionOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRecordOut {
    pub condition: ConditionOut,
    pub intersection_dim: i64,
    pub flat_dim: usize,
    pub contributes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarHyperplaneOut {
    pub support: Vec<String>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleFamilyOut {
    pub support: Vec<String>,
    pub leading_rhs: i64,
    /// "decreasing" (rhs - t) or "increasing" (rhs + t).
    pub direction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarReportOut {
    pub schema: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub records: Vec<FlatRecordOut>,
    pub leading_polar: Vec<PolarHyperplaneOut>,
    pub pole_families: Vec<PoleFamilyOut>,
    pub gamma_factors: Vec<String>,
}

/// Renders a Gamma factor like `Γ(s01+s02+s12+2)` or `Γ(-s01-s12-s13-1)`.
fn gamma_string(sign: GammaSign, support: &[String], shift: u64) -> String {
    match sign {
        GammaSign::Plus => format!("Γ({}+{})", support.join("+"), shift),
        GammaSign::Minus => {
            let terms: Vec<String> = support.iter().map(|s| format!("-{s}")).collect();
            format!("Γ({}-{})", terms.join(""), shift)
        }
    }
}

pub fn polar_report_out(report: &PolarReport) -> PolarReportOut {
    let n = report.n;
    let names =
        |s: &std::collections::BTreeSet<SVariable>| -> Vec<String> {
            s.iter().map(|v| v.render(n)).collect()
        };
    PolarReportOut {
        schema: SCHEMA.to_string(),
        n,
        records: report
            .records
            .iter()
            .map(|r| FlatRecordOut {
                condition: condition_out(&r.condition, n),
                intersection_dim: r.intersection_dim,
                flat_dim: r.flat_dim,
                contributes: r.contributes,
            })
            .collect(),
        leading_polar: report
            .pole_families
            .iter()
            .map(|f| PolarHyperplaneOut { support: names(&f.support), rhs: f.leading_rhs })
            .collect(),
        pole_families: report
            .pole_families
            .iter()
            .map(|f| PoleFamilyOut {
                support: names(&f.support),
                leading_rhs: f.leading_rhs,
                direction: match f.direction {
                    FamilyDirection::Decreasing => "decreasing".to_string(),
                    FamilyDirection::Increasing => "increasing".to_string(),
                },
            })
            .collect(),
        gamma_factors: report
            .gamma_factors
            .iter()
            .map(|g| gamma_string(g.sign, &names(&g.support), g.shift))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub target: ConditionOut,
    /// Exact rational values keyed by variable name.
    pub assignment: BTreeMap<String, String>,
    pub verified: bool,
}

pub fn witness_out(
    target: &ConvergenceCondition,
    w: &WitnessPoint,
    verified: bool,
    n: usize,
) -> WitnessOut {
    WitnessOut {
        target: condition_out(target, n),
        assignment: w
            .assignment
            .iter()
            .map(|(v, x)| (v.render(n), rat::render(x)))
            .collect(),
        verified,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub witnesses: Vec<WitnessOut>,
}
