use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::rat::{frac, int};
use crate::ratpoly::AffineForm;

fn delta2() -> Domain {
    Domain::KnAtoms { n: 2, atoms: vec![KnAtom::Ge0(1), KnAtom::Ge(2, 1), KnAtom::Le1(2)] }
}

/// Delta_N = { 0 <= x1 <= ... <= xN <= 1 }.
fn simplex(n: usize) -> Domain {
    let mut atoms = vec![KnAtom::Ge0(1)];
    for i in 1..n {
        atoms.push(KnAtom::Ge(i + 1, i));
    }
    atoms.push(KnAtom::Le1(n));
    Domain::KnAtoms { n, atoms }
}

/// The unit cube [0,1]^N.
fn cube(n: usize) -> Domain {
    let mut atoms = Vec::new();
    for i in 1..=n {
        atoms.push(KnAtom::Ge0(i));
        atoms.push(KnAtom::Le1(i));
    }
    Domain::KnAtoms { n, atoms }
}

fn wedge2() -> Domain {
    Domain::KnAtoms { n: 2, atoms: vec![KnAtom::Ge0(1), KnAtom::Ge(2, 1)] }
}

fn whole(n: usize) -> Domain {
    Domain::KnAtoms { n, atoms: vec![] }
}

fn names(support: &BTreeSet<SVariable>, n: usize) -> BTreeSet<String> {
    support.iter().map(|v| v.render(n)).collect()
}

fn name_set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| String::from(*s)).collect()
}

fn find<'a>(
    conds: &'a [ConvergenceCondition],
    n: usize,
    support: &[&str],
    sense: Sense,
) -> &'a ConvergenceCondition {
    let want = name_set(support);
    conds
        .iter()
        .find(|c| c.sense == sense && names(&c.support, n) == want)
        .expect("condition with the given support exists")
}

#[test]
fn condition_counts() {
    for n in 1..=8usize {
        let conds = kn_conditions(n).unwrap();
        assert_eq!(conds.len(), (1 << (n + 2)) - n - 4, "N = {n}");
    }
}

#[test]
fn golden_conditions_n2() {
    let conds = kn_conditions(2).unwrap();
    let got: BTreeSet<(BTreeSet<String>, i64, bool)> = conds
        .iter()
        .map(|c| (names(&c.support, 2), c.bound, c.sense == Sense::Less))
        .collect();
    let expected: BTreeSet<(BTreeSet<String>, i64, bool)> = [
        (vec!["s01"], -1, false),
        (vec!["s02"], -1, false),
        (vec!["s12"], -1, false),
        (vec!["s13"], -1, false),
        (vec!["s23"], -1, false),
        (vec!["s01", "s02", "s12"], -2, false),
        (vec!["s12", "s13", "s23"], -2, false),
        (vec!["s01", "s12", "s13"], -1, true),
        (vec!["s02", "s12", "s23"], -1, true),
        (vec!["s01", "s02", "s12", "s13", "s23"], -2, true),
    ]
    .into_iter()
    .map(|(s, b, inf)| (s.into_iter().map(String::from).collect(), b, inf))
    .collect();
    assert_eq!(got, expected);
}

#[test]
fn conditions_n1() {
    let conds = kn_conditions(1).unwrap();
    assert_eq!(conds.len(), 3);
    find(&conds, 1, &["s01"], Sense::Greater);
    find(&conds, 1, &["s12"], Sense::Greater);
    let inf = find(&conds, 1, &["s01", "s12"], Sense::Less);
    assert_eq!(inf.bound, -1);
}

#[test]
fn support_size_formulas() {
    let choose2 = |m: usize| m * m.saturating_sub(1) / 2;
    for n in 2..=5usize {
        for c in kn_conditions(n).unwrap() {
            let size = c.support.len();
            match &c.source.locus {
                Locus::Affine => {
                    let k = c.source.dim();
                    if c.support.iter().all(|v| matches!(v, SVariable::Diag(_, _))) {
                        assert_eq!(size, choose2(n - k + 1), "type (c), N = {n}, k = {k}");
                    } else {
                        assert_eq!(size, (n - k) + choose2(n - k), "type (a)/(b), N = {n}");
                    }
                }
                Locus::Infinity(_) => {
                    let d = c.source.dim();
                    assert_eq!(size, (n - d) * (n + d + 3) / 2, "infinity, N = {n}, d = {d}");
                }
            }
        }
    }
}

#[test]
fn contributes_affine_examples() {
    let conds = kn_conditions(2).unwrap();
    let diag = &find(&conds, 2, &["s12"], Sense::Greater).source;
    assert!(contributes(diag, &delta2()).unwrap().contributes);

    let x2_zero = &find(&conds, 2, &["s02"], Sense::Greater).source;
    let c = contributes(x2_zero, &delta2()).unwrap();
    assert!(!c.contributes);
    assert_eq!(c.intersection_dim, 0);
    assert_eq!(c.flat_dim, 1);
}

#[test]
fn contributes_infinity_examples() {
    let conds = kn_conditions(2).unwrap();
    let z1 = &find(&conds, 2, &["s01", "s12", "s13"], Sense::Less).source;
    let z2 = &find(&conds, 2, &["s02", "s12", "s23"], Sense::Less).source;
    let z12 = &find(&conds, 2, &["s01", "s02", "s12", "s13", "s23"], Sense::Less).source;
    assert!(!contributes(z1, &wedge2()).unwrap().contributes);
    assert!(contributes(z2, &wedge2()).unwrap().contributes);
    assert!(contributes(z12, &wedge2()).unwrap().contributes);
}

#[test]
fn contributes_rejects_degenerate_domain() {
    // {x1 - x2 >= 0, x2 - x1 >= 0} pins the domain to the diagonal line.
    let p = Polyhedron::new(
        2,
        vec![
            AffineForm::new(vec![int(1), int(-1)], int(0)),
            AffineForm::new(vec![int(-1), int(1)], int(0)),
        ],
        vec![],
    )
    .unwrap();
    let d = Domain::General(p);
    let conds = kn_conditions(2).unwrap();
    let flat = &conds[0].source;
    assert!(matches!(
        contributes(flat, &d),
        Err(Error::DegenerateDomain { dim: 1, ambient: 2 })
    ));
}

#[test]
fn contributes_rejects_general_domain_at_infinity() {
    let p = Polyhedron::whole_space(2);
    let conds = kn_conditions(2).unwrap();
    let inf = &find(&conds, 2, &["s01", "s12", "s13"], Sense::Less).source;
    assert_eq!(contributes(inf, &Domain::General(p)), Err(Error::UnsupportedInfinity));
}

fn contributing_supports(report: &PolarReport) -> BTreeSet<BTreeSet<String>> {
    report
        .records
        .iter()
        .filter(|r| r.contributes)
        .map(|r| names(&r.condition.support, report.n))
        .collect()
}

#[test]
fn whole_space_report_contributes_everything() {
    for n in 2..=4usize {
        let report = polar_report(n, &whole(n)).unwrap();
        assert_eq!(report.records.len(), (1 << (n + 2)) - n - 4);
        assert!(report.records.iter().all(|r| r.contributes), "N = {n}");
        assert_eq!(report.gamma_factors.len(), report.records.len());
    }
}

#[test]
fn simplex_report_n2_golden() {
    let report = polar_report(2, &delta2()).unwrap();
    let expected: BTreeSet<BTreeSet<String>> = [
        vec!["s01"],
        vec!["s23"],
        vec!["s12"],
        vec!["s01", "s02", "s12"],
        vec!["s12", "s13", "s23"],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(String::from).collect())
    .collect();
    assert_eq!(contributing_supports(&report), expected);
}

/// Expected contributing supports for the ordered simplex Delta_N:
/// zero-sets on prefixes, one-sets on suffixes, diagonal sets on intervals.
fn simplex_expected_supports(n: usize) -> BTreeSet<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for m in 1..=n {
        let mut s: BTreeSet<SVariable> = (1..=m).map(SVariable::Zero).collect();
        for i in 1..=m {
            for j in i + 1..=m {
                s.insert(SVariable::Diag(i, j));
            }
        }
        out.insert(names(&s, n));

        let lo = n + 1 - m;
        let mut s: BTreeSet<SVariable> = (lo..=n).map(SVariable::One).collect();
        for i in lo..=n {
            for j in i + 1..=n {
                s.insert(SVariable::Diag(i, j));
            }
        }
        out.insert(names(&s, n));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            let mut s = BTreeSet::new();
            for i in a..=b {
                for j in i + 1..=b {
                    s.insert(SVariable::Diag(i, j));
                }
            }
            out.insert(names(&s, n));
        }
    }
    out
}

#[test]
fn simplex_reports_match_interval_description() {
    for n in 2..=3usize {
        let report = polar_report(n, &simplex(n)).unwrap();
        let got = contributing_supports(&report);
        assert_eq!(got.len(), n * (n + 3) / 2, "N = {n}");
        assert_eq!(got, simplex_expected_supports(n), "N = {n}");
    }
}

#[test]
fn wedge_report_golden() {
    let report = polar_report(2, &wedge2()).unwrap();
    let excluded: BTreeSet<BTreeSet<String>> = [
        name_set(&["s02"]),
        name_set(&["s01", "s12", "s13"]),
    ]
    .into_iter()
    .collect();
    let contributing = contributing_supports(&report);
    assert_eq!(contributing.len(), 8);
    for e in &excluded {
        assert!(!contributing.contains(e));
    }
}

#[test]
fn gamma_skeleton_matches_contributing_records() {
    let report = polar_report(2, &delta2()).unwrap();
    let contributing: Vec<&FlatRecord> =
        report.records.iter().filter(|r| r.contributes).collect();
    assert_eq!(report.gamma_factors.len(), contributing.len());
    assert_eq!(report.pole_families.len(), contributing.len());
    for (g, r) in report.gamma_factors.iter().zip(&contributing) {
        assert_eq!(g.support, r.condition.support);
        assert_eq!(g.shift as i64, -r.condition.bound);
        match r.condition.sense {
            Sense::Greater => assert_eq!(g.sign, GammaSign::Plus),
            Sense::Less => assert_eq!(g.sign, GammaSign::Minus),
        }
    }
    for (f, r) in report.pole_families.iter().zip(&contributing) {
        assert_eq!(f.leading_rhs, r.condition.bound);
    }
}

#[test]
fn i0_filter_on_cube() {
    let report = polar_report(2, &cube(2)).unwrap();
    // On the cube every affine flat contributes and no infinity flat does.
    assert_eq!(report.records.iter().filter(|r| r.contributes).count(), 7);
    let filtered = i0_filter(&report);
    // Only the diagonal hyperplane {x1 = x2} is cut out by diagonals alone.
    assert_eq!(filtered.records.len(), 9);
    let expected: BTreeSet<BTreeSet<String>> = [
        name_set(&["s01"]),
        name_set(&["s02"]),
        name_set(&["s13"]),
        name_set(&["s23"]),
        name_set(&["s01", "s02", "s12"]),
        name_set(&["s12", "s13", "s23"]),
    ]
    .into_iter()
    .collect();
    assert_eq!(contributing_supports(&filtered), expected);
}

#[test]
fn i0_filter_is_identity_for_n1() {
    let report = polar_report(1, &cube(1)).unwrap();
    let filtered = i0_filter(&report);
    assert_eq!(filtered.records, report.records);
}

#[test]
fn witness_for_a_component_condition() {
    let conds = kn_conditions(2).unwrap();
    let target = find(&conds, 2, &["s01"], Sense::Greater);
    let w = independence_witness(2, target).unwrap();
    assert_eq!(w.assignment[&SVariable::Zero(1)], int(-1));
    for v in kn_svariables(2) {
        if v != SVariable::Zero(1) {
            assert_eq!(w.assignment[&v], frac(-3, 8));
        }
    }
    assert!(verify_witness(&w, &conds, target));
}

#[test]
fn witness_for_the_full_infinity_condition() {
    let conds = kn_conditions(2).unwrap();
    let target = find(&conds, 2, &["s01", "s02", "s12", "s13", "s23"], Sense::Less);
    let w = independence_witness(2, target).unwrap();
    for v in kn_svariables(2) {
        assert_eq!(w.assignment[&v], frac(-2, 5));
    }
    assert!(verify_witness(&w, &conds, target));
}

#[test]
fn witness_for_a_partial_infinity_condition() {
    let conds = kn_conditions(2).unwrap();
    let target = find(&conds, 2, &["s02", "s12", "s23"], Sense::Less);
    let w = independence_witness(2, target).unwrap();
    for v in [SVariable::Zero(2), SVariable::Diag(1, 2), SVariable::One(2)] {
        assert_eq!(w.assignment[&v], frac(-1, 3));
    }
    for v in [SVariable::Zero(1), SVariable::One(1)] {
        assert_eq!(w.assignment[&v], frac(-3, 4));
    }
    assert!(verify_witness(&w, &conds, target));
}

#[test]
fn all_witnesses_verify() {
    for n in 2..=3usize {
        let conds = kn_conditions(n).unwrap();
        for target in &conds {
            let w = independence_witness(n, target).unwrap();
            assert!(verify_witness(&w, &conds, target), "N = {n}, target {target:?}");
        }
    }
}

#[test]
fn witness_rejects_unknown_condition() {
    let mut bogus = kn_conditions(2).unwrap()[0].clone();
    bogus.bound = -7;
    assert_eq!(independence_witness(2, &bogus), Err(Error::UnknownCondition));
}

#[test]
fn non_witnesses_fail_verification() {
    let conds = kn_conditions(2).unwrap();
    let target = find(&conds, 2, &["s01"], Sense::Greater);
    // The hypercube midpoint violates nothing.
    assert!(!verify_witness(&hypercube_point(2), &conds, target));
    // All zeros satisfies the target (and violates the infinity conditions).
    let zeros = WitnessPoint::constant(2, int(0));
    assert!(!verify_witness(&zeros, &conds, target));
}

#[test]
fn hypercube_point_values_and_strictness() {
    assert_eq!(hypercube_point(1).assignment[&SVariable::Zero(1)], frac(-3, 4));
    assert_eq!(hypercube_point(2).assignment[&SVariable::Diag(1, 2)], frac(-8, 15));
    assert_eq!(hypercube_point(3).assignment[&SVariable::One(2)], frac(-5, 12));
    for n in 1..=6usize {
        let w = hypercube_point(n);
        for c in kn_conditions(n).unwrap() {
            assert!(c.holds_strictly(&w), "N = {n}");
        }
    }
}

#[test]
fn span_of_lower_dimensional_traces_is_a_centre() {
    let conds = kn_conditions(2).unwrap();
    // {x2 = 0} meets Delta_2 in the vertex (0,0), whose hull is the origin.
    let x2_zero = &find(&conds, 2, &["s02"], Sense::Greater).source;
    assert!(span_is_centre(x2_zero, &delta2()).unwrap());
    // {x1 = 1} meets Delta_2 in (1,1), whose hull is the point (1,1).
    let x1_one = &find(&conds, 2, &["s13"], Sense::Greater).source;
    assert!(span_is_centre(x1_one, &delta2()).unwrap());
    // Full-dimensional trace violates the precondition.
    let diag = &find(&conds, 2, &["s12"], Sense::Greater).source;
    assert!(matches!(span_is_centre(diag, &delta2()), Err(Error::Precondition(_))));
}

#[test]
fn general_conditions_examples() {
    use crate::arrangement::{Arrangement, Hyperplane};

    let form = |coeffs: &[i64], c: i64| {
        AffineForm::new(coeffs.iter().map(|&v| int(v)).collect(), int(c))
    };
    let general = |forms: Vec<AffineForm>| {
        let hs = forms
            .into_iter()
            .enumerate()
            .map(|(i, form)| Hyperplane { form, label: SVariable::General(i + 1) })
            .collect();
        Arrangement::new(2, hs, ArrangementKind::General).unwrap()
    };

    let braid = general(vec![form(&[1, 0], 0), form(&[0, 1], 0), form(&[1, -1], 0)]);
    let conds = general_conditions(&braid).unwrap();
    assert_eq!(conds.len(), 4);
    let origin = conds.iter().find(|c| c.support.len() == 3).unwrap();
    assert_eq!(origin.bound, -2);
    assert!(conds.iter().filter(|c| c.bound == -1).count() == 3);

    let axes = general(vec![form(&[1, 0], 0), form(&[0, 1], 0)]);
    assert_eq!(general_conditions(&axes).unwrap().len(), 2);

    let single = general(vec![form(&[1, 1], -1)]);
    let conds = general_conditions(&single).unwrap();
    assert_eq!(conds.len(), 1);
    assert_eq!(conds[0].bound, -1);

    let kn = crate::arrangement::kn_arrangement(2).unwrap();
    assert_eq!(general_conditions(&kn), Err(Error::NotGeneralArrangement));
}

#[test]
fn domain_atoms_validate_indices() {
    let bad = Domain::KnAtoms { n: 2, atoms: vec![KnAtom::Ge0(3)] };
    assert!(bad.polyhedron().is_err());
    let bad = Domain::KnAtoms { n: 2, atoms: vec![KnAtom::Ge(1, 1)] };
    assert!(bad.polyhedron().is_err());
    // x1 >= x2 and x2 >= x1 are both expressible.
    let both = Domain::KnAtoms { n: 2, atoms: vec![KnAtom::Ge(1, 2), KnAtom::Ge(2, 1)] };
    let p = both.polyhedron().unwrap();
    assert_eq!(ratpoly::dim(&p).unwrap(), 1);
}

#[test]
fn svariable_rendering() {
    assert_eq!(SVariable::Zero(1).render(2), "s01");
    assert_eq!(SVariable::One(1).render(2), "s13");
    assert_eq!(SVariable::One(2).render(2), "s23");
    assert_eq!(SVariable::Diag(1, 2).render(2), "s12");
    assert_eq!(SVariable::One(9).render(9), "s9_10");
    assert_eq!(SVariable::General(3).render(2), "s3");
    assert_eq!(kn_svariables(2).len(), 5);
    let rendered: Vec<String> = kn_svariables(2).iter().map(|v| v.render(2)).collect();
    assert_eq!(rendered, vec!["s01", "s02", "s12", "s13", "s23"]);
}
