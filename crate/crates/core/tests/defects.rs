mod common;

use common::*;
use tropdef_core::algebra::{
    groebner_basis, initial_ideal_basis, truncated_groebner_basis, DefectTuple, Exponent, PolynomialSystem, TermOrder,
    WeightVector,
};
use tropdef_core::defects::*;
use tropdef_core::num::rat;
use tropdef_core::polyhedra::HPolyhedron;
use tropdef_core::tropical::{coordinate_subspace, prevariety, stable_filter, PrevarietyOptions};

fn w(xs: &[i64]) -> WeightVector {
    WeightVector::from_integers(xs)
}

fn tuple(ws: &[&[i64]]) -> DefectTuple {
    DefectTuple::new(ws.iter().map(|x| w(x)).collect()).unwrap()
}

fn accepted(f: &PolynomialSystem, det: &Detection, oracle: &VarietyOracle) -> bool {
    verify_certificate(f, det.certificate.as_ref().unwrap(), Some(oracle)).unwrap().accepted
}

#[test]
fn overapproximation_of_f1_is_one_point() {
    let pts = zero_dim_variety_points(&f1(), 0, &VarietyOracle::GroebnerOverapproximation).unwrap();
    assert!(!pts.exact);
    assert_eq!(pts.points(), vec![w(&[0, 1])]);
}

#[test]
fn trivial_oracle_on_proper_system() {
    let f = system(&["x", "y"], |v| {
        vec![poly(v, &[(c(1), &[1, 0]), (c(-2), &[0, 0])]), poly(v, &[(c(1), &[0, 1]), (c(1), &[1, 0])])]
    });
    let pts = zero_dim_variety_points(&f, 0, &VarietyOracle::TrivialValuation).unwrap();
    assert!(pts.exact);
    assert_eq!(pts.points(), vec![w(&[0, 0])]);
    assert!(zero_dim_variety_points(&f1(), 0, &VarietyOracle::TrivialValuation).is_err());
}

#[test]
fn basis_oracle_with_affine_constraint() {
    let f = psi_example();
    let aff = affine_constraints(f.vars(), &[ct(1, -1)]);
    let f_prime = f.extended(aff).unwrap();
    let pts = zero_dim_variety_points(&f_prime, 1, &VarietyOracle::TropicalBasis(psi_basis())).unwrap();
    assert_eq!(pts.points(), vec![w(&[-1, 0])]);
}

#[test]
fn basis_check_detects_wrong_ideal() {
    let good = VarietyOracle::TropicalBasis(strong_basis());
    assert_eq!(good.check_basis(&strong_example()).unwrap(), Some(true));
    let bad = VarietyOracle::TropicalBasis(system(&["x", "y"], |v| vec![poly(v, &[(c(1), &[1, 0]), (c(1), &[0, 0])])]));
    assert_eq!(bad.check_basis(&strong_example()).unwrap(), Some(false));
    assert_eq!(VarietyOracle::TropicalBasis(f2()).check_basis(&f1()).unwrap(), None);
}

#[test]
fn strong_example_found_only_at_zero() {
    let f = strong_example();
    let oracle = VarietyOracle::TropicalBasis(strong_basis());
    for v in -2..=2 {
        let det = detect_strong(&f, &[rat(v)], &oracle).unwrap();
        if v == 0 {
            assert!(det.found());
            assert_eq!(det.line, Some(DetectionLine::PositiveDimensional));
            assert_eq!(det.oracle_queries, 0);
            let t = det.tuple().unwrap();
            assert_eq!(t.len(), 2);
            assert_eq!(t.first()[0], rat(0));
            assert!(accepted(&f, &det, &oracle));
        } else {
            assert_eq!(det.status, DetectionStatus::NotFound, "v = {v}");
        }
    }
}

#[test]
fn transformed_example_found_away_from_zero() {
    let f = psi_example();
    let oracle = VarietyOracle::TropicalBasis(psi_basis());
    for v in -2..=2 {
        let det = detect_strong(&f, &[rat(v)], &oracle).unwrap();
        if v == 0 {
            assert_eq!(det.status, DetectionStatus::NotFound);
            continue;
        }
        assert!(det.found(), "v = {v}");
        assert_eq!(det.line, Some(DetectionLine::VarietyExclusion));
        assert_eq!(det.tuple().unwrap(), &tuple(&[&[v, -v]]));
        assert!(accepted(&f, &det, &oracle));
    }
    let det = detect_strong(&f, &[rat(-1)], &oracle).unwrap();
    assert_eq!(det.tuple().unwrap(), &tuple(&[&[-1, 1]]));
}

#[test]
fn line_example_found_for_positive_v() {
    let (f, basis) = line_example();
    let oracle = VarietyOracle::TropicalBasis(basis);
    for v in [-3, -1, 1, 2] {
        let det = detect_strong(&f, &[rat(v)], &oracle).unwrap();
        assert_eq!(det.found(), v > 0, "v = {v}");
        if v > 0 {
            assert!(accepted(&f, &det, &oracle));
        } else {
            assert_eq!(det.status, DetectionStatus::NotFound);
        }
    }
}

#[test]
fn line_example_at_zero_is_rejected_by_the_verifier() {
    // H = {w_x = 0} is not generic here; the positive-dimensional cell lies
    // inside Trop(I) and the unit-ideal test refuses it.
    let (f, basis) = line_example();
    let oracle = VarietyOracle::TropicalBasis(basis);
    let det = detect_strong(&f, &[rat(0)], &oracle).unwrap();
    assert!(det.found());
    let report = verify_certificate(&f, det.certificate.as_ref().unwrap(), None).unwrap();
    assert!(report.prevariety_side);
    assert!(report.checks.iter().any(|c| c.name == "unit" && !c.passed));
}

#[test]
fn weak_on_f1_is_high_dimensional() {
    let f = f1();
    let oracle = VarietyOracle::TropicalBasis(f2());
    let det = detect_weak(&f, &[], &oracle).unwrap();
    assert!(det.found());
    assert_eq!(det.line, Some(DetectionLine::HighDimensional));
    assert_eq!(det.oracle_queries, 0);
    let t = det.tuple().unwrap();
    assert_eq!(t.first(), &w(&[0, 1]));
    let head = DefectTuple::new(t.entries()[..2].to_vec()).unwrap();
    let paper = tuple(&[&[0, 1], &[0, 1]]);
    for g in f.generators() {
        assert_eq!(g.nested_initial_form(&head).unwrap(), g.nested_initial_form(&paper).unwrap());
    }
    assert!(accepted(&f, &det, &oracle));
    let report = verify_certificate(&f, det.certificate.as_ref().unwrap(), None).unwrap();
    assert_eq!(report.variety_check, Some(VarietyCheck::DimensionEvidence));
}

#[test]
fn weak_high_dim_ignores_a_wrong_oracle() {
    // The oracle is never consulted on the high-dimensional branch.
    let det = detect_weak(&f1(), &[], &VarietyOracle::GroebnerOverapproximation).unwrap();
    assert_eq!(det.line, Some(DetectionLine::HighDimensional));
    assert_eq!(det.oracle_queries, 0);
}

#[test]
fn weak_negative_contract() {
    let f = strong_example();
    let det = detect_weak(&f, &[c(1)], &VarietyOracle::TrivialValuation).unwrap();
    assert_eq!(det.status, DetectionStatus::NotFound);
    assert_eq!(det.oracle_queries, 1);

    let h = coordinate_subspace(2, &[rat(0)]).unwrap();
    let canon = |s: &PolynomialSystem| {
        let pv = prevariety(s, &HPolyhedron::universe(2), &PrevarietyOptions::default()).unwrap();
        let mut cells: Vec<HPolyhedron> =
            stable_filter(&pv.cells, &h).unwrap().into_iter().map(|c| c.polyhedron.canonical()).collect();
        cells.sort();
        cells.dedup();
        cells
    };
    assert_eq!(canon(&f), canon(&strong_basis()));
}

#[test]
fn weak_on_transformed_example() {
    let f = psi_example();
    let oracle = VarietyOracle::TropicalBasis(psi_basis());
    let det = detect_weak(&f, &[ct(1, -1)], &oracle).unwrap();
    assert!(det.found());
    assert_eq!(det.line, Some(DetectionLine::StableExclusion));
    assert_eq!(det.tuple().unwrap().first(), &w(&[-1, 1]));
    assert_eq!(det.oracle_queries, 1);
    assert!(accepted(&f, &det, &oracle));
}

#[test]
fn tropical_basis_admits_no_defect() {
    let f = f2();
    let oracle = VarietyOracle::TropicalBasis(f2());
    for v in -2..=2 {
        let det = detect_strong(&f, &[rat(v)], &oracle).unwrap();
        assert_eq!(det.status, DetectionStatus::NotFound);
        let det = detect_weak(&f, &[ct(3, v)], &oracle).unwrap();
        assert_eq!(det.status, DetectionStatus::NotFound);
    }
    assert_eq!(detect_weak(&f, &[], &oracle).unwrap().status, DetectionStatus::NotFound);
}

#[test]
fn inexact_oracle_is_inconclusive() {
    // The superset from a Gröbner basis of F′ still contains (v, 0).
    let f = strong_example();
    let det = detect_strong(&f, &[rat(1)], &VarietyOracle::GroebnerOverapproximation).unwrap();
    assert_eq!(det.status, DetectionStatus::Inconclusive);
}

#[test]
fn published_singleton_for_f1() {
    let cert = Certificate::bare(&f1(), tuple(&[&[0, 2]]));
    let oracle = VarietyOracle::TropicalBasis(f2());
    let report = verify_certificate(&f1(), &cert, Some(&oracle)).unwrap();
    assert!(report.accepted);
    assert_eq!(report.variety_check, Some(VarietyCheck::OracleExclusion));
    assert_eq!(report.assumptions_used, vec![ASSUME_BASIS.to_string()]);
    // (0,1) alone is not a defect.
    let cert = Certificate::bare(&f1(), tuple(&[&[0, 1]]));
    assert!(!verify_certificate(&f1(), &cert, Some(&oracle)).unwrap().accepted);
}

#[test]
fn f2_rejects_every_probe() {
    let oracle = VarietyOracle::TropicalBasis(f2());
    let probes: [&[&[i64]]; 5] = [&[&[0, 1]], &[&[0, 2]], &[&[1, 0]], &[&[0, 1], &[0, 1]], &[&[-1, -1]]];
    for p in probes {
        let cert = Certificate::bare(&f2(), tuple(p));
        assert!(!verify_certificate(&f2(), &cert, Some(&oracle)).unwrap().accepted, "{p:?}");
        assert!(!verify_certificate(&f2(), &cert, None).unwrap().accepted);
    }
}

#[test]
fn verification_rejects_mismatched_system() {
    let cert = Certificate::bare(&f1(), tuple(&[&[0, 2]]));
    let report = verify_certificate(&f2(), &cert, Some(&VarietyOracle::TropicalBasis(f2()))).unwrap();
    assert!(!report.accepted);
    assert!(report.checks.iter().any(|c| c.name == "digest" && !c.passed));
}

fn homogenized_strong() -> PolynomialSystem {
    system(&["x", "y", "h"], |v| {
        vec![
            poly(v, &[(c(1), &[1, 1, 0]), (c(1), &[1, 0, 1]), (c(1), &[0, 1, 1]), (c(1), &[0, 0, 2])]),
            poly(v, &[(c(1), &[1, 1, 0]), (c(1), &[1, 0, 1]), (c(-1), &[0, 1, 1]), (c(-1), &[0, 0, 2])]),
        ]
    })
}

#[test]
fn singleton_of_homogenized_example() {
    let f = homogenized_strong();
    let t = tuple(&[&[0, 0, 0], &[0, 1, 0]]);
    let u = singleton(&f, &t).unwrap();
    for g in f.generators() {
        assert_eq!(g.initial_form(&u).unwrap(), g.nested_initial_form(&t).unwrap());
    }
    let r1 = verify_certificate(&f, &Certificate::bare(&f, t), None).unwrap();
    let r2 = verify_certificate(&f, &Certificate::bare(&f, DefectTuple::singleton(u)), None).unwrap();
    assert!(r1.accepted);
    assert_eq!(r1.accepted, r2.accepted);
}

#[test]
fn singleton_is_idempotent_on_interior_points() {
    let f = homogenized_strong();
    let w0 = w(&[3, 1, 0]);
    let t = DefectTuple::singleton(w0.clone());
    let u = singleton(&f, &t).unwrap();
    let g = groebner_basis(&f, &TermOrder::for_tuple(&t)).unwrap();
    for p in g.generators() {
        assert_eq!(p.initial_form(&u).unwrap(), p.initial_form(&w0).unwrap());
    }
    let sorted = |s: PolynomialSystem| {
        let mut v: Vec<String> = s.generators().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(initial_ideal_basis(&f, &u).unwrap()), sorted(initial_ideal_basis(&f, &w0).unwrap()));
}

#[test]
fn singleton_rejects_bad_input() {
    assert!(matches!(singleton(&f1(), &tuple(&[&[0, 1]])), Err(tropdef_core::Error::ValuedInput)));
    assert!(matches!(singleton(&strong_example(), &tuple(&[&[0, 1]])), Err(tropdef_core::Error::NotHomogeneous)));
}

#[test]
fn witness_certificate_on_small_system() {
    // in_{(0,1)}⟨x²−yz, xy−z²⟩ with weights on (x, y, z).
    let f = system(&["x", "y", "z"], |v| {
        vec![poly(v, &[(c(1), &[2, 0, 0]), (c(-1), &[0, 1, 1])]), poly(v, &[(c(1), &[1, 1, 0]), (c(-1), &[0, 0, 2])])]
    });
    let t = tuple(&[&[0, 0, 0]]);
    let cert = Certificate::with_witness(&f, t, Exponent(vec![1, 1, 0]));
    let report = verify_certificate(&f, &cert, None).unwrap();
    // xy is not in the ideal itself
    assert!(report.prevariety_side);
    assert!(!report.variety_side);
}

#[test]
fn truncated_basis_is_the_low_degree_part() {
    let f = system(&["x", "y", "z", "u"], |v| {
        vec![
            poly(v, &[(c(1), &[2, 0, 0, 0]), (c(-1), &[0, 1, 1, 0])]),
            poly(v, &[(c(1), &[1, 1, 0, 0]), (c(-1), &[0, 0, 1, 1]), (c(2), &[0, 0, 0, 2])]),
            poly(v, &[(c(1), &[0, 2, 0, 1]), (c(-3), &[1, 0, 0, 2])]),
        ]
    });
    for order in [TermOrder::grevlex(4), TermOrder::lex(), TermOrder::for_tuple(&tuple(&[&[1, 0, 2, 1]]))] {
        let full = groebner_basis(&f, &order).unwrap();
        let top = full.generators().iter().filter_map(|g| g.max_degree()).max().unwrap();
        for d in 2..=top as u32 {
            let low: Vec<_> = full.generators().iter().filter(|g| g.max_degree().unwrap() <= i64::from(d)).collect();
            let trunc = truncated_groebner_basis(&f, &order, d).unwrap();
            assert_eq!(trunc.len(), low.len(), "degree {d}");
            assert!(low.iter().all(|g| trunc.generators().contains(g)), "degree {d}");
        }
    }
}
