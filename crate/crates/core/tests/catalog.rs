mod common;

use common::*;
use g2erp::exterior::{fixtures, Endo, DIM, SPLIT};
use g2erp::g2core::{bryant_equality, closed_non_erp_example, erp_defect, erp_diagnostics, solve_q, torsion, G2Structure};
use g2erp::linalg::Mat;
use g2erp::quad::{catalog, check_structure, unimodular_specialization, CATALOG_NAMES};
use g2erp::scalars::{ExactScalar, Scalar};

type E = ExactScalar;

fn third() -> E {
    E::from_ratio(1, 3)
}

#[test]
fn torsion_is_normalized_exactly() {
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        let report = torsion(&mu, &G2Structure::standard(), &tol());
        assert!(report.closed, "{name}");
        assert_eq!(report.tau.as_ref(), Some(&fixtures::tau()), "{name}");
        assert_eq!(report.tau_norm_sq, Some(E::from_int(2)), "{name}");
        assert_eq!(report.split_agrees, Some(true), "{name}");
    }
}

#[test]
fn erp_equation_holds_exactly() {
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        let defect = erp_defect(&mu, &G2Structure::standard(), &fixtures::tau());
        assert!(defect.is_exactly_zero(), "{name}: {defect:?}");
        assert!(torsion(&mu, &G2Structure::standard(), &tol()).erp, "{name}");
    }
}

#[test]
fn ricci_is_pinched() {
    let expected = Mat::diagonal(&[-third(), -third(), -third(), E::zero(), E::zero(), E::zero(), E::zero()]);
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        let ric = mu.ricci(&tol()).unwrap();
        assert_eq!(Endo::restrict(&ric, &SPLIT).matrix(), &expected, "{name}");
        let shifted = ric.clone() + Mat::identity(DIM).scale(&third());
        assert!(mu.is_derivation(&shifted, &tol()), "{name}");
        let q = solve_q(&mu, &tol()).unwrap();
        assert_eq!(ric, -Mat::identity(DIM).scale(&third()) - q.scale(&E::from_int(2)), "{name}");
    }
}

#[test]
fn erp_consequences() {
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        assert!(erp_diagnostics(&mu, &tol()).unwrap().all_pass(), "{name}");
    }
}

#[test]
fn bryant_equality_separates_erp_from_closed() {
    for name in CATALOG_NAMES {
        let b = bryant_equality(&catalog(name).unwrap().to_bracket(), &tol()).unwrap();
        assert!(b.equal, "{name}");
    }
    let mu = closed_non_erp_example::<E>();
    assert!(torsion(&mu, &G2Structure::standard(), &tol()).closed);
    let b = bryant_equality(&mu, &tol()).unwrap();
    assert!(!b.equal);
    assert_ne!(b.scal_sq, b.three_ric_sq);
}

#[test]
fn nilradical_dimensions() {
    let dims: Vec<Option<usize>> = CATALOG_NAMES.iter().map(|n| check_structure(&catalog(n).unwrap(), &tol()).nilradical_dim).collect();
    assert_eq!(dims, [4, 5, 5, 6, 6].map(Some));
}

#[test]
fn j_is_the_unimodular_model() {
    let q = catalog("J").unwrap();
    assert_eq!(q.a1, Mat::zeros(2, 2));
    assert!(unimodular_specialization(&q, &tol()).unwrap().unimodular_holds());
    let [a, b, c] = [&q.a, &q.b, &q.c].map(|m| m.scale(&E::sqrt_basis(3).unwrap()));
    for (i, x) in [&a, &b, &c].iter().enumerate() {
        for (j, y) in [&a, &b, &c].iter().enumerate() {
            assert_eq!(x.frobenius(y), if i == j { E::one() } else { E::zero() });
        }
    }
    for name in ["M2", "M3", "B", "M1"] {
        assert!(!catalog(name).unwrap().a1.trace().is_exactly_zero(), "{name}");
    }
}

#[test]
fn j_equivalence_lies_in_g2() {
    let h = j_equivalence();
    assert_eq!(h.transpose() * h.clone(), Mat::identity(DIM));
    assert_eq!(h.determinant(&tol()), E::one());
    let phi = fixtures::phi::<E>();
    assert_eq!(phi.gl7_action(&h, &tol()).unwrap(), phi);
    let in_split = Endo::new(&SPLIT, h).embed();
    assert_ne!(phi.gl7_action(&in_split, &tol()).unwrap(), phi);
}

#[test]
fn catalog_files_round_trip() {
    for name in CATALOG_NAMES {
        let q = catalog(name).unwrap();
        let text = g2erp::formats::render_quadruple(&q, Some(name), None);
        let doc = g2erp::formats::parse_quadruple(&text).unwrap();
        match doc.entries {
            g2erp::formats::QuadEntries::Exact(back) => assert!(back == q, "{name}"),
            _ => panic!("{name}: exact entries read back as floats"),
        }
    }
}
