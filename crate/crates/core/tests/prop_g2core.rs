mod common;

use common::*;
use g2erp::exterior::{fixtures, form_dim, KForm, DIM};
use g2erp::g2core::{delta_la, induce_metric, torsion, G2Structure};
use g2erp::linalg::Mat;
use g2erp::quad::{catalog, CATALOG_NAMES};
use g2erp::scalars::ExactScalar;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn torsion_routes_agree(mu in closed_split()) {
        check_torsion_routes(&mu)?;
    }

    #[test]
    fn delta_la_matches_direct_dtau(mu in closed_split()) {
        check_delta_la(&mu)?;
    }

    #[test]
    fn closed_split_identities(mu in closed_split()) {
        let (lambda, a) = mu.split().unwrap();
        let omega = fixtures::omega::<f64>();
        let rho = fixtures::rho_plus::<f64>();
        assert_forms_close(&lambda.d(&omega), &rho.theta(&a))?;
        assert_forms_close(&lambda.d(&rho), &KForm::zero(4))?;
        assert_forms_close(&lambda.d(&omega).w(&omega), &-omega.theta(&a).w(&rho))?;
    }
}

#[test]
fn closed_directions_are_nontrivial() {
    let dims: Vec<usize> = closed_directions().iter().map(Vec::len).collect();
    assert!(dims.iter().all(|&d| d > 0), "{dims:?}");
}

#[test]
fn delta_la_exact_on_catalog() {
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        let (lambda, a) = mu.split().unwrap();
        let tau = torsion(&mu, &G2Structure::standard(), &tol()).tau.unwrap();
        assert_eq!(delta_la(&lambda, &a).unwrap(), mu.d(&tau), "{name}");
    }
}

#[test]
fn catalog_lambda_is_half_flat() {
    for name in CATALOG_NAMES {
        let (lambda, _) = catalog(name).unwrap().to_bracket().split().unwrap();
        let omega = fixtures::omega::<ExactScalar>();
        assert!(lambda.d(&omega).w(&omega).is_exactly_zero(), "{name}");
        assert!(lambda.d(&fixtures::rho_plus::<ExactScalar>()).is_exactly_zero(), "{name}");
    }
}

#[test]
fn induced_metric_of_standard_phi() {
    let s = induce_metric(&phi()).unwrap();
    assert!(s.metric.approx_eq(&Mat::identity(DIM), &tol()));
    let standard = G2Structure::<f64>::standard();
    for k in 0..=DIM {
        for r in 0..form_dim(k) {
            let e = KForm::from_coeffs(k, (0..form_dim(k)).map(|c| if c == r { 1.0 } else { 0.0 }).collect());
            assert!((s.star(&e) - standard.star(&e)).max_abs() <= TOL);
            assert!((s.star(&e) - e.star7()).max_abs() <= TOL);
        }
    }
}
