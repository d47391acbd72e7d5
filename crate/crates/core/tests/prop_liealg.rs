mod common;

use std::sync::OnceLock;

use common::*;
use g2erp::exterior::{KForm, DIM};
use g2erp::liealg::{Bracket, DerivationConstraints};
use g2erp::linalg::Mat;
use g2erp::quad::{catalog, CATALOG_NAMES};
use g2erp::scalars::{ExactScalar, Scalar};
use proptest::prelude::*;

fn derivation_bases() -> &'static Vec<Vec<Mat<f64>>> {
    static BASES: OnceLock<Vec<Vec<Mat<f64>>>> = OnceLock::new();
    BASES.get_or_init(|| {
        (0..CATALOG_NAMES.len())
            .map(|i| {
                let space = catalog_f64(i).derivations(DerivationConstraints::default(), &tol()).unwrap();
                space.basis().iter().map(|v| Mat::from_fn(DIM, DIM, |a, b| v[a * DIM + b])).collect()
            })
            .collect()
    })
}

/// Milnor's formula scal = −¼Σ|[eᵢ,eⱼ]|² − ½ΣB(eᵢ,eᵢ) − |H|².
fn scalar_curvature(mu: &Bracket<f64>) -> f64 {
    let mut brackets = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            brackets += mu.apply(&unit(i), &unit(j)).iter().map(|x| x * x).sum::<f64>();
        }
    }
    let killing: f64 = (0..DIM)
        .map(|i| {
            let ad = mu.ad(i + 1);
            (ad.clone() * ad).trace()
        })
        .sum();
    let mean: f64 = (0..DIM).map(|i| mu.ad(i + 1).trace().powi(2)).sum();
    -0.25 * brackets - 0.5 * killing - mean
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_squared_vanishes_iff_jacobi(mu in moved_catalog(), bad in corruption()) {
        check_d_squared_iff_jacobi(&corrupt(mu, bad))?;
    }

    #[test]
    fn derivations_commute_with_d(i in catalog_index(), coeffs in prop::collection::vec(coeff(), 10), gamma in (1usize..=6).prop_flat_map(form)) {
        let mu = catalog_f64(i);
        let mut d = Mat::zeros(DIM, DIM);
        for (c, b) in coeffs.iter().zip(&derivation_bases()[i]) {
            d = d + b.scale(c);
        }
        prop_assert!(mu.is_derivation(&d, &tol()));
        assert_forms_close(&mu.d(&gamma.theta_mat(&d)), &mu.d(&gamma).theta_mat(&d))?;
    }

    #[test]
    fn d_of_star_basis_is_trace(mu in moved_catalog()) {
        let top = KForm::basis(&[1, 2, 3, 4, 5, 6, 7]);
        for i in 1..=DIM {
            let tr = mu.trace_ad(i);
            assert_forms_close(&mu.d(&KForm::basis(&[i]).star7()), &top.scale(&-tr))?;
            let hat: Vec<usize> = (1..=DIM).filter(|&k| k != i).collect();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert_forms_close(&mu.d(&KForm::basis(&hat)), &top.scale(&(sign * tr)))?;
        }
    }

    #[test]
    fn ricci_is_symmetric_with_scalar_trace(mu in moved_catalog()) {
        let ric = mu.ricci(&tol()).unwrap();
        prop_assert!(ric.is_symmetric(&tol()));
        let scal = scalar_curvature(&mu);
        prop_assert!((ric.trace() - scal).abs() <= TOL * (1.0 + scal.abs()), "{} vs {scal}", ric.trace());
    }
}

#[test]
fn catalog_jacobi_and_corruption() {
    for name in CATALOG_NAMES {
        let mut mu = catalog(name).unwrap().to_bracket();
        assert!(mu.check_jacobi(&tol()).passes(), "{name}");
        let v = mu.get(7, 1, 1) + ExactScalar::one();
        mu.set(7, 1, 1, v);
        let report = mu.check_jacobi(&tol());
        assert!(!report.passes() && !report.d_squared_vanishes, "{name}");
    }
}

#[test]
fn catalog_ricci_shift_is_a_derivation() {
    for name in CATALOG_NAMES {
        let mu = catalog(name).unwrap().to_bracket();
        let ric = mu.ricci(&tol()).unwrap();
        let shifted = ric + Mat::identity(DIM).scale(&ExactScalar::from_ratio(1, 3));
        assert!(mu.is_derivation(&shifted, &tol()), "{name}");
    }
}
