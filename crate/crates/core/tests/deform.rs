use g2erp::deform::{
    group_action, infinitesimal_action, linear_deformation_space, mat_exp, orbit_tangent, orthogonal, rigidity,
    symmetry_algebra_for, tangent_system, to_split_basis, SymmetryElement, TangentReport,
};
use g2erp::exterior::fixtures;
use g2erp::g2core::{torsion, G2Structure};
use g2erp::linalg::Mat;
use g2erp::quad::{catalog, Quadruple, CATALOG_NAMES};
use g2erp::scalars::{ExactScalar, Scalar, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report(name: &str) -> TangentReport {
    rigidity(&catalog(name).unwrap(), &tol()).unwrap()
}

#[test]
fn rigidity_table() {
    let expected = [("J", 4, 4, 0), ("M2", 2, 2, 0), ("M3", 2, 2, 0), ("B", 2, 0, 2), ("M1", 2, 2, 0)];
    for (name, t, u, d) in expected {
        let r = report(name);
        assert_eq!((r.tangent, r.orbit, r.derivations), (t, u, d), "{name}");
        assert!(r.orbit_in_tangent && r.derivations_in_tangent, "{name}");
        assert!(r.rigid, "{name}");
        assert_eq!(r.equivariantly_rigid, name != "B", "{name}");
    }
}

#[test]
fn derivations_orthogonal_to_orbit_when_not_unimodular() {
    for name in ["M2", "M3", "B", "M1"] {
        let q = catalog(name).unwrap();
        let orbit = orbit_tangent(&q, &tol()).unwrap();
        let ders = linear_deformation_space(&q, &tol()).unwrap();
        assert!(orthogonal(&orbit, &ders, &tol()), "{name}");
    }
}

#[test]
fn orbit_dimension_bounds() {
    for name in CATALOG_NAMES {
        let q = catalog(name).unwrap();
        let bound = if q.a1.trace().is_exactly_zero() { 4 } else { 2 };
        assert!(orbit_tangent(&q, &tol()).unwrap().dim() <= bound, "{name}");
    }
}

#[test]
fn non_erp_input_is_rejected() {
    let mut q = catalog("J").unwrap();
    q.a[(2, 2)] = ExactScalar::zero();
    assert!(tangent_system(&q, &tol()).is_err());
}

fn assert_erp_with_normal_torsion(q: &Quadruple<ExactScalar>) {
    let report = torsion(&q.to_bracket(), &G2Structure::standard(), &tol());
    assert!(report.tau_is(&fixtures::tau(), &tol()));
    assert!(report.erp);
}

#[test]
fn quarter_turn_keeps_j_erp() {
    let q = catalog("J").unwrap();
    let (z, o) = (ExactScalar::zero(), ExactScalar::one());
    // h₁ = (h₂h₃)ᵗ is the quarter turn [[0,1],[−1,0]] when h₂ = [[0,−1],[1,0]], h₃ = I
    let h = SymmetryElement::u0((z.clone(), -o.clone()), (o, z));
    let h1 = Mat::from_fn(2, 2, |i, j| to_split_basis(&h.matrix)[(1 + i, 1 + j)].clone());
    assert_eq!(h1, Mat::from_rows(vec![vec![ExactScalar::zero(), ExactScalar::one()], vec![-ExactScalar::one(), ExactScalar::zero()]]));
    let out = group_action(&h, &q, &tol()).unwrap();
    assert_erp_with_normal_torsion(&out);
}

#[test]
fn coset_elements_keep_catalog_erp() {
    let (z, o) = (ExactScalar::zero(), ExactScalar::one());
    let (x, y) = (ExactScalar::from_ratio(3, 5), ExactScalar::from_ratio(4, 5));
    for name in CATALOG_NAMES {
        let q = catalog(name).unwrap();
        for h in [
            SymmetryElement::g(),
            SymmetryElement::u0((x.clone(), y.clone()), (z.clone(), o.clone())),
            SymmetryElement::u0g((z.clone(), o.clone()), (x.clone(), y.clone())),
        ] {
            assert_erp_with_normal_torsion(&group_action(&h, &q, &tol()).unwrap());
        }
    }
}

#[test]
fn u0_rotates_b_and_c() {
    // conjugation gives B' = h₂(xB + yC)h₂⁻¹ and C' = h₂(−yB + xC)h₂⁻¹ for h₁ = [[x,y],[−y,x]]
    let q = catalog("M2").unwrap();
    let (x, y) = (ExactScalar::from_ratio(3, 5), ExactScalar::from_ratio(4, 5));
    let (z, o) = (ExactScalar::zero(), ExactScalar::one());
    // h₂ = [[x,−y],[y,x]] on (e₁,e₂) and h₃ = I give h₁ = h₂ᵗ = [[x,y],[−y,x]]
    let h = SymmetryElement::u0((x.clone(), -y.clone()), (o, z));
    let out = group_action(&h, &q, &tol()).unwrap();
    let s = to_split_basis(&h.matrix);
    let k = Mat::from_fn(4, 4, |i, j| s[(3 + i, 3 + j)].clone());
    let ki = k.transpose();
    let b = k.clone() * (q.b.scale(&x) + q.c.scale(&y)) * ki.clone();
    let c = k * (q.c.scale(&x) - q.b.scale(&y)) * ki;
    assert_eq!(out.b, b);
    assert_eq!(out.c, c);
}

#[test]
fn ug1tau_action_on_j() {
    let q = catalog("J").unwrap().to_f64();
    let h = SymmetryElement::u_g1_tau(0.4, -0.3, 0.9, 0.2);
    let out = group_action(&h, &q, &tol()).unwrap();
    let report = torsion(&out.to_bracket(), &G2Structure::standard(), &tol());
    assert!(report.tau_is(&fixtures::tau(), &tol()));
    assert!(report.erp);
}

#[test]
fn finite_differences_match_infinitesimal_action() {
    let t = 1e-6;
    let loose = Tolerances { eq_tol: 1e-5, rank_tol: 1e-8 };
    for name in CATALOG_NAMES {
        let q = catalog(name).unwrap().to_f64();
        let x0 = q.chart(&tol()).unwrap();
        let (_, algebra) = symmetry_algebra_for(&q, &tol());
        for d in algebra {
            let exact = infinitesimal_action(&d, &q, &tol()).unwrap();
            let h = mat_exp(&d.scale(&t));
            let moved = q.to_bracket().conjugate(&h, &tol()).unwrap();
            let moved = Quadruple::from_bracket(&moved, &loose).unwrap().chart(&loose).unwrap();
            for i in 0..x0.len() {
                let fd = (moved[i] - x0[i]) / t;
                assert!((fd - exact[i]).abs() < 1e-4, "{name}: coordinate {i}: {fd} vs {}", exact[i]);
            }
        }
    }
}
