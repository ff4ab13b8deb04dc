//! End-to-end run of the Vandermonde lambda = (1..8) case over Q, checked
//! against values frozen from an independent computer-algebra run of the
//! same construction.

use jacring::charvar::{charvar_first, charvar_second};
use jacring::cohomology::{build_jacobian_ring, compute_graded_basis, poly2vec};
use jacring::higgs::compute_theta_matrices;
use jacring::matrixgen::vandermonde_1_to_8;
use jacring::poly::Polynomial;
use jacring::scalar::FieldConfig;
use jacring::symmetric::run_plethysm;

#[test]
fn hyperelliptic_1_to_8_over_q() {
    let field = FieldConfig::Rationals;
    let a = vandermonde_1_to_8(field);
    let jr = build_jacobian_ring(&a, field).unwrap();
    assert_eq!(jr.ideal().reduced_basis().len(), 317);

    let basis = compute_graded_basis(&jr, true).unwrap();
    assert_eq!(basis.dims(), [1, 9, 9, 1]);
    assert_eq!(basis.total_dim(), 20);

    let names: Vec<String> = basis.components()[1]
        .iter()
        .map(|m| format!("{}", Polynomial::monomial(jr.ring(), m.clone())))
        .collect();
    assert_eq!(
        names,
        [
            "x5^2*y2", "x5^2*y3", "x5^2*y4", "x6^2*y2", "x6^2*y3", "x6^2*y4", "x7^2*y2",
            "x7^2*y3", "x7^2*y4"
        ]
    );
    let names2: Vec<String> = basis.components()[2]
        .iter()
        .map(|m| format!("{}", Polynomial::monomial(jr.ring(), m.clone())))
        .collect();
    assert_eq!(
        names2,
        [
            "x6^4*y3^2",
            "x6^4*y3*y4",
            "x6^4*y4^2",
            "x6^2*x7^2*y3^2",
            "x6^2*x7^2*y3*y4",
            "x6^2*x7^2*y4^2",
            "x7^4*y3^2",
            "x7^4*y3*y4",
            "x7^4*y4^2"
        ]
    );
    let top = format!(
        "{}",
        Polynomial::monomial(jr.ring(), basis.components()[3][0].clone())
    );
    assert_eq!(top, "x7^6*y4^3");

    let thetas = compute_theta_matrices(&jr, &basis).unwrap();
    let report = run_plethysm(&thetas).unwrap();
    assert_eq!(report.dim_u51, 9);
    assert_eq!(report.dim_u42, 45);
    assert_eq!(report.dim_u33, 78);
    assert_eq!(report.bound, 65);
    assert!(!report.modular_consistent);

    // equation sanity over Q; the heavy dimension/genus pass is exercised
    // over a large prime field elsewhere
    let v1 = charvar_first(&jr, &basis).unwrap();
    let v2 = charvar_second(&jr, &basis).unwrap();
    assert_eq!(v1.equations().len(), 9);
    assert_eq!(v2.equations().len(), 1);
    for f in v1.equations() {
        assert_eq!(f.total_degree(), Some(2));
    }
    assert_eq!(v2.equations()[0].total_degree(), Some(3));

    // spot evaluation identity over Q at one deterministic point
    let z: Vec<_> = (1..=9)
        .map(|k| jacring::scalar::ExactScalar::from_i64(k, field))
        .collect();
    let mut lin = Polynomial::zero(jr.ring());
    for (zi, e) in z.iter().zip(&basis.components()[1]) {
        lin = jacring::poly::Polynomial::arith(
            &lin,
            &Polynomial::term(jr.ring(), e.clone(), zi.clone()),
            jacring::poly::PolyOp::Add,
        )
        .unwrap();
    }
    let sq = poly2vec(&(&lin * &lin), &jr, &basis).unwrap();
    for (l, f) in v1.equations().iter().enumerate() {
        assert_eq!(f.evaluate(&z).unwrap(), sq[10 + l]);
    }
    let cube = &(&lin * &lin) * &lin;
    assert_eq!(
        v2.equations()[0].evaluate(&z).unwrap(),
        poly2vec(&cube, &jr, &basis).unwrap()[19]
    );
}
