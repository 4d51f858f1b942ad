use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng;

use polyalg::algebra::{builtin, env_mul, EnvelopeElement, PolyAlgebra};
use polyalg::checks::{golden_quadratic_boson, golden_su11_su11, golden_su2_su11};
use polyalg::coeffring::{rat, CoeffExpr, Symbol};
use polyalg::fusion::{fuse, FusionKind};
use polyalg::matrixrep::{
    casimir_matrix, eval_envelope, lambda_centrality, rep_boson, rep_fused, rep_su11, rep_su2,
    verify_casimir, verify_relations, Rep, SymbolValue,
};
use polyalg::random;

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.abs()))
}

fn random_element(seed: u64) -> EnvelopeElement {
    let mut rng = random::instance_rng(seed, 0);
    (0..3).fold(EnvelopeElement::zero(), |acc, _| {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let deg = rng.gen_range(0..=2);
        &acc + &EnvelopeElement::monomial(a, random::poly(&mut rng, deg, false), b)
    })
}

#[test]
fn normal_ordered_product_matches_matrix_product() {
    let su2 = builtin("su2").unwrap();
    for j in [2.0, 2.5] {
        let rep = rep_su2(j).unwrap();
        for seed in 0..25 {
            let (x, y) = (random_element(2 * seed), random_element(2 * seed + 1));
            let lhs = eval_envelope(&rep, &env_mul(&x, &y, &su2)).unwrap();
            let rhs = eval_envelope(&rep, &x).unwrap() * eval_envelope(&rep, &y).unwrap();
            let scale = max_abs(&rhs).max(1.0);
            assert!(max_abs(&(lhs - rhs)) <= 1e-12 * scale, "j={j} seed={seed}");
        }
    }
}

#[test]
fn casimir_takes_irrep_values() {
    let su2 = builtin("su2").unwrap();
    for two_j in 0..=8 {
        let j = two_j as f64 / 2.0;
        let rep = rep_su2(j).unwrap();
        let c = casimir_matrix(&rep, &su2).unwrap();
        let want = DMatrix::<f64>::identity(rep.dim(), rep.dim()) * (j * (j + 1.0));
        assert!(max_abs(&(c - want)) <= 1e-12, "j={j}");
    }
    let su11 = builtin("su11").unwrap();
    let rep = rep_su11(1.5, 14).unwrap();
    let c = casimir_matrix(&rep, &su11).unwrap();
    for i in rep.exact_interior.indices() {
        assert!((c[(i, i)] + 0.75).abs() <= 1e-10);
    }
}

fn check_fused(kind: FusionKind, l: &str, m: &str, rl: Rep, rm: Rep, mu: f64) {
    let f = fuse(kind, &builtin(l).unwrap(), &builtin(m).unwrap()).unwrap();
    let rep = rep_fused(&f, &rl, &rm, mu).unwrap();
    assert!(!rep.exact_interior.is_empty());
    let rel = verify_relations(&rep, &f.algebra).unwrap();
    assert!(rel.passes(1e-9 * rel.scale.max(1.0)), "{rel:?}");
    let cas = verify_casimir(&rep, &f.algebra).unwrap();
    assert!(cas.passes(1e-9 * cas.scale.max(1.0)), "{cas:?}");
    assert!(lambda_centrality(&rep, &f.lambda).unwrap() <= 1e-12);
}

#[test]
fn fused_realizations_with_general_normalization() {
    check_fused(FusionKind::J, "su2", "boson", rep_su2(2.0).unwrap(), rep_boson(10).unwrap(), 0.7);
    check_fused(FusionKind::J, "su2", "su11", rep_su2(1.5).unwrap(), rep_su11(1.0, 10).unwrap(), 1.3);
    check_fused(FusionKind::J, "su11", "su11", rep_su11(0.5, 9).unwrap(), rep_su11(2.0, 9).unwrap(), 0.4);
    check_fused(FusionKind::K, "su11", "su11", rep_su11(1.0, 9).unwrap(), rep_su11(1.5, 9).unwrap(), 0.9);
    check_fused(FusionKind::K, "boson", "boson", rep_boson(9).unwrap(), rep_boson(9).unwrap(), 1.1);
    check_fused(FusionKind::K, "su2", "boson", rep_su2(1.0).unwrap(), rep_boson(10).unwrap(), 1.0);
}

#[test]
fn recentered_realization_matches_recentered_algebra() {
    let b = builtin("boson").unwrap();
    let k = fuse(FusionKind::K, &b, &b).unwrap();
    let mut unit = BTreeMap::new();
    unit.insert(k.mu2.clone(), CoeffExpr::one());
    let alg = k.specialize(&unit).unwrap();
    let shifted = alg.recenter(&CoeffExpr::constant(rat(1, 2)));
    assert!(shifted.same_structure(&builtin("su11").unwrap()));
    let rep = rep_fused(&k, &rep_boson(9).unwrap(), &rep_boson(9).unwrap(), 1.0)
        .unwrap()
        .recenter(0.5);
    assert!(verify_relations(&rep, &shifted).unwrap().passes(1e-10));
}

/// Realizes the generic quadratic algebra on `fuse(J, su2, boson)` by reading
/// its coefficients off as diagonal central values.
fn quadratic_from_fused(j: f64, cutoff: usize, mu: f64) -> Rep {
    let inner = fuse(FusionKind::J, &builtin("su2").unwrap(), &builtin("boson").unwrap()).unwrap();
    let mut rep = rep_fused(&inner, &rep_su2(j).unwrap(), &rep_boson(cutoff).unwrap(), mu).unwrap();
    let phi = inner.phi();
    assert_eq!(phi.degree(), Some(2));
    let mut symbols = BTreeMap::new();
    for (name, power) in [("c", 0), ("b", 1), ("a", 2)] {
        let value = rep.eval_coeff(phi.coeff(power)).unwrap();
        symbols.insert(Symbol::new(name), SymbolValue::Diagonal(value));
    }
    rep.symbol_eval = symbols;
    rep.label = format!("quadratic via {}", rep.label);
    rep
}

#[test]
fn nested_fusion_confirms_the_cubic_closed_form() {
    let quad = builtin("quadratic").unwrap();
    let rq = quadratic_from_fused(1.5, 12, 0.8);
    assert!(verify_relations(&rq, &quad).unwrap().passes(1e-10));

    let outer = fuse(FusionKind::J, &quad, &builtin("boson").unwrap()).unwrap();
    let rep = rep_fused(&outer, &rq, &rep_boson(8).unwrap(), 1.2).unwrap();
    assert!(rep.exact_interior.len() >= 8, "{}", rep.exact_interior.len());
    let computed = verify_relations(&rep, &outer.algebra).unwrap();
    assert!(computed.passes(1e-9 * computed.scale.max(1.0)), "{computed:?}");

    // the printed closed form is not realized on the same matrices
    let printed = PolyAlgebra::new("printed", golden_quadratic_boson());
    let report = verify_relations(&rep, &printed).unwrap();
    assert!(report.max_interior() > 1e-3, "{report:?}");
}

#[test]
fn higgs_closed_form_is_checked_against_matrices() {
    let f = fuse(FusionKind::J, &builtin("su2").unwrap(), &builtin("su11").unwrap()).unwrap();
    let rep = rep_fused(&f, &rep_su2(1.5).unwrap(), &rep_su11(1.0, 14).unwrap(), 1.0).unwrap();
    let computed = verify_relations(&rep, &f.algebra).unwrap();
    assert!(computed.passes(1e-9), "{computed:?}");
    let printed = PolyAlgebra::new("printed", golden_su2_su11());
    assert!(verify_relations(&rep, &printed).unwrap().max_interior() > 1.0);

    let f = fuse(FusionKind::J, &builtin("su11").unwrap(), &builtin("su11").unwrap()).unwrap();
    let rep = rep_fused(&f, &rep_su11(1.0, 12).unwrap(), &rep_su11(1.5, 12).unwrap(), 1.0).unwrap();
    let printed = PolyAlgebra::new("printed", golden_su11_su11());
    assert!(verify_relations(&rep, &printed).unwrap().passes(1e-9));
}
