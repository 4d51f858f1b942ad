use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use polyalg::algebra::{
    casimir, casimir_lower_form, env_commutator, env_mul, jacobi_check, solve_g, EnvelopeElement,
    PolyAlgebra,
};
use polyalg::coeffring::{rat, CoeffExpr, P0Poly, Sign, Symbol};
use polyalg::fusion::{fuse, fused_order_check, FusionKind};
use polyalg::random;

fn coeff(seed: u64) -> CoeffExpr {
    random::coeff(&mut random::instance_rng(seed, 0), true)
}

fn poly(seed: u64, max_degree: usize) -> P0Poly {
    let mut rng = random::instance_rng(seed, 1);
    let deg = rng.gen_range(0..=max_degree);
    random::poly(&mut rng, deg, true)
}

fn algebra(seed: u64, max_degree: usize) -> PolyAlgebra {
    PolyAlgebra::new(format!("r{seed}"), poly(seed, max_degree))
}

fn element(seed: u64) -> EnvelopeElement {
    let mut rng = random::instance_rng(seed, 2);
    let terms = rng.gen_range(1..=3);
    (0..terms).fold(EnvelopeElement::zero(), |acc, _| {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let deg = rng.gen_range(0..=2);
        let f = random::poly(&mut rng, deg, false);
        &acc + &EnvelopeElement::monomial(a, f, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficient_ring_axioms(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (a, b, c) = (coeff(x), coeff(y), coeff(z));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CoeffExpr::zero(), a.clone());
        prop_assert_eq!(&a * &CoeffExpr::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn polynomial_ring_axioms(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let (p, q, r) = (poly(x, 4), poly(y, 4), poly(z, 4));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!((&p * &q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
    }

    #[test]
    fn substitute_affine_is_a_ring_map(x in any::<u64>(), y in any::<u64>(), s in any::<u64>()) {
        let (p, q, alpha) = (poly(x, 4), poly(y, 4), coeff(s));
        for sign in [Sign::Plus, Sign::Minus] {
            prop_assert_eq!(
                (&p * &q).substitute_affine(&alpha, sign),
                &p.substitute_affine(&alpha, sign) * &q.substitute_affine(&alpha, sign)
            );
            prop_assert_eq!(
                (&p + &q).substitute_affine(&alpha, sign),
                &p.substitute_affine(&alpha, sign) + &q.substitute_affine(&alpha, sign)
            );
        }
        prop_assert_eq!(p.substitute_affine(&CoeffExpr::zero(), Sign::Plus), p.clone());
    }

    #[test]
    fn substitute_affine_round_trip(x in any::<u64>(), s in any::<u64>()) {
        let (p, alpha) = (poly(x, 5), coeff(s));
        // p(alpha + P0) then P0 -> -alpha + P0
        let there = p.substitute_affine(&alpha, Sign::Plus);
        prop_assert_eq!(there.substitute_affine(&-&alpha, Sign::Plus), p.clone());
        // P0 -> alpha - P0 is an involution
        let flip = p.substitute_affine(&alpha, Sign::Minus);
        prop_assert_eq!(flip.substitute_affine(&alpha, Sign::Minus), p.clone());
        // evaluation commutes with substitution
        prop_assert_eq!(there.eval_at(&CoeffExpr::zero()), p.eval_at(&alpha));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn envelope_product_is_associative(a in any::<u64>(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let alg = algebra(a, 3);
        let (ex, ey, ez) = (element(x), element(y), element(z));
        prop_assert_eq!(
            env_mul(&env_mul(&ex, &ey, &alg), &ez, &alg),
            env_mul(&ex, &env_mul(&ey, &ez, &alg), &alg)
        );
    }

    #[test]
    fn envelope_unit_and_distributivity(a in any::<u64>(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let alg = algebra(a, 3);
        let (ex, ey, ez) = (element(x), element(y), element(z));
        prop_assert_eq!(env_mul(&EnvelopeElement::one(), &ex, &alg), ex.clone());
        prop_assert_eq!(
            env_mul(&ex, &(&ey + &ez), &alg),
            &env_mul(&ex, &ey, &alg) + &env_mul(&ex, &ez, &alg)
        );
    }

    #[test]
    fn casimir_forms_agree_and_are_central(a in any::<u64>()) {
        let alg = algebra(a, 5);
        prop_assert_eq!(casimir(&alg), casimir_lower_form(&alg));
        let c = casimir(&alg);
        for gen in [EnvelopeElement::raise(), EnvelopeElement::lower(), EnvelopeElement::p0()] {
            prop_assert!(env_commutator(&c, &gen, &alg).is_zero());
        }
        prop_assert!(jacobi_check(&alg));
    }

    #[test]
    fn defining_relations_hold_in_normal_form(a in any::<u64>()) {
        let alg = algebra(a, 5);
        let (p, m, h) = (EnvelopeElement::raise(), EnvelopeElement::lower(), EnvelopeElement::p0());
        prop_assert_eq!(env_commutator(&h, &p, &alg), p.clone());
        prop_assert_eq!(env_commutator(&h, &m, &alg), -&m);
        prop_assert_eq!(env_commutator(&p, &m, &alg), EnvelopeElement::poly(alg.phi().clone()));
    }

    #[test]
    fn fusion_order_is_additive(x in any::<u64>(), y in any::<u64>()) {
        let (l, m) = (algebra(x, 4), algebra(y, 4));
        let (dl, dm) = (l.order().unwrap(), m.order().unwrap());
        for kind in [FusionKind::J, FusionKind::K] {
            let f = fuse(kind, &l, &m).unwrap();
            prop_assert!(fused_order_check(&f, dl, dm), "{kind}: {}", f.phi());
        }
    }

    #[test]
    fn g_solves_the_difference_equation(x in any::<u64>()) {
        let phi = poly(x, 6);
        let g = solve_g(&phi);
        prop_assert_eq!(&g - &g.shift(&rat(-1, 1)), phi);
        prop_assert!(g.coeff(0).is_zero());
    }
}

#[test]
fn fusion_of_colliding_factors_keeps_them_apart() {
    let l = PolyAlgebra::new("l", P0Poly::from_coeffs(vec![CoeffExpr::symbol("a"), CoeffExpr::int(1)]));
    let f = fuse(FusionKind::K, &l, &l).unwrap();
    let names: Vec<_> = f.phi().symbols().iter().map(|s| s.name().to_string()).collect();
    assert!(names.contains(&"a".to_string()) && names.contains(&"a_2".to_string()), "{names:?}");
    assert_eq!(f.renames.get("a"), Some(&Symbol::new("a_2")));

    // setting both copies equal recovers the symmetric fusion
    let mut map = BTreeMap::new();
    map.insert(Symbol::new("a_2"), CoeffExpr::symbol("a"));
    let same = f.specialize(&map).unwrap();
    assert_eq!(same.order(), Some(3));
}

#[test]
fn specialization_examples() {
    let q = polyalg::algebra::builtin("quadratic").unwrap();
    let mut map = BTreeMap::new();
    map.insert(Symbol::new("a"), CoeffExpr::zero());
    map.insert(Symbol::new("b"), CoeffExpr::int(2));
    map.insert(Symbol::new("c"), CoeffExpr::zero());
    let su2 = q.specialize(&map).unwrap();
    assert!(su2.same_structure(&polyalg::algebra::builtin("su2").unwrap()));
    assert!(su2.centrals().is_empty());

    let mut partial = BTreeMap::new();
    partial.insert(Symbol::new("c"), CoeffExpr::symbol("t").pow(2));
    let out = q.specialize(&partial).unwrap();
    let names: Vec<_> = out.centrals().iter().map(|s| s.name().to_string()).collect();
    assert_eq!(names, ["a", "b", "t"]);
}
