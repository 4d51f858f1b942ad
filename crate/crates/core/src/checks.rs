//! Acceptance checks shared by the `selftest` command and the acceptance test suite.
//!
//! Each criterion bundles a set of named checks. Symbolic checks are exact
//! comparisons of canonical forms; numeric checks compare max-abs residuals
//! against fixed tolerances.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{
    builtin, casimir, casimir_lower_form, env_commutator, jacobi_check, normal_form, solve_g,
    EnvelopeElement, Factor, PolyAlgebra, BUILTIN_NAMES,
};
use crate::coeffring::{rat, CoeffExpr, P0Poly, Sign, Symbol};
use crate::fusion::{fuse, fused_order_check, FusedAlgebra, FusionKind};
use crate::matrixrep::{
    lambda_centrality, rep_boson, rep_fused, rep_su11, rep_su2, verify_relations, Rep,
    ResidualReport,
};
use crate::random;
use crate::sweep::{self, Execution};

pub const SEED: u64 = 0x5EED_2007;

pub const TOL_EXACT_IRREP: f64 = 1e-13;
pub const TOL_TRUNCATED: f64 = 1e-10;
pub const TOL_FUSED: f64 = 1e-9;
pub const TOL_CENTRAL: f64 = 1e-12;
pub const MAX_DOUBLING_RATIO: f64 = 10.0;
/// Relative residual regarded as pure floating-point noise.
pub const NOISE_FLOOR: f64 = 64.0 * f64::EPSILON;

pub const BASE_CUTOFF: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<CheckOutcome>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{verdict}] criterion {}: {}", self.id, self.title)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "    {mark} {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, " -- {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn s(name: &str) -> CoeffExpr {
    CoeffExpr::symbol(name)
}

fn q(n: i64, d: i64) -> CoeffExpr {
    CoeffExpr::constant(rat(n, d))
}

/// Lowest power first.
fn poly(coeffs: Vec<CoeffExpr>) -> P0Poly {
    P0Poly::from_coeffs(coeffs)
}

fn alg(name: &str) -> PolyAlgebra {
    builtin(name).expect("builtin")
}

fn exact(name: &str, got: &P0Poly, want: &P0Poly) -> CheckOutcome {
    if got == want {
        CheckOutcome::new(name, true, format!("{got}"))
    } else {
        CheckOutcome::new(
            name,
            false,
            format!("computed {got}; expected {want}; computed - expected = {}", got - want),
        )
    }
}

fn with_unit_mu(f: &FusedAlgebra) -> PolyAlgebra {
    let mut map = BTreeMap::new();
    map.insert(f.mu2.clone(), CoeffExpr::one());
    f.specialize(&map).expect("acyclic")
}

fn fused(kind: FusionKind, l: &str, m: &str) -> FusedAlgebra {
    fuse(kind, &alg(l), &alg(m)).expect("builtin fusion")
}

// Printed closed forms, with C_J, C_K, C_Q -> C_L, C_M and every central
// combination of the diagonal generators -> Lambda.

pub fn quadratic_g() -> P0Poly {
    let (a, b, c) = (s("a"), s("b"), s("c"));
    poly(vec![
        CoeffExpr::zero(),
        (&(&a + &b.scale(&rat(3, 1))) + &c.scale(&rat(6, 1))).scale(&rat(1, 6)),
        (&a + &b).scale(&rat(1, 2)),
        a.scale(&rat(1, 3)),
    ])
}

pub fn quadratic_casimir_line_one() -> P0Poly {
    let (a, b, c) = (s("a"), s("b"), s("c"));
    poly(vec![
        (&(&a - &c.scale(&rat(3, 1))) - &CoeffExpr::one()).scale(&rat(-1, 3)),
        (&(&a - &b.scale(&rat(3, 1))) + &c.scale(&rat(6, 1))).scale(&rat(1, 6)),
        (&a - &b).scale(&rat(-1, 2)),
        a.scale(&rat(1, 3)),
    ])
}

pub fn golden_su2_boson() -> P0Poly {
    let (l, cl) = (s("Lambda"), s("C_L"));
    let inner = poly(vec![
        -&(&cl + &(&l * &(&l + &CoeffExpr::one()))),
        &l.scale(&rat(2, 1)) - &CoeffExpr::one(),
        q(3, 1),
    ]);
    inner.scale(&-s("mu2"))
}

pub fn golden_quadratic_boson() -> P0Poly {
    let (a, b, c, l, cq) = (s("a"), s("b"), s("c"), s("Lambda"), s("C_L"));
    let x2 = (&(&(&a * &l).scale(&rat(4, 1)) - &a) + &b.scale(&rat(3, 1))).scale(&rat(1, 2));
    let x1 = -&(&(&(&a - &b) * &l)
        - &(&(&a - &b.scale(&rat(3, 1))) + &c.scale(&rat(12, 1))).scale(&rat(1, 6)));
    let x0 = -&[
        cq,
        &a * &l.pow(3),
        (&(&a + &b) * &l.pow(2)).scale(&rat(1, 2)),
        (&(&a - &b.scale(&rat(3, 1))) * &l).scale(&rat(-1, 6)),
        (&(&a - &c.scale(&rat(3, 1))) - &CoeffExpr::one()).scale(&rat(-1, 3)),
    ]
    .iter()
    .fold(CoeffExpr::zero(), |acc, t| &acc + t);
    poly(vec![x0, x1, x2, a.scale(&rat(4, 3))]).scale(&-s("mu2"))
}

pub fn golden_su2_su11() -> P0Poly {
    let (l, cj, ck) = (s("Lambda"), s("C_L"), s("C_M"));
    poly(vec![
        (&(&cj + &ck) * &l).scale(&rat(2, 1)),
        &(&cj - &ck).scale(&rat(2, 1)) + &l.pow(2).scale(&rat(4, 1)),
        CoeffExpr::zero(),
        q(4, 1),
    ])
    .scale(&s("mu2"))
}

pub fn golden_su11_su11() -> P0Poly {
    let (l, cl, cm) = (s("Lambda"), s("C_L"), s("C_M"));
    poly(vec![
        -&(&(&cl - &cm) * &l).scale(&rat(2, 1)),
        &(&cl + &cm).scale(&rat(2, 1)) - &l.pow(2).scale(&rat(4, 1)),
        CoeffExpr::zero(),
        q(4, 1),
    ])
    .scale(&-s("mu2"))
}

/// g-function goldens.
pub fn criterion_1() -> CriterionReport {
    let two_x = poly(vec![q(0, 1), q(2, 1)]);
    let checks = vec![
        exact(
            "solve_g(2 P0) = P0^2 + P0",
            &solve_g(&two_x),
            &poly(vec![q(0, 1), q(1, 1), q(1, 1)]),
        ),
        exact(
            "solve_g(-2 P0) = -P0^2 - P0",
            &solve_g(&-&two_x),
            &poly(vec![q(0, 1), q(-1, 1), q(-1, 1)]),
        ),
        exact(
            "solve_g(a P0^2 + b P0 + c) = a/3 P0^3 + (a+b)/2 P0^2 + (a+3b+6c)/6 P0",
            &solve_g(alg("quadratic").phi()),
            &quadratic_g(),
        ),
    ];
    CriterionReport {
        id: 1,
        title: "g-function goldens",
        checks,
    }
}

fn env_exact(name: &str, got: &EnvelopeElement, want: &EnvelopeElement) -> CheckOutcome {
    if got == want {
        CheckOutcome::new(name, true, format!("{got}"))
    } else {
        CheckOutcome::new(name, false, format!("computed {got}; expected {want}"))
    }
}

/// Casimir goldens.
pub fn criterion_2() -> CriterionReport {
    let pm = EnvelopeElement::monomial(1, P0Poly::one(), 1);
    let su2 = alg("su2");
    let su11 = alg("su11");
    let quad = alg("quadratic");
    let mut checks = vec![
        env_exact(
            "casimir(su2) = P+P- + P0(P0 - 1)",
            &casimir(&su2),
            &(&pm + &EnvelopeElement::poly(poly(vec![q(0, 1), q(-1, 1), q(1, 1)]))),
        ),
        env_exact(
            "casimir(su11) = P+P- - P0(P0 - 1)",
            &casimir(&su11),
            &(&pm + &EnvelopeElement::poly(poly(vec![q(0, 1), q(1, 1), q(-1, 1)]))),
        ),
    ];

    // P-P+ + g(P0) with the printed g, rewritten to normal order
    let line_two = normal_form(
        vec![Factor::Lower, Factor::Raise],
        quad.phi(),
    );
    let line_two = &line_two + &EnvelopeElement::poly(quadratic_g());
    checks.push(env_exact(
        "casimir(quadratic), P-P+ form = printed line two",
        &casimir(&quad),
        &line_two,
    ));
    checks.push(env_exact(
        "casimir(quadratic): P+P- form and P-P+ form agree",
        &casimir(&quad),
        &casimir_lower_form(&quad),
    ));

    let line_one = &pm + &EnvelopeElement::poly(quadratic_casimir_line_one());
    let delta = &casimir(&quad) - &line_one;
    let is_constant = delta.monomials().all(|((a, b), f)| a == 0 && b == 0 && f.degree() == Some(0))
        || delta.is_zero();
    let delta_value = delta.get(0, 0).map(|f| f.coeff(0).clone()).unwrap_or_default();
    checks.push(CheckOutcome::new(
        "casimir(quadratic), P+P- form = printed line one up to an additive constant",
        is_constant,
        format!(
            "computed - printed = {delta_value} (computed constant of g(P0-1) is {})",
            quad.g().eval_at(&q(-1, 1))
        ),
    ));
    CriterionReport {
        id: 2,
        title: "Casimir goldens",
        checks,
    }
}

/// Fusion goldens.
pub fn criterion_3() -> CriterionReport {
    let jbb = with_unit_mu(&fused(FusionKind::J, "boson", "boson"));
    let kbb = with_unit_mu(&fused(FusionKind::K, "boson", "boson"));
    let checks = vec![
        exact(
            "fuse(J, boson, boson) at mu = 1 is su2: 2 P0",
            jbb.phi(),
            alg("su2").phi(),
        ),
        exact(
            "fuse(K, boson, boson) at mu = 1: -(2 P0 + 1)",
            kbb.phi(),
            &poly(vec![q(-1, 1), q(-2, 1)]),
        ),
        exact(
            "fuse(K, boson, boson) recentered by 1/2 is su11: -2 P0",
            kbb.recenter(&q(1, 2)).phi(),
            alg("su11").phi(),
        ),
        exact(
            "fuse(J, su2, boson) = quadratic closed form",
            fused(FusionKind::J, "su2", "boson").phi(),
            &golden_su2_boson(),
        ),
        exact(
            "fuse(J, quadratic, boson) = printed cubic closed form",
            fused(FusionKind::J, "quadratic", "boson").phi(),
            &golden_quadratic_boson(),
        ),
        exact(
            "fuse(J, su2, su11) = printed Higgs-type closed form",
            fused(FusionKind::J, "su2", "su11").phi(),
            &golden_su2_su11(),
        ),
        exact(
            "fuse(J, su11, su11) = printed Higgs-type closed form",
            fused(FusionKind::J, "su11", "su11").phi(),
            &golden_su11_su11(),
        ),
    ];
    CriterionReport {
        id: 3,
        title: "fusion goldens",
        checks,
    }
}

fn higgs_shape(
    name: &str,
    f: &FusedAlgebra,
    assign: &[(&str, CoeffExpr)],
    cubic: CoeffExpr,
) -> CheckOutcome {
    let map: BTreeMap<Symbol, CoeffExpr> =
        assign.iter().map(|(k, v)| (Symbol::new(k), v.clone())).collect();
    let out = match f.specialize(&map) {
        Ok(a) => a,
        Err(e) => return CheckOutcome::new(name, false, e.to_string()),
    };
    let phi = out.phi();
    let ok = phi.degree() == Some(3)
        && phi.coeff(3) == &cubic
        && phi.coeff(2).is_zero()
        && phi.coeff(0).is_zero();
    let a = phi.coeff(1).scale(&rat(1, 2));
    CheckOutcome::new(name, ok, format!("phi = {phi}; a = {a}"))
}

/// Higgs specializations.
pub fn criterion_4() -> CriterionReport {
    let h11 = fused(FusionKind::J, "su2", "su11");
    let h14 = fused(FusionKind::J, "su11", "su11");
    let checks = vec![
        higgs_shape(
            "fuse(J, su2, su11) with C_M = -C_L, mu2 = h: 4h P0^3 + 2a P0",
            &h11,
            &[("C_M", -s("C_L")), ("mu2", s("h"))],
            s("h").scale(&rat(4, 1)),
        ),
        higgs_shape(
            "fuse(J, su11, su11) with C_M = C_L, mu2 = habs: -4 habs P0^3 + 2a P0",
            &h14,
            &[("C_M", s("C_L")), ("mu2", s("habs"))],
            s("habs").scale(&rat(-4, 1)),
        ),
    ];
    CriterionReport {
        id: 4,
        title: "Higgs specialization",
        checks,
    }
}

/// Order additivity over random pairs.
pub fn criterion_5(exec: Execution) -> CriterionReport {
    const PAIRS: usize = 100;
    let failures: Vec<String> = sweep::map_indices(exec, PAIRS, |i| {
        let mut rng = random::instance_rng(SEED ^ 5, i);
        let (dl, dm) = (rand::Rng::gen_range(&mut rng, 0..=4), rand::Rng::gen_range(&mut rng, 0..=4));
        let l = random::algebra(&mut rng, "L", dl, i % 2 == 0);
        let m = random::algebra(&mut rng, "M", dm, i % 3 == 0);
        let mut bad = Vec::new();
        for kind in [FusionKind::J, FusionKind::K] {
            match fuse(kind, &l, &m) {
                Ok(f) if fused_order_check(&f, dl, dm) => {}
                Ok(f) => bad.push(format!(
                    "pair {i} {kind}: degrees {dl}+{dm}+1 but got {:?}",
                    f.algebra.order()
                )),
                Err(e) => bad.push(format!("pair {i} {kind}: {e}")),
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    CriterionReport {
        id: 5,
        title: "order property",
        checks: vec![CheckOutcome::new(
            format!("{PAIRS} random pairs, degrees 0-4, J and K: order = l + m + 1"),
            failures.is_empty(),
            failures.join("; "),
        )],
    }
}

/// Difference equation over random structure polynomials.
pub fn criterion_6(exec: Execution) -> CriterionReport {
    const CASES: usize = 100;
    let failures: Vec<String> = sweep::map_indices(exec, CASES, |i| {
        let mut rng = random::instance_rng(SEED ^ 6, i);
        let deg = rand::Rng::gen_range(&mut rng, 0..=6);
        let phi = random::poly(&mut rng, deg, i % 2 == 1);
        let g = solve_g(&phi);
        let diff = &g - &g.substitute_affine(&CoeffExpr::int(-1), Sign::Plus);
        if diff != phi || !g.coeff(0).is_zero() || g.degree() != Some(deg + 1) {
            Some(format!("case {i}: phi = {phi}, g = {g}"))
        } else {
            None
        }
    })
    .into_iter()
    .flatten()
    .collect();
    CriterionReport {
        id: 6,
        title: "difference-equation property",
        checks: vec![CheckOutcome::new(
            format!("{CASES} random phi of degree <= 6: g(P0) - g(P0-1) = phi, g(0) = 0"),
            failures.is_empty(),
            failures.join("; "),
        )],
    }
}

fn centrality_failures(a: &PolyAlgebra) -> Vec<String> {
    let c = casimir(a);
    let mut bad = Vec::new();
    for (label, gen) in [
        ("P+", EnvelopeElement::raise()),
        ("P-", EnvelopeElement::lower()),
        ("P0", EnvelopeElement::p0()),
    ] {
        let comm = env_commutator(&c, &gen, a);
        if !comm.is_zero() {
            bad.push(format!("{}: [C,{label}] = {comm}", a.name()));
        }
    }
    if !jacobi_check(a) {
        bad.push(format!("{}: Jacobi identity fails", a.name()));
    }
    bad
}

/// Symbolic Casimir centrality and Jacobi identity.
pub fn criterion_7(exec: Execution) -> CriterionReport {
    const RANDOM: usize = 50;
    let builtins: Vec<PolyAlgebra> = BUILTIN_NAMES.iter().map(|n| alg(n)).collect();
    let builtin_bad: Vec<String> = sweep::map(exec, &builtins, centrality_failures)
        .into_iter()
        .flatten()
        .collect();
    let random_bad: Vec<String> = sweep::map_indices(exec, RANDOM, |i| {
        let mut rng = random::instance_rng(SEED ^ 7, i);
        let deg = rand::Rng::gen_range(&mut rng, 0..=5);
        centrality_failures(&random::algebra(&mut rng, &format!("random{i}"), deg, true))
    })
    .into_iter()
    .flatten()
    .collect();
    CriterionReport {
        id: 7,
        title: "symbolic centrality and Jacobi",
        checks: vec![
            CheckOutcome::new(
                "all builtins: [C, P+-] = [C, P0] = 0 and Jacobi holds",
                builtin_bad.is_empty(),
                builtin_bad.join("; "),
            ),
            CheckOutcome::new(
                format!("{RANDOM} random algebras of degree <= 5"),
                random_bad.is_empty(),
                random_bad.join("; "),
            ),
        ],
    }
}

/// Residual normalized by the size of the compared terms, floored at noise level.
pub fn relative_residual(r: &ResidualReport) -> f64 {
    let scale = r.scale.max(1.0);
    (r.max_interior() / scale).max(NOISE_FLOOR)
}

fn residual_check(name: &str, report: Result<ResidualReport, crate::Error>, tol: f64) -> CheckOutcome {
    match report {
        Ok(r) => CheckOutcome::new(
            name,
            r.passes(tol) && r.interior_states > 0,
            format!(
                "max interior residual {:.3e} over {} states (tol {tol:.0e})",
                r.max_interior(),
                r.interior_states
            ),
        ),
        Err(e) => CheckOutcome::new(name, false, e.to_string()),
    }
}

struct FusedCase {
    label: &'static str,
    kind: FusionKind,
    left: &'static str,
    right: &'static str,
    build_left: fn(usize) -> crate::Result<Rep>,
    build_right: fn(usize) -> crate::Result<Rep>,
}

const FUSED_CASES: [FusedCase; 3] = [
    FusedCase {
        label: "su2(1) x boson",
        kind: FusionKind::J,
        left: "su2",
        right: "boson",
        build_left: |_| rep_su2(1.0),
        build_right: rep_boson,
    },
    FusedCase {
        label: "su2(3/2) x su11(1)",
        kind: FusionKind::J,
        left: "su2",
        right: "su11",
        build_left: |_| rep_su2(1.5),
        build_right: |c| rep_su11(1.0, c),
    },
    FusedCase {
        label: "su11(1) x su11(3/2)",
        kind: FusionKind::J,
        left: "su11",
        right: "su11",
        build_left: |c| rep_su11(1.0, c),
        build_right: |c| rep_su11(1.5, c),
    },
];

fn fused_case_checks(case: &FusedCase) -> Vec<CheckOutcome> {
    let f = fused(case.kind, case.left, case.right);
    let build = |cutoff: usize| -> crate::Result<Rep> {
        let l = (case.build_left)(cutoff)?;
        let m = (case.build_right)(cutoff)?;
        rep_fused(&f, &l, &m, 1.0)
    };
    let mut out = Vec::new();
    let small = build(BASE_CUTOFF);
    let big = build(2 * BASE_CUTOFF);
    let (small, big) = match (small, big) {
        (Ok(s), Ok(b)) => (s, b),
        (Err(e), _) | (_, Err(e)) => {
            out.push(CheckOutcome::new(case.label, false, e.to_string()));
            return out;
        }
    };
    let rs = verify_relations(&small, &f.algebra);
    out.push(residual_check(
        &format!("fused {} relations on interior", case.label),
        rs.clone(),
        TOL_FUSED,
    ));
    for (rep, cut) in [(&small, BASE_CUTOFF), (&big, 2 * BASE_CUTOFF)] {
        let r = lambda_centrality(rep, &f.lambda);
        out.push(match r {
            Ok(v) => CheckOutcome::new(
                format!("fused {} Lambda central (cutoff {cut})", case.label),
                v <= TOL_CENTRAL,
                format!("{v:.3e}"),
            ),
            Err(e) => CheckOutcome::new(case.label, false, e.to_string()),
        });
    }
    out.push(doubling_check(
        &format!("fused {} cutoff doubling", case.label),
        rs,
        verify_relations(&big, &f.algebra),
    ));
    out
}

fn doubling_check(
    name: &str,
    small: crate::Result<ResidualReport>,
    big: crate::Result<ResidualReport>,
) -> CheckOutcome {
    match (small, big) {
        (Ok(s), Ok(b)) => {
            let ratio = relative_residual(&b) / relative_residual(&s);
            CheckOutcome::new(
                name,
                ratio < MAX_DOUBLING_RATIO,
                format!(
                    "residual {:.3e} -> {:.3e}, entry scale {:.3e} -> {:.3e}, relative ratio {ratio:.2}",
                    s.max_interior(),
                    b.max_interior(),
                    s.scale,
                    b.scale
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckOutcome::new(name, false, e.to_string()),
    }
}

type RepBuilder = fn(usize) -> crate::Result<Rep>;

/// Numeric verification on matrix realizations.
pub fn criterion_8(exec: Execution) -> CriterionReport {
    type Job = Box<dyn Fn() -> Vec<CheckOutcome> + Sync + Send>;
    let mut jobs: Vec<Job> = Vec::new();
    for two_j in 0..=10 {
        jobs.push(Box::new(move || {
            let j = two_j as f64 / 2.0;
            let rep = rep_su2(j);
            let full = rep.as_ref().map(|r| r.exact_interior.is_full()).unwrap_or(false);
            let mut c = residual_check(
                &format!("su2 j={j} relations, no mask"),
                rep.and_then(|r| verify_relations(&r, &alg("su2"))),
                TOL_EXACT_IRREP,
            );
            c.passed &= full;
            vec![c]
        }));
    }
    let truncated: [(&str, &str, RepBuilder); 3] = [
        ("boson", "boson", rep_boson),
        ("su11 k=1", "su11", |c| rep_su11(1.0, c)),
        ("su11 k=3/2", "su11", |c| rep_su11(1.5, c)),
    ];
    for (label, name, build) in truncated {
        jobs.push(Box::new(move || {
            let a = alg(name);
            let small = build(BASE_CUTOFF).and_then(|r| verify_relations(&r, &a));
            let big = build(2 * BASE_CUTOFF).and_then(|r| verify_relations(&r, &a));
            vec![
                residual_check(
                    &format!("{label} cutoff {BASE_CUTOFF} relations on interior"),
                    small.clone(),
                    TOL_TRUNCATED,
                ),
                doubling_check(&format!("{label} cutoff doubling"), small, big),
            ]
        }));
    }
    for case in &FUSED_CASES {
        jobs.push(Box::new(move || fused_case_checks(case)));
    }
    let checks = sweep::map(exec, &jobs, |job| job()).into_iter().flatten().collect();
    CriterionReport {
        id: 8,
        title: "numeric verification",
        checks,
    }
}

/// Criteria 1 through 8 in order.
pub fn run_all(exec: Execution) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(exec),
        criterion_6(exec),
        criterion_7(exec),
        criterion_8(exec),
    ]
}
