//! Text, JSON and LaTeX renderings of a run report.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use polyalg::algebra::EnvelopeElement;
use polyalg::coeffring::{CoeffExpr, Monomial, P0Poly, Rational};
use polyalg::matrixrep::ResidualReport;

use crate::run::{AlgebraInfo, Body, Entry, Report, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => serde_json::to_string_pretty(&json_report(report)).expect("serializable") + "\n",
        Format::Latex => latex(report),
    }
}

fn order_str(order: Option<usize>) -> String {
    order.map_or_else(|| "undefined (phi = 0)".to_string(), |o| o.to_string())
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let _ = writeln!(out, "[{}] {}", e.pos, first_line(&e.source));
        match &e.body {
            Body::Algebra(a) => text_algebra(&mut out, a),
            Body::Phi { phi, .. } => {
                let _ = writeln!(out, "  phi(P0) = {phi}");
            }
            Body::G { g, .. } => {
                let _ = writeln!(out, "  g(P0) = {g}");
            }
            Body::Casimir { casimir, value, .. } => {
                let _ = writeln!(out, "  C = {casimir}");
                if let Some(v) = value {
                    let _ = writeln!(out, "    = {v}");
                }
            }
            Body::Order { order, .. } => {
                let _ = writeln!(out, "  order = {}", order_str(*order));
            }
            Body::Expect {
                computed,
                expected,
                passed,
                ..
            } => {
                if *passed {
                    let _ = writeln!(out, "  ok: phi = {computed}");
                } else {
                    let _ = writeln!(out, "  MISMATCH");
                    let _ = writeln!(out, "    computed: {computed}");
                    let _ = writeln!(out, "    expected: {expected}");
                    let _ = writeln!(out, "    difference: {}", computed - expected);
                }
            }
            Body::Verify(v) => text_verify(&mut out, v),
        }
    }
    let _ = writeln!(
        out,
        "status: {}",
        if report.passed() { "ok" } else { "FAILED" }
    );
    out
}

fn first_line(s: &str) -> String {
    let mut lines = s.lines();
    let head = lines.next().unwrap_or_default();
    if lines.next().is_some() {
        format!("{head} ...")
    } else {
        head.to_string()
    }
}

fn text_algebra(out: &mut String, a: &AlgebraInfo) {
    let _ = writeln!(out, "  algebra {}", a.name);
    let _ = writeln!(out, "    phi(P0) = {}", a.phi);
    let _ = writeln!(out, "    order   = {}", order_str(a.order));
    let _ = writeln!(out, "    g(P0)   = {}", a.g);
    let _ = writeln!(out, "    C       = {}", a.casimir);
    if let Some(v) = &a.casimir_value {
        let _ = writeln!(out, "            = {v}");
    }
    if !a.ledger.is_empty() {
        let _ = writeln!(out, "    central symbols:");
        for (sym, meaning) in &a.ledger {
            let _ = writeln!(out, "      {sym} = {meaning}");
        }
    }
}

fn text_residuals(out: &mut String, r: &ResidualReport) {
    for res in &r.residuals {
        let _ = writeln!(
            out,
            "      {:<20} interior {:.3e}  boundary {:.3e}",
            res.relation, res.interior, res.boundary
        );
    }
}

fn text_verify(out: &mut String, v: &VerifyReport) {
    let r = &v.relations;
    let _ = writeln!(
        out,
        "  verify {} on {} (dim {}, {} interior states, tol {:.0e})",
        v.algebra, r.rep, r.dim, r.interior_states, v.tol
    );
    let _ = writeln!(out, "    relations:");
    text_residuals(out, r);
    let _ = writeln!(out, "    Casimir (entry scale {:.3e}):", v.casimir.scale);
    text_residuals(out, &v.casimir);
    for (sym, res) in &v.centrals {
        let _ = writeln!(out, "    central {sym}: {res:.3e}");
    }
    if v.passed {
        let _ = writeln!(out, "    PASS");
    } else {
        for f in &v.failures {
            let _ = writeln!(out, "    FAIL: {f}");
        }
    }
}

fn rational_json(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn monomial_json(m: &Monomial) -> Value {
    let symbols: Map<String, Value> = m
        .powers()
        .map(|(s, e)| (s.name().to_string(), json!(e)))
        .collect();
    Value::Object(symbols)
}

pub fn coeff_json(c: &CoeffExpr) -> Value {
    Value::Array(
        c.terms()
            .map(|(m, r)| json!({"symbols": monomial_json(m), "rational": rational_json(r)}))
            .collect(),
    )
}

/// `{"terms": [{"p0_power": k, "coeff": [...]}]}`, highest power first.
pub fn poly_json(p: &P0Poly) -> Value {
    let terms: Vec<Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| json!({"p0_power": k, "coeff": coeff_json(c)}))
        .collect();
    json!({ "terms": terms })
}

fn envelope_json(e: &EnvelopeElement) -> Value {
    let monomials: Vec<Value> = e
        .monomials()
        .map(|((a, b), f)| json!({"raise": a, "lower": b, "poly": poly_json(f)}))
        .collect();
    json!({ "monomials": monomials })
}

fn algebra_json(a: &AlgebraInfo) -> Value {
    let ledger: Vec<Value> = a
        .ledger
        .iter()
        .map(|(s, m)| json!({"symbol": s.name(), "meaning": m}))
        .collect();
    json!({
        "name": a.name,
        "phi": poly_json(&a.phi),
        "order": a.order,
        "g": poly_json(&a.g),
        "casimir": envelope_json(&a.casimir),
        "casimir_value": a.casimir_value.as_ref().map(coeff_json),
        "central_symbols": ledger,
    })
}

fn verify_json(v: &VerifyReport) -> Value {
    let centrals: Map<String, Value> = v
        .centrals
        .iter()
        .map(|(s, r)| (s.name().to_string(), json!(r)))
        .collect();
    json!({
        "algebra": v.algebra,
        "tol": v.tol,
        "relations": v.relations,
        "casimir": v.casimir,
        "centrals": centrals,
        "failures": v.failures,
        "passed": v.passed,
    })
}

fn entry_json(e: &Entry) -> Value {
    let (kind, body) = match &e.body {
        Body::Algebra(a) => ("algebra", algebra_json(a)),
        Body::Phi { name, phi } => ("phi", json!({"name": name, "phi": poly_json(phi)})),
        Body::G { name, g } => ("g", json!({"name": name, "g": poly_json(g)})),
        Body::Casimir {
            name,
            casimir,
            value,
        } => (
            "casimir",
            json!({
                "name": name,
                "casimir": envelope_json(casimir),
                "casimir_value": value.as_ref().map(coeff_json),
            }),
        ),
        Body::Order { name, order } => ("order", json!({"name": name, "order": order})),
        Body::Verify(v) => ("verify", verify_json(v)),
        Body::Expect {
            name,
            computed,
            expected,
            passed,
        } => (
            "expect",
            json!({
                "name": name,
                "computed": poly_json(computed),
                "expected": poly_json(expected),
                "passed": passed,
            }),
        ),
    };
    json!({
        "line": e.pos.line,
        "column": e.pos.col,
        "statement": e.source,
        "kind": kind,
        "result": body,
    })
}

pub fn json_report(report: &Report) -> Value {
    json!({
        "statements": report.entries.iter().map(entry_json).collect::<Vec<_>>(),
        "passed": report.passed(),
    })
}

const GREEK: [&str; 23] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi",
    "omega",
];

/// Greek letters with an upright capital form in LaTeX.
const GREEK_CAPITALS: [&str; 11] = [
    "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon", "Phi", "Psi", "Omega",
];

fn latex_base(base: &str) -> String {
    if GREEK.contains(&base) || GREEK_CAPITALS.contains(&base) {
        format!("\\{base}")
    } else if base.chars().count() == 1 {
        base.to_string()
    } else {
        format!("\\mathrm{{{base}}}")
    }
}

/// `Lambda` -> `\Lambda`, `C_L` -> `C_{L}`, `mu2` -> `\mu^{2}`, each raised to `exp`.
pub fn latex_symbol(name: &str, exp: u32) -> String {
    let (base, sub) = match name.split_once('_') {
        Some((b, s)) => (b, Some(s)),
        None => (name, None),
    };
    let sub = sub.map(|s| format!("_{{{s}}}")).unwrap_or_default();
    if base == "mu2" {
        return format!("\\mu{sub}^{{{}}}", 2 * exp);
    }
    let body = format!("{}{sub}", latex_base(base));
    if exp == 1 {
        body
    } else {
        format!("{body}^{{{exp}}}")
    }
}

fn latex_rational_abs(r: &Rational) -> String {
    let (n, d) = (r.numer().magnitude().to_string(), r.denom().to_string());
    if d == "1" {
        n
    } else {
        format!("\\frac{{{n}}}{{{d}}}")
    }
}

fn latex_p0(k: usize) -> Option<String> {
    match k {
        0 => None,
        1 => Some("P_0".to_string()),
        _ => Some(format!("P_0^{{{k}}}")),
    }
}

/// Terms by descending `P0` power, then by symbol order; fully expanded.
pub fn latex_poly(p: &P0Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        for (m, r) in c.terms() {
            let mut factors: Vec<String> = m.powers().map(|(s, e)| latex_symbol(s.name(), e)).collect();
            factors.extend(latex_p0(k));
            push_term(&mut out, r, &factors);
        }
    }
    out
}

fn push_term(out: &mut String, r: &Rational, factors: &[String]) {
    let negative = r < &Rational::from_integer(0.into());
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let magnitude = latex_rational_abs(r);
    let mut parts = Vec::new();
    if magnitude != "1" || factors.is_empty() {
        parts.push(magnitude);
    }
    parts.extend(factors.iter().cloned());
    out.push_str(&parts.join(" "));
}

fn latex_coeff(c: &CoeffExpr) -> String {
    latex_poly(&P0Poly::constant(c.clone()))
}

fn latex_envelope(e: &EnvelopeElement) -> String {
    let mut out = String::new();
    for ((a, b), f) in e.monomials() {
        let ladder = |g: &str, n: u32| match n {
            0 => None,
            1 => Some(format!("P_{g}")),
            _ => Some(format!("P_{g}^{{{n}}}")),
        };
        let (raise, lower) = (ladder("+", a), ladder("-", b));
        let is_constant_one = f.degree() == Some(0) && f.coeff(0).is_one();
        let middle = if is_constant_one && (raise.is_some() || lower.is_some()) {
            None
        } else if f.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
            && f.leading().len() == 1
            && raise.is_none()
            && lower.is_none()
        {
            Some(latex_poly(f))
        } else {
            Some(format!("\\left({}\\right)", latex_poly(f)))
        };
        let body: Vec<String> = [raise, middle, lower].into_iter().flatten().collect();
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&body.join(" "));
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn latex_name(name: &str) -> String {
    let escaped: String = name
        .chars()
        .map(|c| match c {
            '_' => "\\_".to_string(),
            other => other.to_string(),
        })
        .collect();
    format!("\\mathrm{{{escaped}}}")
}

fn latex(report: &Report) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let _ = writeln!(out, "% [{}] {}", e.pos, first_line(&e.source));
        match &e.body {
            Body::Algebra(a) => {
                let n = latex_name(&a.name);
                let _ = writeln!(out, "[P_+, P_-]_{{{n}}} = {}", latex_poly(&a.phi));
                let _ = writeln!(out, "g_{{{n}}}(P_0) = {}", latex_poly(&a.g));
                let _ = writeln!(out, "C_{{{n}}} = {}", latex_envelope(&a.casimir));
                for (sym, meaning) in &a.ledger {
                    let _ = writeln!(out, "% {} = {meaning}", latex_symbol(sym.name(), 1));
                }
            }
            Body::Phi { name, phi } => {
                let _ = writeln!(out, "[P_+, P_-]_{{{}}} = {}", latex_name(name), latex_poly(phi));
            }
            Body::G { name, g } => {
                let _ = writeln!(out, "g_{{{}}}(P_0) = {}", latex_name(name), latex_poly(g));
            }
            Body::Casimir { name, casimir, value } => {
                let _ = write!(out, "C_{{{}}} = {}", latex_name(name), latex_envelope(casimir));
                if let Some(v) = value {
                    let _ = write!(out, " = {}", latex_coeff(v));
                }
                out.push('\n');
            }
            Body::Order { name, order } => {
                let _ = writeln!(out, "% order of {name}: {}", order_str(*order));
            }
            Body::Expect {
                name,
                computed,
                passed,
                ..
            } => {
                let _ = writeln!(out, "[P_+, P_-]_{{{}}} = {}", latex_name(name), latex_poly(computed));
                let _ = writeln!(out, "% expectation {}", if *passed { "met" } else { "NOT met" });
            }
            Body::Verify(v) => {
                let _ = writeln!(
                    out,
                    "% verify {}: max interior residual {:.3e}, {}",
                    v.algebra,
                    v.relations.max_interior(),
                    if v.passed { "pass" } else { "FAIL" }
                );
            }
        }
    }
    out
}
