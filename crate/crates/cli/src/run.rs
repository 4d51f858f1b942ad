//! Statement execution.
//!
//! Every expression evaluates to an algebra together with how it was built,
//! which is what `verify` needs to assemble a matrix realization: builtins
//! `su2`, `su11` and `boson` (or user algebras with the same structure
//! polynomial) are leaves, `fuse` takes tensor products and `recenter` shifts
//! the diagonal generator.
//!
//! Realization parameters are looked up by path. In `fuse(J, A, B)` the left
//! factor has path `L` and the right `M`, so `jL` is the spin of `A` and
//! `cutoffM` the cutoff of `B`; deeper nestings concatenate (`kLM`). An
//! unsuffixed key applies wherever no suffixed one is given.

use std::collections::BTreeMap;
use std::rc::Rc;

use num_traits::ToPrimitive;

use polyalg::algebra::{builtin, casimir, EnvelopeElement, PolyAlgebra};
use polyalg::coeffring::{CoeffExpr, P0Poly, Rational, Symbol};
use polyalg::fusion::{fuse, FusedAlgebra};
use polyalg::matrixrep::{
    casimir_matrix, lambda_centrality, rep_boson, rep_fused, rep_su11, rep_su2, verify_casimir,
    verify_relations, Rep, ResidualReport, SymbolValue,
};

use crate::ast::{Expr, Program, Query, StmtKind};
use crate::error::DslError;
use crate::lexer::Pos;

pub const DEFAULT_CUTOFF: usize = 12;
pub const TOL_IRREP: f64 = 1e-13;
pub const TOL_TRUNCATED: f64 = 1e-10;
pub const TOL_FUSED: f64 = 1e-9;
pub const TOL_CENTRAL: f64 = 1e-12;

const PARAM_BASES: [&str; 5] = ["cutoff", "j", "k", "mu", "tol"];

#[derive(Clone, Debug)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    /// True iff every verification and expectation passed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| match &e.body {
            Body::Verify(v) => v.passed,
            Body::Expect { passed, .. } => *passed,
            _ => true,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub pos: Pos,
    /// The statement as pretty-printed.
    pub source: String,
    pub body: Body,
}

#[derive(Clone, Debug)]
pub enum Body {
    Algebra(AlgebraInfo),
    Phi { name: String, phi: P0Poly },
    G { name: String, g: P0Poly },
    Casimir { name: String, casimir: EnvelopeElement, value: Option<CoeffExpr> },
    Order { name: String, order: Option<usize> },
    Verify(VerifyReport),
    Expect { name: String, computed: P0Poly, expected: P0Poly, passed: bool },
}

#[derive(Clone, Debug)]
pub struct AlgebraInfo {
    pub name: String,
    pub phi: P0Poly,
    pub order: Option<usize>,
    pub g: P0Poly,
    pub casimir: EnvelopeElement,
    /// Known value of the Casimir in the coefficient ring, if any.
    pub casimir_value: Option<CoeffExpr>,
    /// Central symbols introduced by fusion, with their meaning.
    pub ledger: Vec<(Symbol, String)>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub algebra: String,
    pub tol: f64,
    pub relations: ResidualReport,
    /// Judged relative to the largest compared entry.
    pub casimir: ResidualReport,
    /// Commutator residual of each diagonal central symbol with `P+-`.
    pub centrals: Vec<(Symbol, f64)>,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone)]
struct Value {
    algebra: PolyAlgebra,
    node: Node,
}

#[derive(Clone)]
enum Node {
    Builtin,
    User,
    Fused {
        fused: Box<FusedAlgebra>,
        left: Rc<Value>,
        right: Rc<Value>,
    },
    Specialized,
    Recentered {
        inner: Rc<Value>,
        shift: CoeffExpr,
    },
}

#[derive(Default)]
struct Env {
    values: BTreeMap<String, Rc<Value>>,
}

impl Env {
    fn lookup(&self, name: &str) -> Result<Rc<Value>, String> {
        if let Some(v) = self.values.get(name) {
            return Ok(v.clone());
        }
        let algebra = builtin(name).map_err(|e| e.to_string())?;
        Ok(Rc::new(Value {
            algebra,
            node: Node::Builtin,
        }))
    }

    fn eval(&self, e: &Expr) -> Result<Rc<Value>, String> {
        match e {
            Expr::Name(n) => self.lookup(n),
            Expr::Fuse { kind, left, right } => {
                let (l, r) = (self.eval(left)?, self.eval(right)?);
                let fused = fuse(*kind, &l.algebra, &r.algebra).map_err(|e| e.to_string())?;
                Ok(Rc::new(Value {
                    algebra: fused.algebra.clone(),
                    node: Node::Fused {
                        fused: Box::new(fused),
                        left: l,
                        right: r,
                    },
                }))
            }
            Expr::Specialize {
                target,
                assignments,
            } => {
                let v = self.eval(target)?;
                let centrals = v.algebra.centrals();
                let mut map = BTreeMap::new();
                for (sym, value) in assignments {
                    if !centrals.contains(sym.as_str()) {
                        return Err(format!(
                            "`{sym}` is not a central symbol of {}",
                            v.algebra.name()
                        ));
                    }
                    map.insert(Symbol::new(sym), value.clone());
                }
                let algebra = v.algebra.specialize(&map).map_err(|e| e.to_string())?;
                Ok(Rc::new(Value {
                    algebra,
                    node: Node::Specialized,
                }))
            }
            Expr::Recenter { target, shift } => {
                let v = self.eval(target)?;
                let algebra = v.algebra.recenter(shift);
                Ok(Rc::new(Value {
                    algebra,
                    node: Node::Recentered {
                        inner: v,
                        shift: shift.clone(),
                    },
                }))
            }
        }
    }
}

fn info(v: &Value) -> AlgebraInfo {
    let a = &v.algebra;
    AlgebraInfo {
        name: a.name().to_string(),
        phi: a.phi().clone(),
        order: a.order(),
        g: a.g(),
        casimir: casimir(a),
        casimir_value: a.casimir_value().cloned(),
        ledger: match &v.node {
            Node::Fused { fused, .. } => fused.ledger(),
            _ => Vec::new(),
        },
    }
}

/// Runs `program`; `overrides` are merged into every `verify` statement's
/// parameters and take precedence.
pub fn run(program: &Program, overrides: &[(String, Rational)]) -> Result<Report, DslError> {
    let mut env = Env::default();
    let mut entries = Vec::new();
    for stmt in &program.statements {
        let pos = stmt.pos;
        let fail = |message: String| DslError::Run { pos, message };
        let body = match &stmt.kind {
            StmtKind::Algebra { name, phi, .. } => {
                let v = Rc::new(Value {
                    algebra: PolyAlgebra::new(name.clone(), phi.clone()),
                    node: Node::User,
                });
                env.values.insert(name.clone(), v.clone());
                Body::Algebra(info(&v))
            }
            StmtKind::Let { name, expr } => {
                let v = env.eval(expr).map_err(fail)?;
                let v = Rc::new(Value {
                    algebra: v.algebra.clone().renamed(name.clone()),
                    node: v.node.clone(),
                });
                env.values.insert(name.clone(), v.clone());
                Body::Algebra(info(&v))
            }
            StmtKind::Bare(e)
            | StmtKind::Query {
                query: Query::Show,
                target: e,
            } => {
                let v = env.eval(e).map_err(fail)?;
                Body::Algebra(info(&v))
            }
            StmtKind::Query { query, target } => {
                let v = env.eval(target).map_err(fail)?;
                let a = &v.algebra;
                let name = a.name().to_string();
                match query {
                    Query::Phi => Body::Phi {
                        name,
                        phi: a.phi().clone(),
                    },
                    Query::G => Body::G { name, g: a.g() },
                    Query::Casimir => Body::Casimir {
                        name,
                        casimir: casimir(a),
                        value: a.casimir_value().cloned(),
                    },
                    Query::Order => Body::Order {
                        name,
                        order: a.order(),
                    },
                    Query::Show => unreachable!("handled above"),
                }
            }
            StmtKind::Expect { target, phi } => {
                let v = env.eval(target).map_err(fail)?;
                let computed = v.algebra.phi().clone();
                Body::Expect {
                    name: v.algebra.name().to_string(),
                    passed: &computed == phi,
                    computed,
                    expected: phi.clone(),
                }
            }
            StmtKind::Verify { target, params } => {
                let v = env.eval(target).map_err(fail)?;
                let mut merged: BTreeMap<String, Rational> = params.iter().cloned().collect();
                merged.extend(overrides.iter().cloned());
                Body::Verify(verify(&v, &Params::new(merged).map_err(fail)?).map_err(fail)?)
            }
        };
        entries.push(Entry {
            pos,
            source: stmt.kind.to_string(),
            body,
        });
    }
    Ok(Report { entries })
}

struct Params {
    values: BTreeMap<String, Rational>,
}

impl Params {
    fn new(values: BTreeMap<String, Rational>) -> Result<Params, String> {
        for key in values.keys() {
            let known = PARAM_BASES.iter().any(|b| {
                key.strip_prefix(b)
                    .is_some_and(|rest| rest.chars().all(|c| c == 'L' || c == 'M'))
            });
            if !known {
                return Err(format!(
                    "unknown verify parameter `{key}` (expected one of {} with an optional L/M path suffix)",
                    PARAM_BASES.join(", ")
                ));
            }
        }
        Ok(Params { values })
    }

    fn get(&self, base: &str, path: &str) -> Option<&Rational> {
        self.values
            .get(&format!("{base}{path}"))
            .or_else(|| self.values.get(base))
    }

    fn float(&self, base: &str, path: &str) -> Option<f64> {
        self.get(base, path).and_then(|r| r.to_f64())
    }

    fn required(&self, base: &str, path: &str, what: &str) -> Result<f64, String> {
        self.float(base, path)
            .ok_or_else(|| format!("{what} needs parameter `{base}{path}`"))
    }

    fn cutoff(&self, path: &str) -> Result<usize, String> {
        match self.get("cutoff", path) {
            None => Ok(DEFAULT_CUTOFF),
            Some(r) if r.is_integer() => r
                .to_usize()
                .ok_or_else(|| format!("`cutoff{path}` must be a nonnegative integer")),
            Some(_) => Err(format!("`cutoff{path}` must be an integer")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Leaf {
    Su2,
    Su11,
    Boson,
}

fn leaf_kind(v: &Value) -> Option<Leaf> {
    let phi = v.algebra.phi();
    [("su2", Leaf::Su2), ("su11", Leaf::Su11), ("boson", Leaf::Boson)]
        .into_iter()
        .find(|(name, _)| builtin(name).is_ok_and(|b| b.phi() == phi))
        .map(|(_, leaf)| leaf)
}

/// Tolerance for the relation residuals when none is given.
fn default_tol(v: &Value) -> f64 {
    match &v.node {
        Node::Fused { .. } => TOL_FUSED,
        Node::Recentered { inner, .. } => default_tol(inner),
        _ if leaf_kind(v) == Some(Leaf::Su2) => TOL_IRREP,
        _ => TOL_TRUNCATED,
    }
}

fn realize(v: &Value, params: &Params, path: &str) -> Result<Rep, String> {
    let name = v.algebra.name();
    match &v.node {
        Node::Fused { fused, left, right } => {
            let l = realize(left, params, &format!("{path}L"))?;
            let r = realize(right, params, &format!("{path}M"))?;
            let mu = params.float("mu", path).unwrap_or(1.0);
            rep_fused(fused, &l, &r, mu).map_err(|e| e.to_string())
        }
        Node::Recentered { inner, shift } => {
            let s = shift
                .as_constant()
                .and_then(|r| r.to_f64())
                .ok_or_else(|| format!("{name}: only numeric shifts can be realized"))?;
            let mut rep = realize(inner, params, path)?.recenter(s);
            let c = casimir_matrix(&rep, &v.algebra).map_err(|e| e.to_string())?;
            rep.casimir = SymbolValue::Diagonal(c.diagonal());
            Ok(rep)
        }
        Node::Specialized => Err(format!("{name}: specialized algebras have no matrix realization")),
        Node::Builtin | Node::User => match leaf_kind(v) {
            Some(Leaf::Su2) => rep_su2(params.required("j", path, name)?),
            Some(Leaf::Su11) => rep_su11(params.required("k", path, name)?, params.cutoff(path)?),
            Some(Leaf::Boson) => rep_boson(params.cutoff(path)?),
            None => return Err(format!("{name}: no matrix realization is known")),
        }
        .map_err(|e| e.to_string()),
    }
}

fn verify(v: &Value, params: &Params) -> Result<VerifyReport, String> {
    let rep = realize(v, params, "")?;
    let alg = &v.algebra;
    let tol = params.float("tol", "").unwrap_or_else(|| default_tol(v));
    let relations = verify_relations(&rep, alg).map_err(|e| e.to_string())?;
    let casimir = verify_casimir(&rep, alg).map_err(|e| e.to_string())?;
    let mut centrals = Vec::new();
    for (sym, value) in &rep.symbol_eval {
        if let SymbolValue::Diagonal(_) = value {
            centrals.push((sym.clone(), lambda_centrality(&rep, sym).map_err(|e| e.to_string())?));
        }
    }

    let mut failures = Vec::new();
    if relations.interior_states == 0 {
        failures.push("no interior states; raise the cutoffs".to_string());
    }
    if !relations.passes(tol) {
        failures.push(format!(
            "relation residual {:.3e} exceeds {tol:.0e}",
            relations.max_interior()
        ));
    }
    if !casimir.passes(tol * casimir.scale.max(1.0)) {
        failures.push(format!(
            "Casimir commutator {:.3e} exceeds {tol:.0e} relative to entry scale {:.3e}",
            casimir.max_interior(),
            casimir.scale
        ));
    }
    for (sym, r) in &centrals {
        if *r > TOL_CENTRAL {
            failures.push(format!("{sym} is not central: {r:.3e}"));
        }
    }
    Ok(VerifyReport {
        algebra: alg.name().to_string(),
        tol,
        relations,
        casimir,
        centrals,
        passed: failures.is_empty(),
        failures,
    })
}
