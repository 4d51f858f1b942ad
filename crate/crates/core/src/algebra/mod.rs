//! Three-dimensional polynomial algebras.
//!
//! An algebra of order `m` has generators `P0, P+, P-` with
//! `[P0, P+-] = +-P+-` and `[P+, P-] = phi(P0)`, `phi` a degree `m` polynomial
//! whose coefficients are central. It is determined by `phi`.

mod envelope;
mod gfunc;
mod rewrite;

use std::collections::{BTreeMap, BTreeSet};

use crate::coeffring::{CoeffExpr, P0Poly, Rational, Sign, Symbol};
use crate::error::{Error, Result};

pub use envelope::{casimir, casimir_lower_form, env_commutator, env_mul, jacobi_check, EnvelopeElement};
pub use gfunc::solve_g;
pub use rewrite::{normal_form, Factor};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 5] = ["boson", "su2", "su11", "higgs", "quadratic"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAlgebra {
    name: String,
    phi: P0Poly,
    centrals: BTreeSet<Symbol>,
    casimir_value: Option<CoeffExpr>,
}

impl PolyAlgebra {
    pub fn new(name: impl Into<String>, phi: P0Poly) -> Self {
        let centrals = phi.symbols();
        PolyAlgebra {
            name: name.into(),
            phi,
            centrals,
            casimir_value: None,
        }
    }

    /// Records that the Casimir element is a known element of the coefficient
    /// ring rather than a free central element. Fusion then uses this value
    /// instead of introducing a fresh Casimir symbol.
    pub fn with_casimir_value(mut self, value: CoeffExpr) -> Self {
        self.casimir_value = Some(value);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> &P0Poly {
        &self.phi
    }

    /// `None` when `phi` is identically zero.
    pub fn order(&self) -> Option<usize> {
        self.phi.degree()
    }

    pub fn centrals(&self) -> &BTreeSet<Symbol> {
        &self.centrals
    }

    pub fn casimir_value(&self) -> Option<&CoeffExpr> {
        self.casimir_value.as_ref()
    }

    pub fn g(&self) -> P0Poly {
        solve_g(&self.phi)
    }

    /// Same structure polynomial, ignoring the name.
    pub fn same_structure(&self, other: &PolyAlgebra) -> bool {
        self.phi == other.phi && self.casimir_value == other.casimir_value
    }

    /// Replaces `P0` by `P0 - shift` in `phi`, so the new diagonal generator is
    /// the old one plus `shift`.
    pub fn recenter(&self, shift: &CoeffExpr) -> PolyAlgebra {
        let phi = self.phi.substitute_affine(&-shift, Sign::Plus);
        // C = P+P- + g(P0 - 1); the zero-constant g of the shifted phi is
        // g_old(x - s) - g_old(-s).
        let casimir_value = self
            .casimir_value
            .as_ref()
            .map(|c| c - &self.g().eval_at(&-shift));
        PolyAlgebra {
            name: self.name.clone(),
            centrals: phi.symbols(),
            phi,
            casimir_value,
        }
    }

    /// Substitutes central symbols. Values may not mention any assigned symbol.
    pub fn specialize(&self, assignments: &BTreeMap<Symbol, CoeffExpr>) -> Result<PolyAlgebra> {
        check_acyclic(assignments)?;
        let phi = self.phi.substitute_symbols(assignments);
        Ok(PolyAlgebra {
            name: self.name.clone(),
            centrals: phi.symbols(),
            phi,
            casimir_value: self.casimir_value.as_ref().map(|c| c.substitute(assignments)),
        })
    }

    /// Renames central symbols (used to keep fused factors apart).
    pub fn rename_symbols(&self, map: &BTreeMap<Symbol, Symbol>) -> PolyAlgebra {
        let phi = self.phi.rename(map);
        PolyAlgebra {
            name: self.name.clone(),
            centrals: phi.symbols(),
            phi,
            casimir_value: self.casimir_value.as_ref().map(|c| c.rename(map)),
        }
    }
}

pub(crate) fn check_acyclic(assignments: &BTreeMap<Symbol, CoeffExpr>) -> Result<()> {
    for (target, value) in assignments {
        if let Some(cycle) = value.symbols().into_iter().find(|s| assignments.contains_key(s)) {
            return Err(Error::CyclicAssignment {
                target: target.clone(),
                cycle,
            });
        }
    }
    Ok(())
}

/// The builtin catalog.
///
/// * `boson`: `phi = -1` with `P+` the creation operator and `P0 = P+P-` the
///   number operator, so its Casimir `P+P- - P0 + 1` is the number 1.
/// * `su2`: `phi = 2 P0`.
/// * `su11`: `phi = -2 P0`.
/// * `higgs`: `phi = 4 h P0^3 + 2 a P0`.
/// * `quadratic`: `phi = a P0^2 + b P0 + c`.
pub fn builtin(name: &str) -> Result<PolyAlgebra> {
    let x = P0Poly::x();
    let r = |n: i64| CoeffExpr::constant(Rational::from_integer(n.into()));
    let alg = match name {
        "boson" => PolyAlgebra::new(name, P0Poly::constant(r(-1))).with_casimir_value(r(1)),
        "su2" => PolyAlgebra::new(name, x.scale(&r(2))),
        "su11" => PolyAlgebra::new(name, x.scale(&r(-2))),
        "higgs" => {
            let h = CoeffExpr::symbol("h");
            let a = CoeffExpr::symbol("a");
            let phi = &P0Poly::monomial(h.scale(&Rational::from_integer(4.into())), 3) + &x.scale(&a.scale(&Rational::from_integer(2.into())));
            PolyAlgebra::new(name, phi)
        }
        "quadratic" => PolyAlgebra::new(
            name,
            P0Poly::from_coeffs(vec![
                CoeffExpr::symbol("c"),
                CoeffExpr::symbol("b"),
                CoeffExpr::symbol("a"),
            ]),
        ),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    #[test]
    fn catalog_orders() {
        let su2 = builtin("su2").unwrap();
        assert_eq!(su2.order(), Some(1));
        assert_eq!(su2.phi(), &P0Poly::x().scale(&CoeffExpr::int(2)));
        assert_eq!(builtin("higgs").unwrap().order(), Some(3));
        let q = builtin("quadratic").unwrap();
        assert_eq!(q.order(), Some(2));
        let names: Vec<_> = q.centrals().iter().map(|s| s.name().to_string()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(builtin("boson").unwrap().order(), Some(0));
        assert!(matches!(builtin("so3"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn recenter_examples() {
        let k_type = PolyAlgebra::new(
            "k",
            P0Poly::from_rationals([rat(-1, 1), rat(-2, 1)]),
        );
        let shifted = k_type.recenter(&CoeffExpr::constant(rat(1, 2)));
        assert!(shifted.same_structure(&builtin("su11").unwrap()));

        let higgs = builtin("higgs").unwrap();
        assert_eq!(higgs.recenter(&CoeffExpr::zero()), higgs);

        let su2 = builtin("su2").unwrap();
        let lam = CoeffExpr::symbol("Lambda");
        let out = su2.recenter(&lam);
        assert_eq!(
            out.phi(),
            &P0Poly::from_coeffs(vec![lam.scale(&rat(-2, 1)), CoeffExpr::int(2)])
        );
        assert_eq!(out.order(), Some(1));
    }

    #[test]
    fn recenter_tracks_known_casimir() {
        // boson recentered by s: phi stays -1, g_old(x) = -x so C shifts by -g_old(-s) = -s
        let boson = builtin("boson").unwrap();
        let out = boson.recenter(&CoeffExpr::constant(rat(1, 2)));
        assert_eq!(out.casimir_value(), Some(&CoeffExpr::constant(rat(1, 2))));
    }

    #[test]
    fn specialize_rejects_cycles() {
        let q = builtin("quadratic").unwrap();
        let mut map = BTreeMap::new();
        map.insert(Symbol::new("a"), CoeffExpr::symbol("b"));
        map.insert(Symbol::new("b"), CoeffExpr::int(1));
        assert!(matches!(q.specialize(&map), Err(Error::CyclicAssignment { .. })));
        assert_eq!(q.specialize(&BTreeMap::new()).unwrap(), q);
    }

    #[test]
    fn specialize_updates_centrals() {
        let q = builtin("quadratic").unwrap();
        let mut map = BTreeMap::new();
        map.insert(Symbol::new("a"), CoeffExpr::zero());
        let out = q.specialize(&map).unwrap();
        assert_eq!(out.order(), Some(1));
        assert!(!out.centrals().contains("a"));
    }
}
