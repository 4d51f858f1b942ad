//! Jordan–Schwinger-type fusion of two mutually commuting polynomial algebras.
//!
//! Given `L` (order `l`) and `M` (order `m`):
//!
//! * J-type: `P0 = (L0 - M0)/2`, `P+ = mu L+ M-`, `P- = mu L- M+`, with central
//!   `Lambda = (L0 + M0)/2`.
//! * K-type: `P0 = (L0 + M0)/2`, `P+ = mu L+ M+`, `P- = mu L- M-`, with central
//!   `Lambda = (L0 - M0)/2`.
//!
//! Both close into polynomial algebras of order `l + m + 1` whose coefficients
//! involve `Lambda`, `mu^2` and the Casimirs of `L` and `M`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{solve_g, PolyAlgebra};
use crate::coeffring::{CoeffExpr, P0Poly, Sign, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FusionKind {
    J,
    K,
}

impl fmt::Display for FusionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionKind::J => "J",
            FusionKind::K => "K",
        })
    }
}

const MAX_RENAME_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct FusedAlgebra {
    pub algebra: PolyAlgebra,
    pub kind: FusionKind,
    pub lambda: Symbol,
    pub mu2: Symbol,
    /// `None` when the factor's Casimir is a known ring element (e.g. the boson).
    pub casimir_l: Option<Symbol>,
    pub casimir_m: Option<Symbol>,
    pub left: PolyAlgebra,
    /// `M` after renaming symbols that collided with `L`.
    pub right: PolyAlgebra,
    /// Original name -> new name for the renamed symbols of `M`.
    pub renames: BTreeMap<Symbol, Symbol>,
}

impl FusedAlgebra {
    pub fn phi(&self) -> &P0Poly {
        self.algebra.phi()
    }

    /// Human-readable meaning of every central symbol introduced by the fusion.
    pub fn ledger(&self) -> Vec<(Symbol, String)> {
        let (l, m) = (self.left.name(), self.right.name());
        let mut out = vec![
            (
                self.lambda.clone(),
                match self.kind {
                    FusionKind::J => format!("(1/2)({l}.P0 + {m}.P0)"),
                    FusionKind::K => format!("(1/2)({l}.P0 - {m}.P0)"),
                },
            ),
            (self.mu2.clone(), "mu^2, square of the fusion normalization".into()),
        ];
        if let Some(c) = &self.casimir_l {
            out.push((c.clone(), format!("Casimir of {l}")));
        }
        if let Some(c) = &self.casimir_m {
            out.push((c.clone(), format!("Casimir of {m}")));
        }
        for (old, new) in &self.renames {
            out.push((new.clone(), format!("{m}.{old} (renamed)")));
        }
        out
    }

    pub fn specialize(&self, assignments: &BTreeMap<Symbol, CoeffExpr>) -> Result<PolyAlgebra> {
        self.algebra.specialize(assignments)
    }
}

fn all_symbols(alg: &PolyAlgebra) -> BTreeSet<Symbol> {
    let mut s = alg.centrals().clone();
    if let Some(c) = alg.casimir_value() {
        s.extend(c.symbols());
    }
    s
}

fn fresh(base: &str, taken: &BTreeSet<Symbol>) -> Result<Symbol> {
    if !taken.contains(base) {
        return Ok(Symbol::new(base));
    }
    (2..MAX_RENAME_ATTEMPTS)
        .map(|i| Symbol::new(format!("{base}_{i}")))
        .find(|s| !taken.contains(s))
        .ok_or_else(|| Error::Fusion(format!("no free name for symbol `{base}`")))
}

/// Builds the fused algebra of the given kind from `l` and `m`.
pub fn fuse(kind: FusionKind, l: &PolyAlgebra, m: &PolyAlgebra) -> Result<FusedAlgebra> {
    let mut taken = all_symbols(l);
    let mut renames = BTreeMap::new();
    for s in all_symbols(m) {
        if taken.contains(&s) {
            let mut avoid = taken.clone();
            avoid.extend(all_symbols(m));
            avoid.extend(renames.values().cloned());
            let new = fresh(s.name(), &avoid)?;
            renames.insert(s, new);
        }
    }
    let right = m.rename_symbols(&renames);
    taken.extend(all_symbols(&right));

    let mut fresh_taken = |base: &str| -> Result<Symbol> {
        let s = fresh(base, &taken)?;
        taken.insert(s.clone());
        Ok(s)
    };
    let lambda = fresh_taken("Lambda")?;
    let mu2 = fresh_taken("mu2")?;
    let casimir_l = match l.casimir_value() {
        Some(_) => None,
        None => Some(fresh_taken("C_L")?),
    };
    let casimir_m = match right.casimir_value() {
        Some(_) => None,
        None => Some(fresh_taken("C_M")?),
    };
    let c_l = l
        .casimir_value()
        .cloned()
        .unwrap_or_else(|| CoeffExpr::symbol(casimir_l.clone().unwrap()));
    let c_m = right
        .casimir_value()
        .cloned()
        .unwrap_or_else(|| CoeffExpr::symbol(casimir_m.clone().unwrap()));

    let lam = CoeffExpr::symbol(lambda.clone());
    let lam_minus_1 = &lam - &CoeffExpr::one();
    let (g_l, g_m) = (solve_g(l.phi()), solve_g(right.phi()));
    let (phi_l, phi_m) = (l.phi(), right.phi());
    let bracket = |c: &CoeffExpr, g_at: P0Poly| &P0Poly::constant(c.clone()) - &g_at;

    let inner = match kind {
        FusionKind::J => {
            // [C_M - g_M(Lambda - P0 - 1)] phi_L(Lambda + P0)
            //   - [C_L - g_L(Lambda + P0 - 1)] phi_M(Lambda - P0)
            let first = &bracket(&c_m, g_m.substitute_affine(&lam_minus_1, Sign::Minus))
                * &phi_l.substitute_affine(&lam, Sign::Plus);
            let second = &bracket(&c_l, g_l.substitute_affine(&lam_minus_1, Sign::Plus))
                * &phi_m.substitute_affine(&lam, Sign::Minus);
            &first - &second
        }
        FusionKind::K => {
            // [C_L - g_L(P0 + Lambda - 1)] phi_M(P0 - Lambda)
            //   + [C_M - g_M(P0 - Lambda)] phi_L(P0 + Lambda)
            let first = &bracket(&c_l, g_l.substitute_affine(&lam_minus_1, Sign::Plus))
                * &phi_m.substitute_affine(&-&lam, Sign::Plus);
            let second = &bracket(&c_m, g_m.substitute_affine(&-&lam, Sign::Plus))
                * &phi_l.substitute_affine(&lam, Sign::Plus);
            &first + &second
        }
    };
    let phi = inner.scale(&CoeffExpr::symbol(mu2.clone()));
    let name = format!("fuse({kind},{},{})", l.name(), m.name());

    Ok(FusedAlgebra {
        algebra: PolyAlgebra::new(name, phi),
        kind,
        lambda,
        mu2,
        casimir_l,
        casimir_m,
        left: l.clone(),
        right,
        renames,
    })
}

/// True iff the fused structure polynomial has degree exactly `l + m + 1`.
pub fn fused_order_check(f: &FusedAlgebra, l: usize, m: usize) -> bool {
    f.algebra.order() == Some(l + m + 1)
}
