use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{Mask, Rep};
use crate::algebra::{casimir, EnvelopeElement, PolyAlgebra};
use crate::coeffring::Symbol;
use crate::error::{Error, Result};

/// Max-abs residual of one relation, split by the interior mask.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub relation: String,
    /// Over rows and columns both in the interior.
    pub interior: f64,
    /// Over every other entry; large values here are truncation artifacts.
    pub boundary: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub rep: String,
    pub algebra: String,
    pub dim: usize,
    pub interior_states: usize,
    /// Largest interior entry among the terms being compared, for judging
    /// residuals against floating-point noise.
    pub scale: f64,
    pub residuals: Vec<Residual>,
}

impl ResidualReport {
    pub fn max_interior(&self) -> f64 {
        self.residuals.iter().fold(0.0, |a, r| a.max(r.interior))
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_interior() <= tol
    }
}

fn split_max(m: &DMatrix<f64>, mask: &Mask) -> (f64, f64) {
    let mut interior = 0.0f64;
    let mut boundary = 0.0f64;
    for j in 0..m.ncols() {
        let cj = mask.contains(j);
        for i in 0..m.nrows() {
            let v = m[(i, j)].abs();
            if cj && mask.contains(i) {
                interior = interior.max(v);
            } else {
                boundary = boundary.max(v);
            }
        }
    }
    (interior, boundary)
}

fn residual(relation: &str, m: &DMatrix<f64>, mask: &Mask) -> Residual {
    let (interior, boundary) = split_max(m, mask);
    Residual {
        relation: relation.to_string(),
        interior,
        boundary,
    }
}

/// `[D, A]` for diagonal `D`: entry `(i, j)` is `(d_i - d_j) A_ij`.
fn diag_commutator(d: &DVector<f64>, a: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| (d[i] - d[j]) * a[(i, j)])
}

fn require_symbols(rep: &Rep, alg: &PolyAlgebra) -> Result<()> {
    let missing: Vec<Symbol> = alg
        .centrals()
        .iter()
        .filter(|s| !rep.symbol_eval.contains_key(*s))
        .cloned()
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::MissingSymbols(missing))
    }
}

/// Residuals of `[P0,P+] = P+`, `[P0,P-] = -P-` and `[P+,P-] = phi(P0)` on `rep`.
pub fn verify_relations(rep: &Rep, alg: &PolyAlgebra) -> Result<ResidualReport> {
    require_symbols(rep, alg)?;
    let mask = &rep.exact_interior;
    let phi = DMatrix::from_diagonal(&rep.eval_poly(alg.phi())?);
    let raise = diag_commutator(&rep.p0, &rep.pplus) - &rep.pplus;
    let lower = diag_commutator(&rep.p0, &rep.pminus) + &rep.pminus;
    let pm = &rep.pplus * &rep.pminus;
    let mp = &rep.pminus * &rep.pplus;
    let scale = [&pm, &mp, &phi]
        .into_iter()
        .map(|m| split_max(m, mask).0)
        .fold(0.0, f64::max);
    let ladder = pm - mp - phi;
    Ok(ResidualReport {
        rep: rep.label.clone(),
        algebra: alg.name().to_string(),
        dim: rep.dim(),
        interior_states: mask.len(),
        scale,
        residuals: vec![
            residual("[P0,P+] - P+", &raise, mask),
            residual("[P0,P-] + P-", &lower, mask),
            residual("[P+,P-] - phi(P0)", &ladder, mask),
        ],
    })
}

/// Matrix of a normal-ordered element `sum P+^a f(P0) P-^b`.
pub fn eval_envelope(rep: &Rep, e: &EnvelopeElement) -> Result<DMatrix<f64>> {
    let dim = rep.dim();
    let power = |m: &DMatrix<f64>, k: u32| {
        (0..k).fold(DMatrix::<f64>::identity(dim, dim), |acc, _| acc * m)
    };
    let mut out = DMatrix::zeros(dim, dim);
    for ((a, b), f) in e.monomials() {
        let diag = rep.eval_poly(f)?;
        let mut middle = power(&rep.pminus, b);
        for (i, mut row) in middle.row_iter_mut().enumerate() {
            row *= diag[i];
        }
        out += power(&rep.pplus, a) * middle;
    }
    Ok(out)
}

pub fn casimir_matrix(rep: &Rep, alg: &PolyAlgebra) -> Result<DMatrix<f64>> {
    require_symbols(rep, alg)?;
    eval_envelope(rep, &casimir(alg))
}

/// Residuals of `[C, P+]`, `[C, P-]`, `[C, P0]` for the Casimir matrix `C`.
pub fn verify_casimir(rep: &Rep, alg: &PolyAlgebra) -> Result<ResidualReport> {
    let c = casimir_matrix(rep, alg)?;
    let mask = &rep.exact_interior;
    let mut scale = 0.0f64;
    let mut comm = |a: &DMatrix<f64>| {
        let (ca, ac) = (&c * a, a * &c);
        scale = scale.max(split_max(&ca, mask).0).max(split_max(&ac, mask).0);
        ca - ac
    };
    let with_plus = comm(&rep.pplus);
    let with_minus = comm(&rep.pminus);
    let with_p0 = -diag_commutator(&rep.p0, &c);
    Ok(ResidualReport {
        rep: rep.label.clone(),
        algebra: alg.name().to_string(),
        dim: rep.dim(),
        interior_states: mask.len(),
        scale,
        residuals: vec![
            residual("[C,P+]", &with_plus, mask),
            residual("[C,P-]", &with_minus, mask),
            residual("[C,P0]", &with_p0, mask),
        ],
    })
}

/// Largest entry of `[S, P+]`, `[S, P-]`, `[S, P0]` over the whole space for a central symbol `S`.
pub fn lambda_centrality(rep: &Rep, lambda: &Symbol) -> Result<f64> {
    let d = rep
        .symbol_eval
        .get(lambda)
        .ok_or_else(|| Error::MissingSymbols(vec![lambda.clone()]))?
        .diagonal(rep.dim());
    let max_abs = |m: DMatrix<f64>| m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    // S and P0 are both diagonal
    Ok(max_abs(diag_commutator(&d, &rep.pplus)).max(max_abs(diag_commutator(&d, &rep.pminus))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;
    use crate::fusion::{fuse, FusionKind};
    use crate::matrixrep::{rep_boson, rep_fused, rep_su11, rep_su2};

    #[test]
    fn su2_irrep_exact() {
        let rep = rep_su2(2.0).unwrap();
        let su2 = builtin("su2").unwrap();
        assert!(verify_relations(&rep, &su2).unwrap().max_interior() <= 1e-13);
        assert!(verify_casimir(&rep, &su2).unwrap().max_interior() <= 1e-13);
        let c = casimir_matrix(&rep, &su2).unwrap();
        let six = DMatrix::<f64>::identity(5, 5) * 6.0;
        assert!((c - six).abs().max() <= 1e-13);
    }

    #[test]
    fn boson_casimir_is_identity_on_interior() {
        let rep = rep_boson(8).unwrap();
        let b = builtin("boson").unwrap();
        let c = casimir_matrix(&rep, &b).unwrap();
        for i in rep.exact_interior.indices() {
            assert!((c[(i, i)] - 1.0).abs() <= 1e-12);
        }
        assert!(verify_relations(&rep, &b).unwrap().passes(1e-12));
    }

    #[test]
    fn su11_casimir_value() {
        let rep = rep_su11(1.0, 12).unwrap();
        let s = builtin("su11").unwrap();
        let c = casimir_matrix(&rep, &s).unwrap();
        for i in rep.exact_interior.indices() {
            assert!(c[(i, i)].abs() <= 1e-12);
        }
        assert!(verify_casimir(&rep, &s).unwrap().passes(1e-10));
    }

    #[test]
    fn fused_boson_pairs() {
        let b = builtin("boson").unwrap();
        let rb = rep_boson(8).unwrap();
        let j = fuse(FusionKind::J, &b, &b).unwrap();
        let rj = rep_fused(&j, &rb, &rb, 1.0).unwrap();
        assert!(verify_relations(&rj, &j.algebra).unwrap().passes(1e-12));
        // and against the su(2) relation directly
        let ladder = &rj.pplus * &rj.pminus - &rj.pminus * &rj.pplus - rj.p0_matrix() * 2.0;
        let (interior, _) = split_max(&ladder, &rj.exact_interior);
        assert!(interior <= 1e-12);

        let k = fuse(FusionKind::K, &b, &b).unwrap();
        let rk = rep_fused(&k, &rb, &rb, 1.0).unwrap();
        let id = DMatrix::<f64>::identity(rk.dim(), rk.dim());
        let ladder = &rk.pplus * &rk.pminus - &rk.pminus * &rk.pplus + rk.p0_matrix() * 2.0 + id;
        let (interior, _) = split_max(&ladder, &rk.exact_interior);
        assert!(interior <= 1e-12);
        assert!(lambda_centrality(&rk, &k.lambda).unwrap() <= 1e-12);
    }

    #[test]
    fn boundary_residuals_are_reported() {
        let rep = rep_boson(6).unwrap();
        let b = builtin("boson").unwrap();
        let report = verify_relations(&rep, &b).unwrap();
        let ladder = &report.residuals[2];
        assert!(ladder.interior <= 1e-12);
        assert!(ladder.boundary > 1.0, "truncation defect must surface: {ladder:?}");
    }

    #[test]
    fn missing_symbols_error() {
        let rep = rep_su2(1.0).unwrap();
        let h = builtin("higgs").unwrap();
        match verify_relations(&rep, &h) {
            Err(Error::MissingSymbols(s)) => {
                let names: Vec<_> = s.iter().map(|s| s.name()).collect();
                assert_eq!(names, ["a", "h"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
