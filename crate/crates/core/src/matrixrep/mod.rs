//! Finite matrix realizations.
//!
//! Base realizations are the spin-`j` irrep of su(2), the positive discrete
//! series `D+(k)` of su(1,1) truncated at a cutoff, and the truncated Fock
//! space of one boson mode. Fused algebras act on tensor products of these.
//!
//! `P0` and every central symbol are diagonal in the stored basis, so they are
//! kept as vectors of diagonal entries. Truncated realizations carry an
//! interior mask; relations are only exact on it.

mod verify;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::coeffring::{rational_to_f64, CoeffExpr, P0Poly, Symbol};
use crate::error::{Error, Result};
use crate::fusion::{FusedAlgebra, FusionKind};

pub use verify::{
    casimir_matrix, eval_envelope, lambda_centrality, verify_casimir, verify_relations, Residual,
    ResidualReport,
};

/// Largest tensor-product dimension [`rep_fused`] will build.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Truncation buffer, in ladder steps, applied to each factor of a tensor product.
pub const TRUNCATION_BUFFER: usize = 2;

/// Numeric value of a central symbol: a scalar multiple of the identity or a diagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolValue {
    Scalar(f64),
    Diagonal(DVector<f64>),
}

impl SymbolValue {
    pub fn diagonal(&self, dim: usize) -> DVector<f64> {
        match self {
            SymbolValue::Scalar(s) => DVector::from_element(dim, *s),
            SymbolValue::Diagonal(d) => d.clone(),
        }
    }

    /// `self ⊗ 1` on a space whose second factor has dimension `other`.
    fn kron_left(&self, own: usize, other: usize) -> SymbolValue {
        match self {
            SymbolValue::Scalar(s) => SymbolValue::Scalar(*s),
            SymbolValue::Diagonal(_) => {
                SymbolValue::Diagonal(kron_diag(&self.diagonal(own), &DVector::from_element(other, 1.0)))
            }
        }
    }

    /// `1 ⊗ self`
    fn kron_right(&self, own: usize, other: usize) -> SymbolValue {
        match self {
            SymbolValue::Scalar(s) => SymbolValue::Scalar(*s),
            SymbolValue::Diagonal(_) => {
                SymbolValue::Diagonal(kron_diag(&DVector::from_element(other, 1.0), &self.diagonal(own)))
            }
        }
    }
}

fn kron_diag(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(
        a.len() * b.len(),
        a.iter().flat_map(|x| b.iter().map(move |y| x * y)),
    )
}

/// Set of basis indices on which truncated relations hold exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    included: Vec<bool>,
}

impl Mask {
    pub fn full(dim: usize) -> Self {
        Mask {
            included: vec![true; dim],
        }
    }

    /// Indices `0..keep` of a space of dimension `dim`.
    pub fn prefix(dim: usize, keep: usize) -> Self {
        Mask {
            included: (0..dim).map(|i| i < keep).collect(),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.included.get(i).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.included.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.included.iter().all(|b| *b)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.included.len()).filter(|i| self.included[*i]).collect()
    }

    /// Keeps the states from which every path of at most `steps` ladder moves
    /// stays inside the mask.
    pub fn shrink(&self, pplus: &DMatrix<f64>, pminus: &DMatrix<f64>, steps: usize) -> Mask {
        let mut cur = self.included.clone();
        for _ in 0..steps {
            let prev = cur.clone();
            for (i, keep) in cur.iter_mut().enumerate() {
                if !*keep {
                    continue;
                }
                let leaks = (0..prev.len()).any(|j| {
                    !prev[j] && (pplus[(j, i)] != 0.0 || pminus[(j, i)] != 0.0)
                });
                if leaks {
                    *keep = false;
                }
            }
        }
        Mask { included: cur }
    }

    fn tensor(&self, other: &Mask) -> Mask {
        Mask {
            included: self
                .included
                .iter()
                .flat_map(|a| other.included.iter().map(move |b| *a && *b))
                .collect(),
        }
    }
}

/// A finite realization of a polynomial algebra.
#[derive(Clone, Debug)]
pub struct Rep {
    pub label: String,
    /// Diagonal of `P0`.
    pub p0: DVector<f64>,
    pub pplus: DMatrix<f64>,
    pub pminus: DMatrix<f64>,
    pub symbol_eval: BTreeMap<Symbol, SymbolValue>,
    /// Value of the realized algebra's own Casimir element.
    pub casimir: SymbolValue,
    pub exact_interior: Mask,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.p0.len()
    }

    pub fn p0_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.p0)
    }

    /// Realization of the recentered algebra: `P0 -> P0 + shift`.
    pub fn recenter(&self, shift: f64) -> Rep {
        let mut out = self.clone();
        out.p0.add_scalar_mut(shift);
        out.label = format!("{}+{shift}", self.label);
        out
    }

    /// Diagonal of a central coefficient evaluated with `symbol_eval`.
    pub fn eval_coeff(&self, c: &CoeffExpr) -> Result<DVector<f64>> {
        let missing: Vec<Symbol> = c
            .symbols()
            .into_iter()
            .filter(|s| !self.symbol_eval.contains_key(s))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingSymbols(missing));
        }
        let dim = self.dim();
        let mut acc = DVector::zeros(dim);
        for (m, r) in c.terms() {
            let mut t = DVector::from_element(dim, rational_to_f64(r));
            for (s, e) in m.powers() {
                let v = self.symbol_eval[s].diagonal(dim);
                for _ in 0..e {
                    t.component_mul_assign(&v);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Diagonal of `f(P0)` with coefficients evaluated first, then multiplied by powers of `P0`.
    pub fn eval_poly(&self, f: &P0Poly) -> Result<DVector<f64>> {
        let dim = self.dim();
        let mut acc = DVector::zeros(dim);
        let mut p0_pow = DVector::from_element(dim, 1.0);
        for c in f.coeffs() {
            if !c.is_zero() {
                acc += self.eval_coeff(c)?.component_mul(&p0_pow);
            }
            p0_pow.component_mul_assign(&self.p0);
        }
        Ok(acc)
    }
}

fn ladder(dim: usize, entry: impl Fn(usize) -> (usize, usize, f64)) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let (r, c, v) = entry(i);
        if r < dim && c < dim {
            m[(r, c)] = v;
        }
    }
    m
}

/// Spin-`j` irrep of su(2) in the basis `m = j, j-1, ..., -j`.
pub fn rep_su2(j: f64) -> Result<Rep> {
    let two_j = 2.0 * j;
    if j.is_nan() || j < 0.0 || two_j.fract() != 0.0 {
        return Err(Error::InvalidRep(format!("su2 spin must be a nonnegative half-integer, got {j}")));
    }
    let dim = two_j as usize + 1;
    let p0 = DVector::from_iterator(dim, (0..dim).map(|i| j - i as f64));
    // P+ |m> = sqrt((j - m)(j + m + 1)) |m + 1>, and |m + 1> sits one index up
    let pplus = ladder(dim, |i| {
        let m = j - i as f64;
        (i.wrapping_sub(1), i, ((j - m) * (j + m + 1.0)).sqrt())
    });
    let pminus = pplus.transpose();
    Ok(Rep {
        label: format!("su2(j={j})"),
        p0,
        pplus,
        pminus,
        symbol_eval: BTreeMap::new(),
        casimir: SymbolValue::Scalar(j * (j + 1.0)),
        exact_interior: Mask::full(dim),
    })
}

/// Positive discrete series `D+(k)` of su(1,1), keeping the lowest `cutoff` states.
pub fn rep_su11(k: f64, cutoff: usize) -> Result<Rep> {
    if k.is_nan() || k <= 0.0 || !k.is_finite() {
        return Err(Error::InvalidRep(format!("su11 weight must be positive, got {k}")));
    }
    check_cutoff(cutoff)?;
    let p0 = DVector::from_iterator(cutoff, (0..cutoff).map(|n| k + n as f64));
    let pplus = ladder(cutoff, |n| {
        let nf = n as f64;
        (n + 1, n, ((nf + 1.0) * (2.0 * k + nf)).sqrt())
    });
    let pminus = pplus.transpose();
    Ok(Rep {
        label: format!("su11(k={k},cutoff={cutoff})"),
        p0,
        pplus,
        pminus,
        symbol_eval: BTreeMap::new(),
        casimir: SymbolValue::Scalar(-k * (k - 1.0)),
        exact_interior: Mask::prefix(cutoff, cutoff - TRUNCATION_BUFFER),
    })
}

/// One boson mode on the Fock states `0..cutoff`; `P+` creates, `P0` counts.
pub fn rep_boson(cutoff: usize) -> Result<Rep> {
    check_cutoff(cutoff)?;
    let p0 = DVector::from_iterator(cutoff, (0..cutoff).map(|n| n as f64));
    let pplus = ladder(cutoff, |n| (n + 1, n, ((n + 1) as f64).sqrt()));
    let pminus = pplus.transpose();
    Ok(Rep {
        label: format!("boson(cutoff={cutoff})"),
        p0,
        pplus,
        pminus,
        symbol_eval: BTreeMap::new(),
        casimir: SymbolValue::Scalar(1.0),
        exact_interior: Mask::prefix(cutoff, cutoff - TRUNCATION_BUFFER),
    })
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff < 3 {
        return Err(Error::InvalidRep(format!("cutoff must be at least 3, got {cutoff}")));
    }
    Ok(())
}

/// Tensor-product realization of a fused algebra, with `mu` the normalization
/// of the ladder generators.
pub fn rep_fused(f: &FusedAlgebra, l: &Rep, m: &Rep, mu: f64) -> Result<Rep> {
    rep_fused_with_limit(f, l, m, mu, DEFAULT_MAX_DIM)
}

pub fn rep_fused_with_limit(
    f: &FusedAlgebra,
    l: &Rep,
    m: &Rep,
    mu: f64,
    max_dim: usize,
) -> Result<Rep> {
    let (dl, dm) = (l.dim(), m.dim());
    let dim = dl
        .checked_mul(dm)
        .filter(|d| *d <= max_dim)
        .ok_or(Error::DimensionOverflow {
            dim: dl.saturating_mul(dm),
            limit: max_dim,
        })?;

    let ones_l = DVector::from_element(dl, 1.0);
    let ones_m = DVector::from_element(dm, 1.0);
    let l0 = kron_diag(&l.p0, &ones_m);
    let m0 = kron_diag(&ones_l, &m.p0);
    let (p0, lambda, pplus, pminus) = match f.kind {
        FusionKind::J => (
            (&l0 - &m0) * 0.5,
            (&l0 + &m0) * 0.5,
            l.pplus.kronecker(&m.pminus) * mu,
            l.pminus.kronecker(&m.pplus) * mu,
        ),
        FusionKind::K => (
            (&l0 + &m0) * 0.5,
            (&l0 - &m0) * 0.5,
            l.pplus.kronecker(&m.pplus) * mu,
            l.pminus.kronecker(&m.pminus) * mu,
        ),
    };

    let mut symbol_eval = BTreeMap::new();
    for (s, v) in &l.symbol_eval {
        symbol_eval.insert(s.clone(), v.kron_left(dl, dm));
    }
    for (s, v) in &m.symbol_eval {
        let name = f.renames.get(s).cloned().unwrap_or_else(|| s.clone());
        symbol_eval.insert(name, v.kron_right(dm, dl));
    }
    symbol_eval.insert(f.lambda.clone(), SymbolValue::Diagonal(lambda));
    symbol_eval.insert(f.mu2.clone(), SymbolValue::Scalar(mu * mu));
    if let Some(c) = &f.casimir_l {
        symbol_eval.insert(c.clone(), l.casimir.kron_left(dl, dm));
    }
    if let Some(c) = &f.casimir_m {
        symbol_eval.insert(c.clone(), m.casimir.kron_right(dm, dl));
    }

    let interior_l = l.exact_interior.shrink(&l.pplus, &l.pminus, TRUNCATION_BUFFER);
    let interior_m = m.exact_interior.shrink(&m.pplus, &m.pminus, TRUNCATION_BUFFER);

    let mut rep = Rep {
        label: format!("{}[{} x {}]", f.kind, l.label, m.label),
        p0,
        pplus,
        pminus,
        symbol_eval,
        casimir: SymbolValue::Scalar(0.0),
        exact_interior: interior_l.tensor(&interior_m),
    };
    debug_assert_eq!(rep.dim(), dim);
    // P+P- is diagonal for tensor products of ladder pairs, so is the Casimir.
    let c = casimir_matrix(&rep, &f.algebra)?;
    rep.casimir = SymbolValue::Diagonal(c.diagonal());
    Ok(rep)
}
