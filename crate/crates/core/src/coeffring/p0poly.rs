use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::coeff::write_signed_term;
use super::{CoeffExpr, Rational, Symbol};

/// Orientation of an affine substitution `P0 -> alpha + sign * P0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }
}

/// Univariate polynomial in `P0` with [`CoeffExpr`] coefficients.
///
/// `coeffs[k]` multiplies `P0^k`; trailing zero coefficients are trimmed, so
/// the zero polynomial has no coefficients and no degree.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct P0Poly {
    coeffs: Vec<CoeffExpr>,
}

impl P0Poly {
    pub fn zero() -> Self {
        P0Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(CoeffExpr::one())
    }

    /// The polynomial `P0`.
    pub fn x() -> Self {
        Self::monomial(CoeffExpr::one(), 1)
    }

    pub fn constant(c: CoeffExpr) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * P0^power`
    pub fn monomial(c: CoeffExpr, power: usize) -> Self {
        let mut coeffs = vec![CoeffExpr::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<CoeffExpr>) -> Self {
        while coeffs.last().is_some_and(CoeffExpr::is_zero) {
            coeffs.pop();
        }
        P0Poly { coeffs }
    }

    /// Builds from rational coefficients, lowest power first.
    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(CoeffExpr::constant).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, power: usize) -> &CoeffExpr {
        self.coeffs.get(power).unwrap_or(CoeffExpr::zero_ref())
    }

    pub fn leading(&self) -> &CoeffExpr {
        self.coeffs.last().unwrap_or(CoeffExpr::zero_ref())
    }

    pub fn coeffs(&self) -> &[CoeffExpr] {
        &self.coeffs
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.coeffs.iter().flat_map(CoeffExpr::symbols).collect()
    }

    pub fn scale(&self, c: &CoeffExpr) -> P0Poly {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn map_coeffs(&self, f: impl FnMut(&CoeffExpr) -> CoeffExpr) -> P0Poly {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn substitute_symbols(&self, assignments: &BTreeMap<Symbol, CoeffExpr>) -> P0Poly {
        self.map_coeffs(|c| c.substitute(assignments))
    }

    pub fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> P0Poly {
        self.map_coeffs(|c| c.rename(map))
    }

    pub fn pow(&self, e: u32) -> P0Poly {
        (0..e).fold(P0Poly::one(), |acc, _| &acc * self)
    }

    /// Returns `p(alpha + sign * P0)`, expanded binomially.
    pub fn substitute_affine(&self, alpha: &CoeffExpr, sign: Sign) -> P0Poly {
        let n = self.coeffs.len();
        if n == 0 {
            return P0Poly::zero();
        }
        let alpha_pows: Vec<CoeffExpr> = std::iter::successors(Some(CoeffExpr::one()), |p| {
            Some(p * alpha)
        })
        .take(n)
        .collect();
        let s = sign.as_rational();
        let mut out = vec![CoeffExpr::zero(); n];
        for (j, cj) in self.coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            // (alpha + s x)^j = sum_k C(j,k) s^k x^k alpha^(j-k)
            let mut binom = BigInt::one();
            let mut s_pow = Rational::one();
            for (k, slot) in out.iter_mut().enumerate().take(j + 1) {
                let scalar = Rational::from_integer(binom.clone()) * &s_pow;
                *slot += &(cj * &alpha_pows[j - k]).scale(&scalar);
                binom = binom * BigInt::from(j - k) / BigInt::from(k + 1);
                s_pow *= &s;
            }
        }
        Self::from_coeffs(out)
    }

    /// `p(P0 + shift)`
    pub fn shift(&self, shift: &Rational) -> P0Poly {
        self.substitute_affine(&CoeffExpr::constant(shift.clone()), Sign::Plus)
    }

    /// Evaluates at a ring element, giving a coefficient expression.
    pub fn eval_at(&self, at: &CoeffExpr) -> CoeffExpr {
        self.coeffs
            .iter()
            .rev()
            .fold(CoeffExpr::zero(), |acc, c| &(&acc * at) + c)
    }
}

impl<'a> Add<&'a P0Poly> for &'a P0Poly {
    type Output = P0Poly;
    fn add(self, rhs: &P0Poly) -> P0Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        P0Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a P0Poly> for &'a P0Poly {
    type Output = P0Poly;
    fn sub(self, rhs: &P0Poly) -> P0Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        P0Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a P0Poly> for &'a P0Poly {
    type Output = P0Poly;
    fn mul(self, rhs: &P0Poly) -> P0Poly {
        if self.is_zero() || rhs.is_zero() {
            return P0Poly::zero();
        }
        let mut out = vec![CoeffExpr::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        P0Poly::from_coeffs(out)
    }
}

impl Neg for &P0Poly {
    type Output = P0Poly;
    fn neg(self) -> P0Poly {
        self.map_coeffs(|c| -c)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for P0Poly {
            type Output = P0Poly;
            fn $m(self, rhs: P0Poly) -> P0Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for P0Poly {
    type Output = P0Poly;
    fn neg(self) -> P0Poly {
        -&self
    }
}

impl From<CoeffExpr> for P0Poly {
    fn from(c: CoeffExpr) -> Self {
        P0Poly::constant(c)
    }
}

/// Fully expanded, highest power of `P0` first; the output parses back in the DSL.
impl fmt::Display for P0Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            for (m, r) in c.terms() {
                let mut parts = Vec::new();
                if !m.is_one() {
                    parts.push(m.to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push("P0".to_string()),
                    _ => parts.push(format!("P0^{k}")),
                }
                let body = parts.join("*");
                write_signed_term(f, first, r, &body, parts.is_empty())?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for P0Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
