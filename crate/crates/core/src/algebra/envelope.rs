use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

use super::rewrite::{normal_form, Factor};
use super::PolyAlgebra;
use crate::coeffring::{CoeffExpr, P0Poly, Rational};

/// A finite sum `sum P+^a f_ab(P0) P-^b` in normal order.
///
/// Keys are `(a, b)`; no monomial with a zero polynomial is stored, so derived
/// equality decides operator identities.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct EnvelopeElement {
    monomials: BTreeMap<(u32, u32), P0Poly>,
}

impl EnvelopeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::poly(P0Poly::one())
    }

    /// `P+^raise f(P0) P-^lower`
    pub fn monomial(raise: u32, f: P0Poly, lower: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(raise, lower, &f);
        e
    }

    pub fn poly(f: P0Poly) -> Self {
        Self::monomial(0, f, 0)
    }

    pub fn raise() -> Self {
        Self::monomial(1, P0Poly::one(), 0)
    }

    pub fn lower() -> Self {
        Self::monomial(0, P0Poly::one(), 1)
    }

    pub fn p0() -> Self {
        Self::poly(P0Poly::x())
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = ((u32, u32), &P0Poly)> {
        self.monomials.iter().map(|(k, v)| (*k, v))
    }

    pub fn get(&self, raise: u32, lower: u32) -> Option<&P0Poly> {
        self.monomials.get(&(raise, lower))
    }

    pub fn scale(&self, c: &CoeffExpr) -> EnvelopeElement {
        let mut out = Self::zero();
        for ((a, b), f) in &self.monomials {
            out.add_term(*a, *b, &f.scale(c));
        }
        out
    }

    fn add_term(&mut self, raise: u32, lower: u32, f: &P0Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.monomials.entry((raise, lower)).or_default();
        *slot = &*slot + f;
        if slot.is_zero() {
            self.monomials.remove(&(raise, lower));
        }
    }

    /// Accumulates an irreducible word `P+^a [f] P-^b`.
    pub(super) fn add_normal_word(&mut self, word: &[Factor]) {
        let mut raise = 0;
        let mut lower = 0;
        let mut poly = None;
        for f in word {
            match f {
                Factor::Raise => raise += 1,
                Factor::Lower => lower += 1,
                Factor::Poly(p) => poly = Some(p),
            }
        }
        match poly {
            Some(p) => self.add_term(raise, lower, p),
            None => self.add_term(raise, lower, &P0Poly::one()),
        }
    }

    fn word(raise: u32, f: &P0Poly, lower: u32) -> impl Iterator<Item = Factor> + '_ {
        std::iter::repeat_n(Factor::Raise, raise as usize)
            .chain(std::iter::once(Factor::Poly(f.clone())))
            .chain(std::iter::repeat_n(Factor::Lower, lower as usize))
    }
}

impl<'a> Add<&'a EnvelopeElement> for &'a EnvelopeElement {
    type Output = EnvelopeElement;
    fn add(self, rhs: &EnvelopeElement) -> EnvelopeElement {
        let mut out = self.clone();
        for ((a, b), f) in &rhs.monomials {
            out.add_term(*a, *b, f);
        }
        out
    }
}

impl<'a> Sub<&'a EnvelopeElement> for &'a EnvelopeElement {
    type Output = EnvelopeElement;
    fn sub(self, rhs: &EnvelopeElement) -> EnvelopeElement {
        self + &(-rhs)
    }
}

impl Neg for &EnvelopeElement {
    type Output = EnvelopeElement;
    fn neg(self) -> EnvelopeElement {
        EnvelopeElement {
            monomials: self.monomials.iter().map(|(k, f)| (*k, -f)).collect(),
        }
    }
}

impl fmt::Display for EnvelopeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((a, b), p) in self.monomials.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            match a {
                0 => {}
                1 => parts.push("P+".to_string()),
                _ => parts.push(format!("P+^{a}")),
            }
            if !p.is_one_poly() || (*a == 0 && *b == 0) {
                parts.push(format!("({p})"));
            }
            match b {
                0 => {}
                1 => parts.push("P-".to_string()),
                _ => parts.push(format!("P-^{b}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EnvelopeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl P0Poly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

/// Product `x * y` reduced to normal order with the relations of `alg`.
pub fn env_mul(x: &EnvelopeElement, y: &EnvelopeElement, alg: &PolyAlgebra) -> EnvelopeElement {
    let mut out = EnvelopeElement::zero();
    for ((a, b), f) in &x.monomials {
        for ((c, d), h) in &y.monomials {
            let word: Vec<Factor> = EnvelopeElement::word(*a, f, *b)
                .chain(EnvelopeElement::word(*c, h, *d))
                .collect();
            out = &out + &normal_form(word, alg.phi());
        }
    }
    out
}

pub fn env_commutator(
    x: &EnvelopeElement,
    y: &EnvelopeElement,
    alg: &PolyAlgebra,
) -> EnvelopeElement {
    &env_mul(x, y, alg) - &env_mul(y, x, alg)
}

/// The Casimir element `P+P- + g(P0 - 1)`.
pub fn casimir(alg: &PolyAlgebra) -> EnvelopeElement {
    let g_shifted = alg.g().shift(&-Rational::one());
    &EnvelopeElement::monomial(1, P0Poly::one(), 1) + &EnvelopeElement::poly(g_shifted)
}

/// The other form of the Casimir, `P-P+ + g(P0)`, rewritten to normal order.
pub fn casimir_lower_form(alg: &PolyAlgebra) -> EnvelopeElement {
    let lower_raise = env_mul(&EnvelopeElement::lower(), &EnvelopeElement::raise(), alg);
    &lower_raise + &EnvelopeElement::poly(alg.g())
}

/// `[[P+,P-],P0] + [[P-,P0],P+] + [[P0,P+],P-] == 0` after rewriting.
pub fn jacobi_check(alg: &PolyAlgebra) -> bool {
    let (p, m, z) = (
        EnvelopeElement::raise(),
        EnvelopeElement::lower(),
        EnvelopeElement::p0(),
    );
    let c = |x: &EnvelopeElement, y: &EnvelopeElement| env_commutator(x, y, alg);
    let total = &(&c(&c(&p, &m), &z) + &c(&c(&m, &z), &p)) + &c(&c(&z, &p), &m);
    total.is_zero()
}
