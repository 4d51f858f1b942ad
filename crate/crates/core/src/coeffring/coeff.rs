use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational, Symbol};

/// A power product of central symbols, e.g. `C_L * Lambda^2`.
///
/// Zero exponents are never stored, so the empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(sym: impl Into<Symbol>) -> Self {
        Self::from_powers([(sym.into(), 1)])
    }

    /// Builds a monomial from `(symbol, exponent)` pairs, merging repeats.
    pub fn from_powers(powers: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (s, e) in powers {
            if e > 0 {
                *map.entry(s).or_insert(0) += e;
            }
        }
        Monomial(map)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, sym: &str) -> u32 {
        self.0.get(sym).copied().unwrap_or(0)
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            *out.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (s, e) in &self.0 {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact polynomial in commuting central symbols over the rationals.
///
/// Stored sparsely as monomial -> nonzero rational, with keys in canonical
/// (lexicographic by symbol name) order, so derived equality is mathematical
/// equality.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffExpr {
    terms: BTreeMap<Monomial, Rational>,
}

static ZERO: CoeffExpr = CoeffExpr {
    terms: BTreeMap::new(),
};

impl CoeffExpr {
    pub fn zero() -> Self {
        CoeffExpr::default()
    }

    pub(crate) fn zero_ref() -> &'static CoeffExpr {
        &ZERO
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::from_terms([(Monomial::one(), r)])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn symbol(sym: impl Into<Symbol>) -> Self {
        Self::from_terms([(Monomial::var(sym), Rational::one())])
    }

    /// Canonicalizes a raw list of terms: like monomials are merged and zero
    /// coefficients dropped.
    pub fn from_terms(raw: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in raw {
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        CoeffExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The rational value if this expression contains no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn scale(&self, r: &Rational) -> CoeffExpr {
        if r.is_zero() {
            return CoeffExpr::zero();
        }
        CoeffExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CoeffExpr {
        let mut base = self.clone();
        let mut acc = CoeffExpr::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces each assigned symbol by its value and re-expands.
    pub fn substitute(&self, assignments: &BTreeMap<Symbol, CoeffExpr>) -> CoeffExpr {
        if assignments.is_empty() {
            return self.clone();
        }
        let mut out = CoeffExpr::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = CoeffExpr::constant(c.clone());
            for (s, e) in m.powers() {
                match assignments.get(s) {
                    Some(v) => factor = &factor * &v.pow(e),
                    None => kept.push((s.clone(), e)),
                }
            }
            let kept = CoeffExpr::from_terms([(Monomial::from_powers(kept), Rational::one())]);
            out += &(&factor * &kept);
        }
        out
    }

    /// Renames symbols; symbols absent from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<Symbol, Symbol>) -> CoeffExpr {
        CoeffExpr::from_terms(self.terms.iter().map(|(m, c)| {
            let m = Monomial::from_powers(
                m.powers()
                    .map(|(s, e)| (map.get(s).cloned().unwrap_or_else(|| s.clone()), e)),
            );
            (m, c.clone())
        }))
    }

    /// Evaluates with every symbol mapped to a number.
    pub fn eval_f64(&self, value: impl Fn(&Symbol) -> Option<f64>) -> Option<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (s, e) in m.powers() {
                t *= value(s)?.powi(e as i32);
            }
            acc += t;
        }
        Some(acc)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl From<Rational> for CoeffExpr {
    fn from(r: Rational) -> Self {
        CoeffExpr::constant(r)
    }
}

impl From<i64> for CoeffExpr {
    fn from(n: i64) -> Self {
        CoeffExpr::int(n)
    }
}

impl<'a> Add<&'a CoeffExpr> for &'a CoeffExpr {
    type Output = CoeffExpr;
    fn add(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoeffExpr {
    type Output = CoeffExpr;
    fn add(mut self, rhs: CoeffExpr) -> CoeffExpr {
        self += &rhs;
        self
    }
}

impl AddAssign<&CoeffExpr> for CoeffExpr {
    fn add_assign(&mut self, rhs: &CoeffExpr) {
        for (m, c) in &rhs.terms {
            match self.terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
}

impl SubAssign<&CoeffExpr> for CoeffExpr {
    fn sub_assign(&mut self, rhs: &CoeffExpr) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a CoeffExpr> for &'a CoeffExpr {
    type Output = CoeffExpr;
    fn sub(self, rhs: &CoeffExpr) -> CoeffExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for CoeffExpr {
    type Output = CoeffExpr;
    fn sub(mut self, rhs: CoeffExpr) -> CoeffExpr {
        self -= &rhs;
        self
    }
}

impl Neg for &CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        CoeffExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CoeffExpr {
    type Output = CoeffExpr;
    fn neg(self) -> CoeffExpr {
        -&self
    }
}

impl<'a> Mul<&'a CoeffExpr> for &'a CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: &CoeffExpr) -> CoeffExpr {
        if self.is_zero() || rhs.is_zero() {
            return CoeffExpr::zero();
        }
        CoeffExpr::from_terms(self.terms.iter().flat_map(|(m1, c1)| {
            rhs.terms.iter().map(move |(m2, c2)| (m1.mul(m2), c1 * c2))
        }))
    }
}

impl Mul for CoeffExpr {
    type Output = CoeffExpr;
    fn mul(self, rhs: CoeffExpr) -> CoeffExpr {
        &self * &rhs
    }
}

/// Writes terms in the DSL's expanded syntax: `2*a*b^2 - 1/3*c`.
impl fmt::Display for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &m.to_string(), m.is_one())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoeffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shared by the `CoeffExpr` and `P0Poly` printers. `body` is the product of
/// non-numeric factors, or `"1"` when there are none.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    body: &str,
    body_is_one: bool,
) -> fmt::Result {
    let neg = coeff.is_negative();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let abs = coeff.abs();
    if body_is_one {
        f.write_str(&fmt_rational(&abs))
    } else if abs.is_one() {
        f.write_str(body)
    } else {
        write!(f, "{}*{}", fmt_rational(&abs), body)
    }
}
