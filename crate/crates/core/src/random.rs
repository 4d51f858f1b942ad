//! Seeded random algebras for property sweeps and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::PolyAlgebra;
use crate::coeffring::{rat, CoeffExpr, Monomial, P0Poly, Rational, Symbol};

const SYMBOL_POOL: [&str; 4] = ["a", "b", "c", "t"];

/// Deterministic generator for instance `index` of a sweep seeded with `seed`.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index as u64)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let n = rng.gen_range(-9i64..=9);
        if n != 0 {
            return rat(n, rng.gen_range(1..=6));
        }
    }
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

/// A coefficient with up to three terms, each of total degree at most two.
pub fn coeff<R: Rng>(rng: &mut R, symbolic: bool) -> CoeffExpr {
    if !symbolic {
        return CoeffExpr::constant(rational(rng));
    }
    let nterms = rng.gen_range(1..=3);
    CoeffExpr::from_terms((0..nterms).map(|_| {
        let deg = rng.gen_range(0..=2);
        let mono = Monomial::from_powers(
            (0..deg).map(|_| (Symbol::new(SYMBOL_POOL.choose(rng).unwrap()), 1)),
        );
        (mono, rational(rng))
    }))
}

/// Polynomial of exact degree `degree` with a nonzero rational leading coefficient.
pub fn poly<R: Rng>(rng: &mut R, degree: usize, symbolic: bool) -> P0Poly {
    let mut coeffs: Vec<CoeffExpr> = (0..degree).map(|_| coeff(rng, symbolic)).collect();
    coeffs.push(CoeffExpr::constant(nonzero_rational(rng)));
    P0Poly::from_coeffs(coeffs)
}

pub fn algebra<R: Rng>(rng: &mut R, name: &str, degree: usize, symbolic: bool) -> PolyAlgebra {
    PolyAlgebra::new(name, poly(rng, degree, symbolic))
}
