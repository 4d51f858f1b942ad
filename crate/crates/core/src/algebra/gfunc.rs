use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeffring::{CoeffExpr, P0Poly, Rational};

/// Solves `g(x) - g(x - 1) = phi(x)` for the unique `g` with zero constant term.
///
/// Writing `g = sum_{i=1}^{m+1} b_i x^i`, the coefficient of `x^k` in
/// `g(x) - g(x-1)` is `sum_{i>k} (-1)^(i-k+1) C(i,k) b_i`, an upper triangular
/// system with diagonal `k + 1`. It is solved by back substitution from the top.
pub fn solve_g(phi: &P0Poly) -> P0Poly {
    let Some(m) = phi.degree() else {
        return P0Poly::zero();
    };
    let binom = binomial_table(m + 1);
    // b[i] is the coefficient of x^i, i in 1..=m+1
    let mut b = vec![CoeffExpr::zero(); m + 2];
    for k in (0..=m).rev() {
        let mut rhs = phi.coeff(k).clone();
        for i in (k + 2)..=(m + 1) {
            let sign = if (i - k + 1) % 2 == 0 { 1 } else { -1 };
            let c = Rational::from_integer(&binom[i][k] * BigInt::from(sign));
            rhs -= &b[i].scale(&c);
        }
        b[k + 1] = rhs.scale(&Rational::new(BigInt::one(), BigInt::from(k + 1)));
    }
    P0Poly::from_coeffs(b)
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = BigInt::one();
        for k in 1..=i {
            t[i][k] = &t[i - 1][k - 1] + &t[i - 1][k];
        }
    }
    t
}
