//! Normal-order rewriting of words in `P+`, `P-` and polynomials in `P0`.
//!
//! Rules, all directed consequences of the defining relations:
//!
//! ```text
//! f(P0) g(P0) -> (fg)(P0)
//! P-  P+      -> P+ P-  -  phi(P0)
//! f(P0) P+    -> P+ f(P0 + 1)
//! P-  f(P0)   -> f(P0 + 1) P-
//! ```
//!
//! Every rule either removes an inversion `P- ... P+` or moves a `P0`
//! polynomial outward past a ladder factor without creating one, so rewriting
//! terminates; irreducible words are exactly `P+^a f(P0) P-^b`.

use num_traits::One;

use super::envelope::EnvelopeElement;
use crate::coeffring::{P0Poly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Raise,
    Lower,
    Poly(P0Poly),
}

enum Redex {
    Merge,
    Inversion,
    PolyRaise,
    LowerPoly,
}

fn find_redex(word: &[Factor]) -> Option<(usize, Redex)> {
    use Factor::*;
    let pairs = || word.windows(2).enumerate();
    if let Some((i, _)) = pairs().find(|(_, w)| matches!(w, [Poly(_), Poly(_)])) {
        return Some((i, Redex::Merge));
    }
    // innermost inversion: the rightmost P- immediately followed by P+
    if let Some((i, _)) = pairs().rfind(|(_, w)| matches!(w, [Lower, Raise])) {
        return Some((i, Redex::Inversion));
    }
    pairs().find_map(|(i, w)| match w {
        [Poly(_), Raise] => Some((i, Redex::PolyRaise)),
        [Lower, Poly(_)] => Some((i, Redex::LowerPoly)),
        _ => None,
    })
}

/// Rewrites a word to its normal-ordered element for the algebra with structure polynomial `phi`.
pub fn normal_form(word: Vec<Factor>, phi: &P0Poly) -> EnvelopeElement {
    let one = Rational::one();
    let neg_phi = -phi;
    let mut out = EnvelopeElement::zero();
    let mut stack = vec![word];
    while let Some(mut w) = stack.pop() {
        if w.iter().any(|f| matches!(f, Factor::Poly(p) if p.is_zero())) {
            continue;
        }
        let Some((i, redex)) = find_redex(&w) else {
            out.add_normal_word(&w);
            continue;
        };
        match redex {
            Redex::Merge => {
                let (Factor::Poly(f), Factor::Poly(g)) = (&w[i], &w[i + 1]) else {
                    unreachable!()
                };
                let fg = f * g;
                w.splice(i..i + 2, [Factor::Poly(fg)]);
                stack.push(w);
            }
            Redex::Inversion => {
                let mut swapped = w.clone();
                swapped[i] = Factor::Raise;
                swapped[i + 1] = Factor::Lower;
                w.splice(i..i + 2, [Factor::Poly(neg_phi.clone())]);
                stack.push(swapped);
                stack.push(w);
            }
            Redex::PolyRaise => {
                let Factor::Poly(f) = &w[i] else { unreachable!() };
                let shifted = f.shift(&one);
                w[i] = Factor::Raise;
                w[i + 1] = Factor::Poly(shifted);
                stack.push(w);
            }
            Redex::LowerPoly => {
                let Factor::Poly(f) = &w[i + 1] else { unreachable!() };
                let shifted = f.shift(&one);
                w[i] = Factor::Poly(shifted);
                w[i + 1] = Factor::Lower;
                stack.push(w);
            }
        }
    }
    out
}
