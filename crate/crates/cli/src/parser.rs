//! Recursive-descent parser for the definition language.
//!
//! ```text
//! program   := stmt*
//! stmt      := algebra | let | query | verify | expect | expr ";"
//! algebra   := "algebra" IDENT ("(" IDENT ("," IDENT)* ")")? "{" "phi" "=" poly ";" "}"
//! let       := "let" IDENT "=" expr ";"
//! query     := ("phi" | "g" | "casimir" | "order" | "show") expr ";"
//! verify    := "verify" expr ("with" "(" IDENT "=" number ("," IDENT "=" number)* ")")? ";"
//! expect    := "expect" expr "=" poly ";"
//! expr      := IDENT
//!            | "fuse" "(" ("J" | "K") "," expr "," expr ")"
//!            | "specialize" "(" expr ("," IDENT "=" poly)* ")"
//!            | "recenter" "(" expr "," poly ")"
//! poly      := ("+" | "-")? term (("+" | "-") term)*
//! term      := factor ("*" factor)*
//! factor    := rational | "P0" ("^" UINT)? | IDENT ("^" UINT)?
//! rational  := UINT ("/" UINT)?
//! number    := "-"? (rational | DECIMAL)
//! ```
//!
//! Names are resolved while parsing: every algebra must be defined before it
//! is used, and no name is defined twice. A builtin may be shadowed by one
//! user definition.

use std::collections::BTreeMap;

use polyalg::algebra::BUILTIN_NAMES;
use polyalg::coeffring::{CoeffExpr, P0Poly, Rational};
use polyalg::fusion::FusionKind;

use crate::ast::{Expr, Program, Query, Stmt, StmtKind};
use crate::error::DslError;
use crate::lexer::{tokenize, Pos, Tok, Token};

pub const KEYWORDS: [&str; 13] = [
    "algebra", "let", "fuse", "specialize", "recenter", "verify", "with", "expect", "phi", "g",
    "casimir", "order", "show",
];

const P0: &str = "P0";

pub fn parse(src: &str) -> Result<Program, DslError> {
    let tokens = tokenize(src).map_err(|e| DslError::Syntax {
        pos: e.pos,
        expected: vec!["a token".into()],
        found: format!("character `{}`", e.found),
    })?;
    let mut p = Parser {
        tokens,
        at: 0,
        defined: BTreeMap::new(),
    };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.stmt()?);
    }
    Ok(Program { statements })
}

/// Parses a standalone polynomial in `P0` with free central symbols.
pub fn parse_poly(src: &str) -> Result<P0Poly, DslError> {
    let tokens = tokenize(src).map_err(|e| DslError::Syntax {
        pos: e.pos,
        expected: vec!["a token".into()],
        found: format!("character `{}`", e.found),
    })?;
    let mut p = Parser {
        tokens,
        at: 0,
        defined: BTreeMap::new(),
    };
    let poly = p.poly(Symbols::Free)?;
    p.expect(Tok::Eof, "end of input")?;
    Ok(poly)
}

/// Which identifiers may appear as central symbols in a polynomial.
#[derive(Clone, Copy)]
enum Symbols<'a> {
    Free,
    Declared(&'a [String]),
    /// A central value: symbols allowed, `P0` is not.
    Central,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    /// User definitions and where they were made.
    defined: BTreeMap<String, Pos>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, DslError> {
        Err(DslError::Syntax {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<Pos, DslError> {
        if *self.peek() == tok {
            Ok(self.bump().pos)
        } else {
            self.error(&[label])
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, label: &str) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let pos = self.bump().pos;
                Ok((s, pos))
            }
            _ => self.error(&[label]),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().pos),
            _ => self.error(&[&format!("`{kw}`")]),
        }
    }

    fn peek_keyword(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => Some(s.as_str()),
            _ => None,
        }
    }

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let pos = self.pos();
        let kind = match self.peek_keyword() {
            Some("algebra") => self.algebra()?,
            Some("let") => {
                self.bump();
                let (name, name_pos) = self.ident("a name")?;
                self.check_definable(&name, name_pos)?;
                self.expect(Tok::Eq, "`=`")?;
                let expr = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                self.defined.insert(name.clone(), name_pos);
                StmtKind::Let { name, expr }
            }
            Some("verify") => {
                self.bump();
                let target = self.expr()?;
                let params = if self.peek() == &Tok::Ident("with".into()) {
                    self.bump();
                    self.verify_params()?
                } else {
                    Vec::new()
                };
                if params.is_empty() && *self.peek() != Tok::Semi {
                    return self.error(&["`with`", "`;`"]);
                }
                self.expect(Tok::Semi, "`;`")?;
                StmtKind::Verify { target, params }
            }
            Some("expect") => {
                self.bump();
                let target = self.expr()?;
                self.expect(Tok::Eq, "`=`")?;
                let phi = self.poly(Symbols::Free)?;
                self.expect(Tok::Semi, "`;`")?;
                StmtKind::Expect { target, phi }
            }
            Some(kw) if Query::ALL.iter().any(|q| q.keyword() == kw) => {
                let query = Query::ALL.into_iter().find(|q| q.keyword() == kw).unwrap();
                self.bump();
                let target = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                StmtKind::Query { query, target }
            }
            _ => {
                if !matches!(self.peek(), Tok::Ident(_)) {
                    return self.error(&["a statement"]);
                }
                let e = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                StmtKind::Bare(e)
            }
        };
        Ok(Stmt { kind, pos })
    }

    fn check_definable(&self, name: &str, pos: Pos) -> Result<(), DslError> {
        if KEYWORDS.contains(&name) || name == P0 {
            return Err(DslError::Reserved {
                pos,
                name: name.to_string(),
            });
        }
        if let Some(previous) = self.defined.get(name) {
            return Err(DslError::Duplicate {
                pos,
                name: name.to_string(),
                previous: *previous,
            });
        }
        Ok(())
    }

    fn algebra(&mut self) -> Result<StmtKind, DslError> {
        self.keyword("algebra")?;
        let (name, name_pos) = self.ident("an algebra name")?;
        self.check_definable(&name, name_pos)?;
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                let (p, ppos) = self.ident("a parameter name")?;
                if p == P0 || KEYWORDS.contains(&p.as_str()) {
                    return Err(DslError::Reserved { pos: ppos, name: p });
                }
                if params.contains(&p) {
                    return Err(DslError::DuplicateParam { pos: ppos, name: p });
                }
                params.push(p);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen, "`)` or `,`")?;
        }
        self.expect(Tok::LBrace, "`{`")?;
        self.keyword("phi")?;
        self.expect(Tok::Eq, "`=`")?;
        let phi = self.poly(Symbols::Declared(&params))?;
        self.expect(Tok::Semi, "`;`")?;
        self.expect(Tok::RBrace, "`}`")?;
        self.defined.insert(name.clone(), name_pos);
        Ok(StmtKind::Algebra { name, params, phi })
    }

    fn verify_params(&mut self) -> Result<Vec<(String, Rational)>, DslError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        loop {
            let (k, _) = self.ident("a parameter name")?;
            self.expect(Tok::Eq, "`=`")?;
            let v = self.number()?;
            out.push((k, v));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(out)
    }

    fn number(&mut self) -> Result<Rational, DslError> {
        let negative = self.eat(&Tok::Minus);
        let value = match self.peek().clone() {
            Tok::Decimal(s) => {
                self.bump();
                parse_decimal(&s)
            }
            Tok::Int(_) => self.rational()?,
            _ => return self.error(&["a number"]),
        };
        Ok(if negative { -value } else { value })
    }

    fn rational(&mut self) -> Result<Rational, DslError> {
        let n = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                s
            }
            _ => return self.error(&["an integer"]),
        };
        let mut r: Rational = n.parse().expect("digits");
        if self.eat(&Tok::Slash) {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Int(d) => {
                    self.bump();
                    let d: Rational = d.parse().expect("digits");
                    if d == Rational::from_integer(0.into()) {
                        return Err(DslError::ZeroDenominator { pos });
                    }
                    r /= d;
                }
                _ => return self.error(&["a denominator"]),
            }
        }
        Ok(r)
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let (name, pos) = match self.peek().clone() {
            Tok::Ident(s) => (s, self.pos()),
            _ => return self.error(&["an algebra name", "`fuse`", "`specialize`", "`recenter`"]),
        };
        match name.as_str() {
            "fuse" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let kind = match self.peek() {
                    Tok::Ident(k) if k == "J" => FusionKind::J,
                    Tok::Ident(k) if k == "K" => FusionKind::K,
                    _ => return self.error(&["`J`", "`K`"]),
                };
                self.bump();
                self.expect(Tok::Comma, "`,`")?;
                let left = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let right = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Fuse {
                    kind,
                    left: Box::new(left),
                    right: Box::new(right),
                })
            }
            "specialize" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let target = self.expr()?;
                let mut assignments: Vec<(String, CoeffExpr)> = Vec::new();
                while self.eat(&Tok::Comma) {
                    let (sym, spos) = self.ident("a central symbol")?;
                    if sym == P0 {
                        return Err(DslError::Reserved { pos: spos, name: sym });
                    }
                    if assignments.iter().any(|(s, _)| *s == sym) {
                        return Err(DslError::DuplicateParam { pos: spos, name: sym });
                    }
                    self.expect(Tok::Eq, "`=`")?;
                    let value = self.poly(Symbols::Central)?;
                    assignments.push((sym, value.coeff(0).clone()));
                }
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(Expr::Specialize {
                    target: Box::new(target),
                    assignments,
                })
            }
            "recenter" => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let target = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let shift = self.poly(Symbols::Central)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Recenter {
                    target: Box::new(target),
                    shift: shift.coeff(0).clone(),
                })
            }
            _ if KEYWORDS.contains(&name.as_str()) => {
                self.error(&["an algebra name", "`fuse`", "`specialize`", "`recenter`"])
            }
            _ => {
                self.bump();
                if !self.defined.contains_key(&name) && !BUILTIN_NAMES.contains(&name.as_str()) {
                    return Err(DslError::UnknownIdent { pos, name });
                }
                Ok(Expr::Name(name))
            }
        }
    }

    fn poly(&mut self, symbols: Symbols<'_>) -> Result<P0Poly, DslError> {
        let mut acc = P0Poly::zero();
        let mut negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.term(symbols)?;
            acc = if negative { &acc - &t } else { &acc + &t };
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(acc)
    }

    fn term(&mut self, symbols: Symbols<'_>) -> Result<P0Poly, DslError> {
        let mut acc = self.factor(symbols)?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.factor(symbols)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32, DslError> {
        if !self.eat(&Tok::Caret) {
            return Ok(1);
        }
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                s.parse().map_err(|_| DslError::ExponentTooLarge { pos })
            }
            _ => self.error(&["an unsigned integer exponent"]),
        }
    }

    fn factor(&mut self, symbols: Symbols<'_>) -> Result<P0Poly, DslError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(P0Poly::constant(CoeffExpr::constant(self.rational()?))),
            Tok::Ident(name) if name == P0 => {
                let pos = self.bump().pos;
                if let Symbols::Central = symbols {
                    return Err(DslError::P0InCentral { pos });
                }
                let e = self.exponent()?;
                Ok(P0Poly::x().pow(e))
            }
            Tok::Ident(name) => {
                let pos = self.bump().pos;
                if let Symbols::Declared(params) = symbols {
                    if !params.contains(&name) {
                        return Err(DslError::UnknownIdent { pos, name });
                    }
                }
                let e = self.exponent()?;
                Ok(P0Poly::constant(CoeffExpr::symbol(name.as_str()).pow(e)))
            }
            _ => self.error(&["a number", "`P0`", "a central symbol"]),
        }
    }
}

/// Parses a `--params` list such as `j=3/2,cutoff=10,mu=0.5`.
pub fn parse_params(src: &str) -> Result<Vec<(String, Rational)>, String> {
    let mut out: Vec<(String, Rational)> = Vec::new();
    for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("`{item}` is not of the form key=value"))?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("bad parameter name `{key}`"));
        }
        if out.iter().any(|(k, _)| k == key) {
            return Err(format!("`{key}` is listed twice"));
        }
        out.push((key.to_string(), parse_number(value.trim())?));
    }
    Ok(out)
}

fn parse_number(s: &str) -> Result<Rational, String> {
    let bad = || format!("bad number `{s}`");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let value = if let Some((n, d)) = body.split_once('/') {
        if !digits(n) || !digits(d) {
            return Err(bad());
        }
        let d: Rational = d.parse().map_err(|_| bad())?;
        if d == Rational::from_integer(0.into()) {
            return Err(format!("zero denominator in `{s}`"));
        }
        n.parse::<Rational>().map_err(|_| bad())? / d
    } else if let Some((w, f)) = body.split_once('.') {
        if !digits(w) || !digits(f) {
            return Err(bad());
        }
        parse_decimal(body)
    } else if digits(body) {
        body.parse().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    Ok(if neg { -value } else { value })
}

fn parse_decimal(s: &str) -> Rational {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: Rational = format!("{whole}{frac}").parse().expect("digits");
    let scale: Rational = format!("1{}", "0".repeat(frac.len())).parse().expect("digits");
    digits / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyalg::coeffring::rat;

    #[test]
    fn params_list() {
        let p = parse_params("j=3/2, cutoff=10,mu=0.25,s=-1").unwrap();
        assert_eq!(p[0], ("j".to_string(), rat(3, 2)));
        assert_eq!(p[1].1, rat(10, 1));
        assert_eq!(p[2].1, rat(1, 4));
        assert_eq!(p[3].1, rat(-1, 1));
        assert!(parse_params("j=1/0").is_err());
        assert!(parse_params("j").is_err());
        assert!(parse_params("j=1,j=2").is_err());
        assert!(parse_params("j=x").is_err());
    }

    #[test]
    fn algebra_definitions() {
        let p = parse("algebra su2 { phi = 2*P0; }").unwrap();
        match &p.statements[0].kind {
            StmtKind::Algebra { name, params, phi } => {
                assert_eq!(name, "su2");
                assert!(params.is_empty());
                assert_eq!(phi.to_string(), "2*P0");
            }
            other => panic!("{other:?}"),
        }
        let p = parse("algebra higgs(h,a) { phi = 4*h*P0^3 + 2*a*P0; }").unwrap();
        match &p.statements[0].kind {
            StmtKind::Algebra { params, phi, .. } => {
                assert_eq!(params, &["h", "a"]);
                assert_eq!(phi.to_string(), "4*h*P0^3 + 2*a*P0");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fusion_statement() {
        let p = parse("let c = fuse(J, su2, boson);").unwrap();
        assert_eq!(
            p.statements[0].kind,
            StmtKind::Let {
                name: "c".into(),
                expr: Expr::Fuse {
                    kind: FusionKind::J,
                    left: Box::new(Expr::Name("su2".into())),
                    right: Box::new(Expr::Name("boson".into())),
                }
            }
        );
    }

    #[test]
    fn double_caret_points_at_second_caret() {
        let err = parse("algebra x { phi = P0^^2; }").unwrap_err();
        match err {
            DslError::Syntax { pos, expected, found } => {
                assert_eq!(pos, Pos { line: 1, col: 22 });
                assert_eq!(expected, ["an unsigned integer exponent"]);
                assert_eq!(found, "`^`");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("P0^^2"), Err(DslError::Syntax { pos: Pos { line: 1, col: 4 }, .. })));
    }

    #[test]
    fn name_resolution_errors() {
        assert!(matches!(parse("show nothing;"), Err(DslError::UnknownIdent { .. })));
        assert!(matches!(
            parse("algebra x { phi = a*P0; }"),
            Err(DslError::UnknownIdent { pos: Pos { line: 1, col: 19 }, .. })
        ));
        let dup = parse("algebra x { phi = P0; }\nlet x = fuse(J, x, x);").unwrap_err();
        assert!(matches!(dup, DslError::Duplicate { pos: Pos { line: 2, col: 5 }, previous: Pos { line: 1, col: 9 }, .. }));
        // one shadowing definition of a builtin is allowed, a second is not
        assert!(parse("algebra su2 { phi = 2*P0; }").is_ok());
        assert!(matches!(
            parse("algebra su2 { phi = 2*P0; }\nalgebra su2 { phi = 2*P0; }"),
            Err(DslError::Duplicate { .. })
        ));
        assert!(matches!(parse("let fuse = su2;"), Err(DslError::Reserved { .. })));
    }

    #[test]
    fn expected_sets_are_reported() {
        match parse("let c = fuse(X, su2, boson);").unwrap_err() {
            DslError::Syntax { expected, .. } => assert_eq!(expected, ["`J`", "`K`"]),
            other => panic!("{other:?}"),
        }
        match parse("phi su2").unwrap_err() {
            DslError::Syntax { expected, found, .. } => {
                assert_eq!(expected, ["`;`"]);
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn numbers_and_central_values() {
        let p = parse("verify su2 with (j = 3/2, mu = 0.25, shift = -1);").unwrap();
        match &p.statements[0].kind {
            StmtKind::Verify { params, .. } => {
                assert_eq!(params[0].1, rat(3, 2));
                assert_eq!(params[1].1, rat(1, 4));
                assert_eq!(params[2].1, rat(-1, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("let s = recenter(su2, P0);"),
            Err(DslError::P0InCentral { .. })
        ));
        assert!(matches!(parse("algebra x { phi = 1/0; }"), Err(DslError::ZeroDenominator { .. })));
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse("# header\nalgebra   q(a)\n{ phi =\n a*P0^2  # inline\n - 1 ; }\n").unwrap();
        assert_eq!(p.statements.len(), 1);
        assert_eq!(p.statements[0].pos, Pos { line: 2, col: 1 });
    }
}
