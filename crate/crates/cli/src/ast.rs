//! Syntax tree of the definition language and its pretty-printer.
//!
//! Printing is canonical: parsing the printed form gives back an equal tree,
//! and printing that tree again gives the same text.

use std::fmt;

use polyalg::coeffring::{CoeffExpr, P0Poly, Rational};
use polyalg::fusion::FusionKind;

use crate::lexer::Pos;

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

impl Program {
    /// Statement kinds without source positions, for structural comparison.
    pub fn kinds(&self) -> Vec<&StmtKind> {
        self.statements.iter().map(|s| &s.kind).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Algebra {
        name: String,
        params: Vec<String>,
        phi: P0Poly,
    },
    Let {
        name: String,
        expr: Expr,
    },
    Query {
        query: Query,
        target: Expr,
    },
    /// A bare expression; reported like `show`.
    Bare(Expr),
    Verify {
        target: Expr,
        params: Vec<(String, Rational)>,
    },
    Expect {
        target: Expr,
        phi: P0Poly,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Phi,
    G,
    Casimir,
    Order,
    Show,
}

impl Query {
    pub const ALL: [Query; 5] = [Query::Phi, Query::G, Query::Casimir, Query::Order, Query::Show];

    pub fn keyword(self) -> &'static str {
        match self {
            Query::Phi => "phi",
            Query::G => "g",
            Query::Casimir => "casimir",
            Query::Order => "order",
            Query::Show => "show",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Fuse {
        kind: FusionKind,
        left: Box<Expr>,
        right: Box<Expr>,
    },
    Specialize {
        target: Box<Expr>,
        assignments: Vec<(String, CoeffExpr)>,
    },
    Recenter {
        target: Box<Expr>,
        shift: CoeffExpr,
    },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Fuse { kind, left, right } => write!(f, "fuse({kind}, {left}, {right})"),
            Expr::Specialize {
                target,
                assignments,
            } => {
                write!(f, "specialize({target}")?;
                for (sym, value) in assignments {
                    write!(f, ", {sym} = {value}")?;
                }
                f.write_str(")")
            }
            Expr::Recenter { target, shift } => write!(f, "recenter({target}, {shift})"),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Algebra { name, params, phi } => {
                write!(f, "algebra {name}")?;
                if !params.is_empty() {
                    write!(f, "({})", params.join(", "))?;
                }
                write!(f, " {{\n    phi = {phi};\n}}")
            }
            StmtKind::Let { name, expr } => write!(f, "let {name} = {expr};"),
            StmtKind::Query { query, target } => write!(f, "{} {target};", query.keyword()),
            StmtKind::Bare(e) => write!(f, "{e};"),
            StmtKind::Verify { target, params } => {
                write!(f, "verify {target}")?;
                if !params.is_empty() {
                    f.write_str(" with (")?;
                    for (i, (k, v)) in params.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{k} = ")?;
                        write_rational(f, v)?;
                    }
                    f.write_str(")")?;
                }
                f.write_str(";")
            }
            StmtKind::Expect { target, phi } => write!(f, "expect {target} = {phi};"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
