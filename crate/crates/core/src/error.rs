use thiserror::Error;

use crate::coeffring::Symbol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown builtin algebra `{0}` (known: boson, su2, su11, higgs, quadratic)")]
    UnknownBuiltin(String),

    #[error("fusion failed: {0}")]
    Fusion(String),

    #[error("cyclic specialization: value for `{target}` mentions assigned symbol `{cycle}`")]
    CyclicAssignment { target: Symbol, cycle: Symbol },

    #[error("invalid representation parameter: {0}")]
    InvalidRep(String),

    #[error("tensor dimension {dim} exceeds limit {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("no numeric value assigned to central symbol(s): {}", join(.0))]
    MissingSymbols(Vec<Symbol>),
}

fn join(syms: &[Symbol]) -> String {
    syms.iter().map(Symbol::name).collect::<Vec<_>>().join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
