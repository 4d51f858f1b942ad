use thiserror::Error;

use crate::lexer::Pos;

#[derive(Debug, Error, PartialEq)]
pub enum DslError {
    #[error("{pos}: expected {}, found {found}", one_of(.expected))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: unknown identifier `{name}`")]
    UnknownIdent { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already defined at {previous}")]
    Duplicate { pos: Pos, name: String, previous: Pos },
    #[error("{pos}: `{name}` is listed twice")]
    DuplicateParam { pos: Pos, name: String },
    #[error("{pos}: `{name}` is reserved")]
    Reserved { pos: Pos, name: String },
    #[error("{pos}: P0 cannot appear in a central value")]
    P0InCentral { pos: Pos },
    #[error("{pos}: zero denominator")]
    ZeroDenominator { pos: Pos },
    #[error("{pos}: exponent too large")]
    ExponentTooLarge { pos: Pos },
    /// Failure while executing a statement that parsed.
    #[error("{pos}: {message}")]
    Run { pos: Pos, message: String },
}

impl DslError {
    pub fn pos(&self) -> Pos {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::UnknownIdent { pos, .. }
            | DslError::Duplicate { pos, .. }
            | DslError::DuplicateParam { pos, .. }
            | DslError::Reserved { pos, .. }
            | DslError::P0InCentral { pos }
            | DslError::ZeroDenominator { pos }
            | DslError::ExponentTooLarge { pos }
            | DslError::Run { pos, .. } => *pos,
        }
    }
}

fn one_of(expected: &[String]) -> String {
    match expected {
        [] => "nothing".to_string(),
        [one] => one.clone(),
        [init @ .., last] => format!("one of {}, {last}", init.join(", ")),
    }
}
