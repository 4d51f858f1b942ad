//! Definition language for polynomial algebras: lexer, parser, interpreter
//! and output formats, plus the embedded example corpus.

pub mod ast;
pub mod corpus;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod render;
pub mod run;
pub mod selftest;

pub use error::DslError;
pub use parser::parse;
