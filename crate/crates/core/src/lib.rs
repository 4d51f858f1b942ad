//! Exact symbolic kernel for three-dimensional polynomial algebras.
//!
//! * [`coeffring`]: rationals extended by commuting central symbols, and
//!   polynomials in `P0` over them.
//! * [`algebra`]: algebras, the g-function, Casimirs and normal-order rewriting.
//! * [`fusion`]: J-type and K-type fusion of two commuting algebras.
//! * [`matrixrep`]: finite matrix realizations and numeric residual checks.
//! * [`sweep`]: batch evaluation, parallel when the `parallel` feature is on.
//! * [`checks`]: the acceptance criteria as runnable checks.

pub mod algebra;
pub mod checks;
pub mod coeffring;
mod error;
pub mod fusion;
pub mod matrixrep;
pub mod random;
pub mod sweep;

pub use error::{Error, Result};
