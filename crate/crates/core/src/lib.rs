//! Exact arithmetic for higher Rademacher symbols on `SL(2, Z)`: Bernoulli
//! numbers and their congruences, general Dedekind sums, two-variable period
//! polynomials, several independent formulas for the symbols, and
//! verification sweeps that compare them.

pub mod arith;
pub mod dedekind;
pub mod error;
pub mod json;
pub mod modular;
pub mod period;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
