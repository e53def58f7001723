//! Divisor sums of quadratic polynomials `n^2 + 2bn + c`: exact values by
//! sieving, explicit upper bounds `C1 N log N + C2 N + C3`, and the character
//! sum estimates behind them.
//!
//! All logarithms are natural logarithms.

pub mod arith;
pub mod bounds;
pub mod character;
pub mod cli;
pub mod divisor_sum;
pub mod error;
pub mod quadratic;
pub mod rho;
pub mod table;

pub use error::{Error, Result};
