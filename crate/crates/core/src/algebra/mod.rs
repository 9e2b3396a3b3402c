//! Exact Laurent polynomial arithmetic over the generators `x_i`, `x'_i`,
//! `Y_{i,r}` and `y_i`, together with the tropical semifield.

mod generator;
mod laurent;
mod monomial;
mod parse;
mod tropical;

pub use generator::Generator;
pub use laurent::{Coefficient, LaurentPolynomial};
pub use monomial::Monomial;
pub use parse::parse_monomial;
pub use tropical::{tropical_sum, TropicalElement};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("empty tropical sum")]
    EmptyTropicalSum,
    #[error("not a single monomial with coefficient 1")]
    NotSingleTerm,
    #[error("division is not exact")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot invert the image of {0}")]
    NonInvertibleSubstitution(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Laurent polynomial with arbitrary-precision coefficients.
pub type Poly = LaurentPolynomial<num_bigint::BigInt>;

pub fn x(i: u32) -> Generator {
    Generator::X(i)
}

pub fn xp(i: u32) -> Generator {
    Generator::XPrime(i)
}

pub fn fy(i: u32) -> Generator {
    Generator::FormalY(i)
}
