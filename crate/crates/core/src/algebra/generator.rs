use serde::{Deserialize, Serialize};
use std::fmt;

/// A variable of the ambient Laurent ring.
///
/// The derived order ranks kinds as `X < XPrime < Y < FormalY` and then
/// compares indices, which is the order used everywhere for monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// Mutable initial variable `x_i`.
    X(u32),
    /// Frozen variable `x'_i`.
    XPrime(u32),
    /// Loop-algebra variable `Y_{i,r}`.
    Y(u32, i32),
    /// Formal height variable `y_i` attached to a tile.
    FormalY(u32),
}

impl Generator {
    pub fn index(&self) -> u32 {
        match *self {
            Generator::X(i) | Generator::XPrime(i) | Generator::Y(i, _) | Generator::FormalY(i) => i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::X(i) => write!(f, "x{i}"),
            Generator::XPrime(i) => write!(f, "x'{i}"),
            Generator::Y(i, r) => write!(f, "Y[{i},{r}]"),
            Generator::FormalY(i) => write!(f, "y{i}"),
        }
    }
}
