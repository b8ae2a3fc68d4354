//! Lexicographic mean-payoff games.

mod cycle;
mod iteration;
mod scalarize;
mod solve;

use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, ToPrimitive, Zero};

pub use cycle::{extreme_mean_cycle, per_state_extreme, scc_extreme, Mode};
pub use iteration::mp_value;
pub use scalarize::{scalarize, scalarize_with_bound, ScalarizedGame};
pub use solve::{best_response_value, lex_mp_solve, LexMpSolution};

/// Integer arithmetic used by the numeric kernels: `i128` when the
/// magnitudes provably fit, `BigInt` otherwise.
pub(crate) trait Int:
    Clone + Ord + std::fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(x: i64) -> Self;
    fn from_big(x: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn from_big(x: &BigInt) -> Self {
        x.to_i128().expect("magnitude checked before choosing i128")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn from_big(x: &BigInt) -> Self {
        x.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Number of bits needed for `x` in absolute value.
pub(crate) fn bits(x: &BigInt) -> u64 {
    x.bits()
}

