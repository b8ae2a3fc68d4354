use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Payoff of a play: the parity-losing payoff `Bottom`, or a vector of
/// per-component mean payoffs. `Bottom` is below every vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LexValue {
    Bottom,
    Vector(Vec<Rational>),
}

impl LexValue {
    pub fn zero(dim: usize) -> Self {
        LexValue::Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        LexValue::Vector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, LexValue::Bottom)
    }

    pub fn as_vector(&self) -> Option<&[Rational]> {
        match self {
            LexValue::Bottom => None,
            LexValue::Vector(v) => Some(v),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.as_vector().map(|v| v.len())
    }

    /// Component-wise difference of two vectors; `None` if either is bottom.
    pub fn sub(&self, other: &LexValue) -> Option<Vec<Rational>> {
        let (a, b) = (self.as_vector()?, other.as_vector()?);
        Some(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    /// Component-wise `self - eps`; bottom stays bottom.
    pub fn minus(&self, eps: &[Rational]) -> LexValue {
        match self {
            LexValue::Bottom => LexValue::Bottom,
            LexValue::Vector(v) => LexValue::Vector(v.iter().zip(eps).map(|(x, e)| x - e).collect()),
        }
    }

    /// Largest denominator over the components (1 for bottom).
    pub fn max_denominator(&self) -> BigInt {
        self.as_vector()
            .into_iter()
            .flatten()
            .map(|x| x.denom().clone())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

impl Ord for LexValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LexValue::Bottom, LexValue::Bottom) => Ordering::Equal,
            (LexValue::Bottom, _) => Ordering::Less,
            (_, LexValue::Bottom) => Ordering::Greater,
            (LexValue::Vector(a), LexValue::Vector(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison with bottom as the least element.
pub fn lex_compare(a: &LexValue, b: &LexValue) -> Result<Ordering> {
    if let (Some(x), Some(y)) = (a.dim(), b.dim()) {
        if x != y {
            return Err(Error::DimensionMismatch(x, y));
        }
    }
    Ok(a.cmp(b))
}

pub fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexValue::Bottom => f.write_str("bot"),
            LexValue::Vector(v) => f.write_str(&fmt_vector(v)),
        }
    }
}

/// Nearest rational with denominator at most `max_den`, provided it lies
/// strictly within `radius` of `x`. Distinct candidates are at least
/// `1/max_den^2` apart, so for a radius below half of that the answer is
/// unique.
pub fn snap_to_grid(x: &Rational, max_den: u64, radius: &Rational) -> Option<Rational> {
    let half = rat(1, 2);
    for q in 1..=max_den.max(1) {
        let q = BigInt::from(q);
        let scaled = x * Rational::from_integer(q.clone());
        let p = (scaled + &half).floor().to_integer();
        let cand = Rational::new(p, q);
        if (&cand - x).abs() < *radius {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[(i64, i64)]) -> LexValue {
        LexValue::Vector(xs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn compare_examples() {
        assert_eq!(lex_compare(&v(&[(1, 1), (1, 2)]), &v(&[(1, 2), (1, 1)])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&v(&[(2, 3)]), &v(&[(2, 3)])).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(&LexValue::Bottom, &LexValue::zero(2)).unwrap(), Ordering::Less);
        assert!(matches!(
            lex_compare(&LexValue::zero(1), &LexValue::zero(2)),
            Err(Error::DimensionMismatch(1, 2))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(v(&[(1, 1), (1, 2)]).to_string(), "(1,1/2)");
        assert_eq!(LexValue::Bottom.to_string(), "bot");
    }

    #[test]
    fn snapping() {
        let r = rat(1, 50);
        assert_eq!(snap_to_grid(&rat(333, 1000), 5, &r), Some(rat(1, 3)));
        assert_eq!(snap_to_grid(&rat(7, 1), 5, &r), Some(int(7)));
        assert_eq!(snap_to_grid(&rat(1, 7), 3, &r), None);
    }

    fn arb_value() -> impl Strategy<Value = LexValue> {
        prop_oneof![
            1 => Just(LexValue::Bottom),
            6 => proptest::collection::vec((0i64..5, 1i64..4), 2)
                .prop_map(|xs| LexValue::Vector(xs.into_iter().map(|(n, d)| rat(n, d)).collect())),
        ]
    }

    fn big(bytes: &[u8], neg: bool) -> BigInt {
        let b = BigInt::from_bytes_be(num::bigint::Sign::Plus, bytes);
        if neg { -b } else { b }
    }

    proptest! {
        #[test]
        fn total_order(a in arb_value(), b in arb_value(), c in arb_value()) {
            let ab = lex_compare(&a, &b).unwrap();
            prop_assert_eq!(ab.reverse(), lex_compare(&b, &a).unwrap());
            if ab == Ordering::Equal { prop_assert_eq!(&a, &b); }
            if a <= b && b <= c { prop_assert!(a <= c); }
        }

        #[test]
        fn exact_add_sub(
            an in proptest::collection::vec(any::<u8>(), 32), ad in proptest::collection::vec(any::<u8>(), 1..8),
            bn in proptest::collection::vec(any::<u8>(), 32), bd in proptest::collection::vec(any::<u8>(), 1..8),
            sa in any::<bool>(), sb in any::<bool>(),
        ) {
            let one = BigInt::one();
            let a = Rational::new(big(&an, sa), big(&ad, false) + &one);
            let b = Rational::new(big(&bn, sb), big(&bd, false) + &one);
            prop_assert_eq!((&a + &b) - &b, a.clone());
            prop_assert!(a.denom() >= &one);
        }
    }
}
