//! Exact scalar coefficients.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// Coefficient field for every algebraic container in the crate.
///
/// Any exact field type from the `num` family qualifies, e.g. `BigRational`
/// or `Rational64` for small hand-checked computations.
pub trait Scalar:
    Num
    + Neg<Output = Self>
    + Clone
    + Eq
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn frac(n: i64, d: i64) -> Self {
        Self::int(n) / Self::int(d)
    }

    fn from_ratio64(r: &num_rational::Rational64) -> Self {
        Self::frac(*r.numer(), *r.denom())
    }
}

impl<T> Scalar for T where
    T: Num
        + Neg<Output = T>
        + Clone
        + Eq
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Build a big rational from an integer.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Build a big rational from a fraction.
pub fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `a`, `-a`, `a/b`; surrounding whitespace is ignored.
pub fn parse_q(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

/// Greatest common divisor of the numerators of `xs` (zero if all are zero).
pub fn numerator_gcd<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x.numer());
    }
    g.abs()
}
