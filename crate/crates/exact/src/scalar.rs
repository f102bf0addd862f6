//! Scalar field abstraction.
//!
//! Every container in this crate is generic over a [`Scalar`]. The algorithms
//! (row reduction, kernels, zero tests on polynomial coefficients) assume the
//! scalar is an exact field; the workhorse instance is [`BigRational`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

use crate::ExactError;

/// An exact field element.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    /// Embeds a machine integer.
    fn from_i64(v: i64) -> Self;

    /// Magnitude of the numerator, used only to rank pivots and chart choices.
    fn numerator_magnitude(&self) -> u128;

    /// Canonical `"num/den"` text.
    fn to_text(&self) -> String;

    fn from_text(s: &str) -> Result<Self, ExactError>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn numerator_magnitude(&self) -> u128 {
        use num_traits::ToPrimitive;
        self.numer().abs().to_u128().unwrap_or(u128::MAX)
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> Result<Self, ExactError> {
        parse_ratio::<BigInt>(s)
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn numerator_magnitude(&self) -> u128 {
        self.numer().unsigned_abs() as u128
    }

    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn from_text(s: &str) -> Result<Self, ExactError> {
        parse_ratio::<i64>(s)
    }
}

fn parse_ratio<I>(s: &str) -> Result<Ratio<I>, ExactError>
where
    I: Clone + num_integer::Integer + std::str::FromStr,
{
    let bad = || ExactError::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: I = n.parse().map_err(|_| bad())?;
    let d: I = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(Ratio::new(n, d))
}

/// Shorthand for `Rational` construction in code and tests.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_canonical() {
        let q = rat(6, -4);
        assert_eq!(q.to_text(), "-3/2");
        assert_eq!(BigRational::from_text("-3/2").unwrap(), q);
        assert_eq!(BigRational::from_text("7").unwrap(), int(7));
        assert_eq!(int(7).to_text(), "7/1");
        assert!(BigRational::from_text("1/0").is_err());
        assert!(BigRational::from_text("x").is_err());
    }

    #[test]
    fn small_ratio_instance() {
        let q = Ratio::<i64>::from_text("4/6").unwrap();
        assert_eq!(q.to_text(), "2/3");
        assert_eq!(q.numerator_magnitude(), 2);
    }
}
