//! Exact rational arithmetic extended by an infinitesimal tilt.
//!
//! Every quantity in this crate is an exact rational; there is no floating
//! point anywhere on a computation path. Ratios that ought to be irrational
//! (an ellipsoid's axis ratio, an elliptic rotation number) are modelled by a
//! [`PerturbedRational`]: an exact value plus a sign telling on which side of
//! the value the "true" irrational number sits. All floors and comparisons
//! then behave exactly as they would for `value ± ε` with `ε` infinitesimal.
//!
//! ```
//! use ech_core::exact::{PerturbedRational, Rational, Tilt};
//!
//! let r = PerturbedRational::new(Rational::new(3, 2), Tilt::Minus);
//! // floor(2 * (3/2 - eps)) = floor(3 - eps) = 2
//! assert_eq!(r.floor_multiple(2).unwrap(), 2.into());
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Errors from tilt-sensitive operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// `k * value` landed exactly on an integer while the tilt is `0`, so the
    /// floor is genuinely ambiguous. The caller must pick a tilt.
    #[error("floor(k*value) is ambiguous at k = {k}: k*value = {product} is an integer and the tilt is 0")]
    DegenerateRatio { k: u64, product: BigInt },
    /// Reciprocal of zero requested.
    #[error("reciprocal of zero")]
    ZeroValue,
}

/// Failure to parse a rational from its `p/q` text form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}`: expected `p` or `p/q` with a positive denominator")]
pub struct ParseRationalError(pub String);

/// An exact rational number, always in lowest terms with positive denominator.
///
/// Arithmetic and comparison are exact. Values print as `p/q`, or `p` when the
/// denominator is 1, and parse from the same form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "denominator must be nonzero");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Builds `numer/denom` from big integers. Panics if `denom` is zero.
    pub fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "denominator must be nonzero");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero; fallible call sites go through
    /// [`PerturbedRational::reciprocal`].
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Nearest `f64`, for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Mul<u64> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: u64) -> Rational {
        Rational(&self.0 * BigInt::from(rhs))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        if !s.is_ascii() || s.chars().any(char::is_whitespace) {
            return Err(err());
        }
        let (numer_str, denom_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer: BigInt = numer_str.parse().map_err(|_| err())?;
        let denom: BigInt = match denom_str {
            // Denominators are unsigned: "3/-2" is not a valid spelling.
            Some(d) => {
                if d.starts_with(['+', '-']) {
                    return Err(err());
                }
                d.parse().map_err(|_| err())?
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sign of the infinitesimal perturbation attached to a rational value.
///
/// `Minus < Zero < Plus`, matching the order of `value - ε < value < value + ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tilt {
    Minus,
    Zero,
    Plus,
}

impl Tilt {
    /// The tilt of `1/(value + tilt·ε)`: reciprocation reverses order, so the
    /// perturbation changes side.
    pub fn flip(self) -> Tilt {
        match self {
            Tilt::Plus => Tilt::Minus,
            Tilt::Zero => Tilt::Zero,
            Tilt::Minus => Tilt::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tilt::Plus => "+",
            Tilt::Zero => "0",
            Tilt::Minus => "-",
        }
    }
}

impl fmt::Display for Tilt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tilt {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Tilt::Plus),
            "-" => Ok(Tilt::Minus),
            "0" => Ok(Tilt::Zero),
            _ => Err(ParseRationalError(s.to_string())),
        }
    }
}

impl Serialize for Tilt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// An exact rational plus an infinitesimal tilt, representing `value + tilt·ε`.
///
/// The total order compares by value first and breaks ties by tilt, which is
/// precisely the limiting order of `value ± ε`. A nonzero tilt makes every
/// `floor_multiple` unambiguous, simulating an irrational value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PerturbedRational {
    value: Rational,
    tilt: Tilt,
}

impl PerturbedRational {
    pub fn new(value: Rational, tilt: Tilt) -> Self {
        PerturbedRational { value, tilt }
    }

    /// An unperturbed value (tilt `0`).
    pub fn exact(value: Rational) -> Self {
        PerturbedRational {
            value,
            tilt: Tilt::Zero,
        }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn tilt(&self) -> Tilt {
        self.tilt
    }

    /// `floor(k * (value + tilt·ε))` for a positive integer `k`.
    ///
    /// When `k*value` is not an integer the tilt is irrelevant. When it is an
    /// integer `n`, the result is `n` for tilt `+` and `n - 1` for tilt `-`;
    /// tilt `0` is an error because the floor is genuinely ambiguous there.
    pub fn floor_multiple(&self, k: u64) -> Result<BigInt, ExactError> {
        assert!(k >= 1, "k must be a positive integer");
        let scaled = &self.value.0 * BigInt::from(k);
        if scaled.is_integer() {
            let n = scaled.to_integer();
            match self.tilt {
                Tilt::Plus => Ok(n),
                Tilt::Minus => Ok(n - 1),
                Tilt::Zero => Err(ExactError::DegenerateRatio { k, product: n }),
            }
        } else {
            Ok(scaled.floor().to_integer())
        }
    }

    /// `1/(value + tilt·ε) = 1/value - tilt·ε'`: the order-reversing
    /// involution on nonzero perturbed rationals.
    pub fn reciprocal(&self) -> Result<PerturbedRational, ExactError> {
        if self.value.is_zero() {
            return Err(ExactError::ZeroValue);
        }
        Ok(PerturbedRational {
            value: self.value.recip(),
            tilt: self.tilt.flip(),
        })
    }

    /// Compares against an unperturbed rational.
    pub fn cmp_value(&self, rhs: &Rational) -> Ordering {
        self.value
            .cmp(rhs)
            .then_with(|| self.tilt.cmp(&Tilt::Zero))
    }
}

impl fmt::Display for PerturbedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tilt {
            Tilt::Zero => write!(f, "{}", self.value),
            Tilt::Plus => write!(f, "{}+", self.value),
            Tilt::Minus => write!(f, "{}-", self.value),
        }
    }
}

impl fmt::Debug for PerturbedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: i64, d: i64, t: Tilt) -> PerturbedRational {
        PerturbedRational::new(Rational::new(n, d), t)
    }

    #[test]
    fn floor_multiple_breaks_integer_ties_by_tilt() {
        assert_eq!(pr(3, 2, Tilt::Plus).floor_multiple(2).unwrap(), 3.into());
        assert_eq!(pr(3, 2, Tilt::Minus).floor_multiple(2).unwrap(), 2.into());
        // 2 * 5/3 = 10/3 is not an integer, so the tilt is irrelevant.
        assert_eq!(pr(5, 3, Tilt::Minus).floor_multiple(2).unwrap(), 3.into());
        assert_eq!(pr(5, 3, Tilt::Plus).floor_multiple(2).unwrap(), 3.into());
    }

    #[test]
    fn floor_multiple_rejects_zero_tilt_at_integers() {
        let err = pr(3, 2, Tilt::Zero).floor_multiple(2).unwrap_err();
        assert_eq!(
            err,
            ExactError::DegenerateRatio {
                k: 2,
                product: 3.into()
            }
        );
        // Off the integers, tilt 0 is fine.
        assert_eq!(pr(3, 2, Tilt::Zero).floor_multiple(3).unwrap(), 4.into());
    }

    #[test]
    fn floor_multiple_negative_values() {
        // floor(1 * (-3/2)) = -2 regardless of tilt.
        assert_eq!(pr(-3, 2, Tilt::Plus).floor_multiple(1).unwrap(), (-2).into());
        // floor(2 * (-3/2 - eps)) = floor(-3 - eps) = -4.
        assert_eq!(pr(-3, 2, Tilt::Minus).floor_multiple(2).unwrap(), (-4).into());
    }

    #[test]
    fn reciprocal_flips_the_tilt() {
        let r = pr(3, 2, Tilt::Plus).reciprocal().unwrap();
        assert_eq!(r, pr(2, 3, Tilt::Minus));
        let r = pr(1, 1, Tilt::Minus).reciprocal().unwrap();
        assert_eq!(r, pr(1, 1, Tilt::Plus));
        let r = pr(5, 1, Tilt::Zero).reciprocal().unwrap();
        assert_eq!(r, pr(1, 5, Tilt::Zero));
        assert_eq!(
            pr(0, 1, Tilt::Plus).reciprocal().unwrap_err(),
            ExactError::ZeroValue
        );
    }

    #[test]
    fn total_order_breaks_ties_by_tilt() {
        assert!(pr(1, 2, Tilt::Minus) < pr(1, 2, Tilt::Zero));
        assert!(pr(1, 2, Tilt::Zero) < pr(1, 2, Tilt::Plus));
        assert!(pr(1, 2, Tilt::Plus) < pr(2, 3, Tilt::Minus));
        assert_eq!(pr(1, 2, Tilt::Plus).cmp_value(&Rational::new(1, 2)), Ordering::Greater);
        assert_eq!(pr(1, 2, Tilt::Minus).cmp_value(&Rational::new(1, 2)), Ordering::Less);
        assert_eq!(
            PerturbedRational::exact(Rational::new(1, 2)).cmp_value(&Rational::new(1, 2)),
            Ordering::Equal
        );
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-7", "3/2", "-3/2", "22/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Reduction and integer collapse on the way in.
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert_eq!("4/2".parse::<Rational>().unwrap().to_string(), "2");
        for bad in ["", "1/0", "3/-2", "1 /2", "a", "1.5", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(&a - &b, Rational::new(1, 6));
        assert_eq!(&a * &b, Rational::new(1, 18));
        assert_eq!(&a / &b, Rational::new(2, 1));
        assert_eq!(-&a, Rational::new(-1, 3));
        assert_eq!(&a * 6u64, Rational::new(2, 1));
        assert_eq!(Rational::new(7, 2).floor_int(), 3.into());
        assert_eq!(Rational::new(-7, 2).floor_int(), (-4).into());
        assert_eq!(Rational::new(7, 2).ceil_int(), 4.into());
    }

    #[test]
    fn tilt_prints_and_parses() {
        assert_eq!(Tilt::Plus.to_string(), "+");
        assert_eq!(Tilt::Minus.to_string(), "-");
        assert_eq!(Tilt::Zero.to_string(), "0");
        assert_eq!("+".parse::<Tilt>().unwrap(), Tilt::Plus);
        assert_eq!("-".parse::<Tilt>().unwrap(), Tilt::Minus);
        assert!("plus".parse::<Tilt>().is_err());
    }
}
