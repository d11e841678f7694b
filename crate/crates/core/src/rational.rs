//! Exact rational numbers.
//!
//! [`Q`] wraps an arbitrary-precision [`BigRational`], always kept in lowest
//! terms with a positive denominator. It renders as `"p/q"` (bare `"p"` for
//! integers) and parses the same format back, which is also the serde
//! representation so JSON output never carries a float.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn zero() -> Self {
        Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Q(BigRational::one())
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Q(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Q(BigRational::from_integer(n))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Q(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Q::one();
        for _ in 0..exp {
            acc *= self;
        }
        acc
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q(BigRational::from_integer(n.into()))
    }
}

impl From<i32> for Q {
    fn from(n: i32) -> Self {
        Q::from(i64::from(n))
    }
}

impl From<BigInt> for Q {
    fn from(n: BigInt) -> Self {
        Q::from_bigint(n)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Self {
        Q(r)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as an exact rational (expected \"p\" or \"p/q\")")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<BigInt>().map(Q::from_bigint).map_err(|_| err()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Q(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                Q((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<i64> for Q {
            type Output = Q;
            fn $method(self, rhs: i64) -> Q {
                self.$method(Q::from(rhs))
            }
        }
        impl $trait<i64> for &Q {
            type Output = Q;
            fn $method(self, rhs: i64) -> Q {
                self.$method(Q::from(rhs))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, rhs: Q) {
        self.0 += rhs.0;
    }
}

impl SubAssign<Q> for Q {
    fn sub_assign(&mut self, rhs: Q) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Q {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && self.0.numer() == &BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Q {
    fn partial_cmp(&self, other: &i64) -> Option<std::cmp::Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_reduced() {
        assert_eq!(Q::new(6, 4).to_string(), "3/2");
        assert_eq!(Q::new(-6, 3).to_string(), "-2");
        assert_eq!(Q::new(3, -4).to_string(), "-3/4");
        assert_eq!(Q::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1/0".parse::<Q>().is_err());
        assert!("1.5".parse::<Q>().is_err());
        assert!("".parse::<Q>().is_err());
        assert_eq!("-10/4".parse::<Q>().unwrap(), Q::new(-5, 2));
    }

    #[test]
    fn ceil_floor() {
        assert_eq!(Q::new(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(Q::new(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(Q::from(5).ceil(), BigInt::from(5));
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..500) {
            let q = Q::new(n, d);
            prop_assert_eq!(q.to_string().parse::<Q>().unwrap(), q.clone());
            let json = serde_json::to_string(&q).unwrap();
            prop_assert_eq!(serde_json::from_str::<Q>(&json).unwrap(), q);
        }
    }
}
