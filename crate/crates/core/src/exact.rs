//! Exact rational arithmetic and the rounding functions built on it.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator, so `==` is structural. The
//! helpers [`sawtooth`], [`floor_int`], [`nearest_int`] and [`frac`] are the
//! only rounding primitives the rest of the crate uses.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number `p/q` with `q > 0` and `gcd(|p|, q) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing immediately.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    /// The integer value, if this rational is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// True iff the value is an integer divisible by `modulus`.
    pub fn is_integer_multiple_of(&self, modulus: u64) -> bool {
        self.is_integer() && (self.numer() % BigInt::from(modulus)).is_zero()
    }

    /// Decimal rendering for display only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        frac(x) - Rational::half()
    }
}

/// Greatest integer `<= x`.
pub fn floor_int(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `floor(x + 1/2)`; half-integers round up.
pub fn nearest_int(x: &Rational) -> BigInt {
    // floor((2p + q) / 2q)
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * two))
}

/// `x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    Rational::new(x.numer().mod_floor(x.denom()), x.denom().clone())
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with `q != 0`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = p.parse().map_err(|_| bad())?;
        let denom: BigInt = q.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(numer, denom))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

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

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&r(0, 1)), r(0, 1));
        assert_eq!(sawtooth(&r(1, 4)), r(-1, 4));
        assert_eq!(sawtooth(&r(7, 3)), r(-1, 6));
        // half-integers are not special-cased
        assert_eq!(sawtooth(&r(1, 2)), r(0, 1));
        assert_eq!(sawtooth(&r(-1, 3)), r(1, 6));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_int(&r(5, 2)), BigInt::from(2));
        assert_eq!(floor_int(&r(-1, 2)), BigInt::from(-1));
        assert_eq!(floor_int(&r(3, 1)), BigInt::from(3));
        assert_eq!(floor_int(&r(-6, 3)), BigInt::from(-2));
    }

    #[test]
    fn nearest_examples() {
        assert_eq!(nearest_int(&r(3, 2)), BigInt::from(2));
        assert_eq!(nearest_int(&r(11, 10)), BigInt::from(1));
        assert_eq!(nearest_int(&r(-1, 4)), BigInt::from(0));
        assert_eq!(nearest_int(&r(-1, 2)), BigInt::from(0));
        assert_eq!(nearest_int(&r(-3, 4)), BigInt::from(-1));
    }

    #[test]
    fn frac_examples() {
        assert_eq!(frac(&r(3, 2)), r(1, 2));
        assert_eq!(frac(&r(-1, 30)), r(29, 30));
        assert_eq!(frac(&r(2, 1)), r(0, 1));
    }

    #[test]
    fn construction_reduces() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x, r(-3, 2));
    }

    #[test]
    fn string_form() {
        assert_eq!(r(-6, 4).to_string(), "-3/2");
        assert_eq!(r(8, 1).to_string(), "8");
        assert_eq!("10/-4".parse::<Rational>().unwrap(), r(-5, 2));
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), r(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        let json = serde_json::to_string(&r(269, 45)).unwrap();
        assert_eq!(json, "\"269/45\"");
        assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r(269, 45));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| Rational::new(p, q))
    }

    proptest! {
        #[test]
        fn sawtooth_odd_periodic_bounded(x in small_rational()) {
            prop_assert_eq!(sawtooth(&-&x), -sawtooth(&x));
            prop_assert_eq!(sawtooth(&(&x + Rational::one())), sawtooth(&x));
            prop_assert!(sawtooth(&x).abs() < Rational::half());
        }

        #[test]
        fn floor_brackets(x in small_rational()) {
            let f = Rational::from(floor_int(&x));
            prop_assert!(f <= x);
            prop_assert!(x < &f + Rational::one());
            prop_assert_eq!(frac(&x), &x - &f);
        }

        #[test]
        fn stored_form_is_canonical(p in -1_000_000i64..1_000_000, q in -1000i64..1000) {
            prop_assume!(q != 0);
            let x = Rational::new(p, q);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
            // p/q == numer/denom by cross-multiplication
            prop_assert_eq!(BigInt::from(p) * x.denom(), x.numer() * BigInt::from(q));
        }

        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn addition_matches_cross_multiplication(
            p1 in -100_000i64..100_000, q1 in 1i64..10_000,
            p2 in -100_000i64..100_000, q2 in 1i64..10_000,
        ) {
            let s = Rational::new(p1, q1) + Rational::new(p2, q2);
            let num = BigInt::from(p1) * q2 + BigInt::from(p2) * q1;
            let den = BigInt::from(q1) * q2;
            prop_assert_eq!(s.numer() * &den, num * s.denom());
        }
    }
}
