//! Exact rational scalars.
//!
//! Every quantity the solver touches is a [`Rational`]: a canonical `p/q`
//! with arbitrary-precision numerator and denominator. Arithmetic never
//! rounds, so results can be compared with `==` and printed reproducibly.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("malformed rational `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, RationalError> {
        if denom.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
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

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Lossy conversion, for plot output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_inner(&self) -> &BigRational {
        &self.0
    }
}

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn rat_parse(text: &str) -> Result<Rational, RationalError> {
    text.parse()
}

impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = || RationalError::Parse(text.to_string());
        let s = text.trim();
        if let Some((num, den)) = s.split_once('/') {
            let numer = parse_signed_digits(num).ok_or_else(malformed)?;
            if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let denom: BigInt = den.parse().map_err(|_| malformed())?;
            return Rational::from_bigints(numer, denom);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (negative, digits) = match int_part.as_bytes().first() {
                Some(b'-') => (true, &int_part[1..]),
                Some(b'+') => (false, &int_part[1..]),
                _ => (false, int_part),
            };
            let ok_int = digits.bytes().all(|b| b.is_ascii_digit());
            let ok_frac = frac_part.bytes().all(|b| b.is_ascii_digit());
            if !ok_int || !ok_frac || (digits.is_empty() && frac_part.is_empty()) {
                return Err(malformed());
            }
            let joined = format!("{digits}{frac_part}");
            let mut numer: BigInt = if joined.is_empty() {
                BigInt::zero()
            } else {
                joined.parse().map_err(|_| malformed())?
            };
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10), frac_part.len());
            return Rational::from_bigints(numer, denom);
        }
        let numer = parse_signed_digits(s).ok_or_else(malformed)?;
        Ok(Rational(BigRational::from_integer(numer)))
    }
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
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

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
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
// Panics on a zero divisor, like integer division; use `checked_div` where
// the divisor comes from input.
forward_binop!(Div, div);

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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Inner product of two equally long rational slices.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A rational or `+∞`. Used for right-unbounded parameter intervals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::PosInfinity => None,
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), PosInfinity) => Ordering::Less,
            (PosInfinity, Finite(_)) => Ordering::Greater,
            (PosInfinity, PosInfinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => write!(f, "{r}"),
            ExtendedRational::PosInfinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedRational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtendedRational::PosInfinity),
            other => other.parse().map(ExtendedRational::Finite),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the tests: `rat("3/4")`.
pub fn rat(text: &str) -> Rational {
    text.parse()
        .unwrap_or_else(|e| panic!("bad rational literal {text:?}: {e}"))
}

/// `rat` mapped over a slice of literals.
pub fn rats(texts: &[&str]) -> Vec<Rational> {
    texts.iter().map(|t| rat(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_reduces_fractions() {
        assert_eq!(rat_parse("3/6").unwrap(), Rational::new(1, 2));
        assert_eq!(rat_parse("-4/-8").ok(), None);
        assert_eq!(rat_parse("+7").unwrap(), Rational::from_integer(7));
    }

    #[test]
    fn parse_decimals() {
        assert_eq!(rat_parse("-0.25").unwrap(), Rational::new(-1, 4));
        assert_eq!(rat_parse("2.5").unwrap(), Rational::new(5, 2));
        assert_eq!(rat_parse(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(rat_parse("3.").unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(rat_parse("1/0"), Err(RationalError::DivisionByZero));
        for bad in [
            "", "abc", "1/", "/2", "1.2.3", "--1", "1/-2", "1e5", ".", "-",
        ] {
            assert!(
                matches!(rat_parse(bad), Err(RationalError::Parse(_))),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat("1/3") + rat("1/6"), rat("1/2"));
        assert_eq!(rat("1/2").checked_div(&rat("3/2")).unwrap(), rat("1/3"));
        assert_eq!(rat("1") - rat("2") * rat("2/3"), rat("-1/3"));
        assert_eq!(
            rat("1").checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_display() {
        assert_eq!(rat("-6/4").to_string(), "-3/2");
        assert_eq!(rat("10/5").to_string(), "2");
        assert_eq!(rat("0/7").to_string(), "0");
        assert_eq!(rat("-0.0").to_string(), "0");
    }

    #[test]
    fn infinity_orders_last() {
        let inf = ExtendedRational::PosInfinity;
        let big = ExtendedRational::Finite(rat("1000000000000000000000000"));
        assert!(inf > big);
        assert_eq!(inf.to_string(), "inf");
        assert_eq!("inf".parse::<ExtendedRational>().unwrap(), inf);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(p, q)| Rational::new(p, q))
    }

    proptest! {
        #[test]
        fn addition_associates(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        }

        #[test]
        fn multiplication_distributes(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn format_then_parse_is_identity(a in arb_rational()) {
            prop_assert_eq!(rat_parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn order_matches_cross_multiplication(a in arb_rational(), b in arb_rational()) {
            let lhs = a.numer() * b.denom();
            let rhs = b.numer() * a.denom();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        }

        #[test]
        fn canonical_after_ops(a in arb_rational(), b in arb_rational()) {
            let c = &a * &b - &a;
            prop_assert!(c.denom().is_positive());
            prop_assert!(num_integer::Integer::gcd(c.numer(), c.denom()).is_one());
        }
    }
}
