//! Exact rationals with a machine-word fast path.
//!
//! Almost every coefficient that shows up in the q-series of this crate is a
//! small integer or a fraction with a tiny denominator, so values are stored as
//! a reduced `i64` pair whenever they fit and only spill into [`BigRational`]
//! when an operation overflows. The representation is canonical: a value that
//! fits the small form is never stored as `Big`, which keeps derived equality
//! and hashing exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// numerator, denominator > 0, gcd = 1, numerator != i64::MIN
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// Arbitrary-precision exact rational number.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn fits_small(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_integer(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Repr::Small(n, 1))
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Self::zero();
        }
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d != 1 {
            let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        if fits_small(n) && fits_small(d) {
            Rational(Repr::Small(n as i64, d as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))))
        }
    }

    /// Wraps an already reduced big rational, demoting it when it fits.
    pub fn from_big(value: BigRational) -> Self {
        if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new(value)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("reciprocal of zero"),
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    /// Integer power; negative exponents invert. Panics for `0^negative`.
    pub fn pow(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.recip() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Rational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &rn * &rn == n && &rd * &rd == d {
            Some(Self::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Floor as a big integer.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_euclid(*d)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    /// `self += a * b`, the inner step of every convolution.
    pub fn add_mul(&mut self, a: &Rational, b: &Rational) {
        if let (Repr::Small(s, 1), Repr::Small(x, 1), Repr::Small(y, 1)) = (&self.0, &a.0, &b.0) {
            let v = *s as i128 + (*x as i128) * (*y as i128);
            if fits_small(v) {
                self.0 = Repr::Small(v as i64, 1);
                return;
            }
        }
        let prod = a * b;
        *self += &prod;
    }
}

fn big_add(a: &Rational, b: &Rational) -> Rational {
    Rational::from_big(a.to_big() + b.to_big())
}

fn big_mul(a: &Rational, b: &Rational) -> Rational {
    Rational::from_big(a.to_big() * b.to_big())
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(v) if v != i64::MIN => Rational(Repr::Small(v, 1)),
                _ => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => big_add(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(v) if v != i64::MIN => Rational(Repr::Small(v, 1)),
                _ => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => big_mul(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => b.hash(state),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
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

/// Shorthand for `Rational::new`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_is_canonical() {
        assert_eq!(rat(0, 5), Rational::zero());
        assert_eq!(rat(0, -3).to_string(), "0");
        assert_eq!(rat(3, -6), rat(-1, 2));
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = Rational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        let m = Rational::from_integer(i64::MIN);
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(rat(-2, 3).to_string(), "-2/3");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!("-2/3".parse::<Rational>().unwrap(), rat(-2, 3));
        assert_eq!("7".parse::<Rational>().unwrap(), rat(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rat(9, 4).sqrt_exact(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt_exact(), None);
        assert_eq!(rat(-1, 1).sqrt_exact(), None);
    }

    #[test]
    fn powers() {
        assert_eq!(rat(-2, 3).pow(3), rat(-8, 27));
        assert_eq!(rat(-2, 3).pow(-2), rat(9, 4));
        assert_eq!(rat(5, 7).pow(0), Rational::one());
    }

    fn arb() -> impl Strategy<Value = Rational> {
        prop_oneof![
            (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| rat(n, d)),
        ]
    }

    proptest! {
        #[test]
        fn agrees_with_big_rational(a in arb(), b in arb()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
            let mut c = a.clone();
            c.add_mul(&a, &b);
            prop_assert_eq!(c.to_big(), a.to_big() + a.to_big() * b.to_big());
        }
    }
}
