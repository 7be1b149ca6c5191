//! Exact scalars: arbitrary-precision rationals and the quadratic extension
//! `Q(sqrt(d))` for a single fixed rational discriminant `d`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction, always stored reduced with a positive denominator.
///
/// Text form is `p/q`, or `p` when the denominator is one.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

/// The four field operations, for callers that dispatch on an operator value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if the denominator is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Integer power; a negative exponent of zero is a division by zero.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let magnitude = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::InvalidParameter(format!("exponent {exp} too large")))?;
        let p = self.pow(magnitude);
        if exp < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// The rational square root, if there is one.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom())
            .then(|| Rational(BigRational::new(n, d)))
    }

    pub fn is_perfect_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }
}

pub fn rational_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
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

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let parse_int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("expected an integer or p/q"));
            }
            t.parse::<BigInt>().map_err(|e| fail(&e.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.sign() == Sign::NoSign {
                    return Err(fail("zero denominator"));
                }
                Ok(Rational(BigRational::new(parse_int(p)?, q)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_trait<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_trait<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

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

/// Shorthand for building rationals in formulas and tests: `rat(3)` or `rat((2, 3))`.
pub fn rat(value: impl IntoRational) -> Rational {
    value.into_rational()
}

pub trait IntoRational {
    fn into_rational(self) -> Rational;
}

impl IntoRational for i64 {
    fn into_rational(self) -> Rational {
        Rational::from(self)
    }
}

impl IntoRational for i32 {
    fn into_rational(self) -> Rational {
        Rational::from(self)
    }
}

impl IntoRational for (i64, i64) {
    /// Panics on a zero denominator.
    fn into_rational(self) -> Rational {
        Rational::new(self.0, self.1).expect("nonzero denominator")
    }
}

impl IntoRational for Rational {
    fn into_rational(self) -> Rational {
        self
    }
}

impl IntoRational for &Rational {
    fn into_rational(self) -> Rational {
        self.clone()
    }
}

/// `rat_part + surd_part * sqrt(discriminant)`.
///
/// When the discriminant is the square of a rational the surd is folded into
/// the rational part at construction, so `surd_part` is always zero there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rat_part: Rational,
    surd_part: Rational,
    discriminant: Rational,
}

impl QuadraticNumber {
    pub fn new(rat_part: Rational, surd_part: Rational, discriminant: Rational) -> Self {
        match discriminant.sqrt_exact() {
            Some(root) => QuadraticNumber {
                rat_part: rat_part + surd_part * root,
                surd_part: Rational::zero(),
                discriminant,
            },
            None => QuadraticNumber {
                rat_part,
                surd_part,
                discriminant,
            },
        }
    }

    pub fn from_rational(value: Rational, discriminant: &Rational) -> Self {
        QuadraticNumber::new(value, Rational::zero(), discriminant.clone())
    }

    /// `sqrt(discriminant)` itself.
    pub fn sqrt_of(discriminant: &Rational) -> Self {
        QuadraticNumber::new(Rational::zero(), Rational::one(), discriminant.clone())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat_part
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd_part
    }

    pub fn discriminant(&self) -> &Rational {
        &self.discriminant
    }

    pub fn is_zero(&self) -> bool {
        self.rat_part.is_zero() && self.surd_part.is_zero()
    }

    /// The rational value, when the surd part vanishes.
    pub fn is_rational(&self) -> Option<Rational> {
        self.surd_part.is_zero().then(|| self.rat_part.clone())
    }

    pub fn conj(&self) -> Self {
        QuadraticNumber {
            rat_part: self.rat_part.clone(),
            surd_part: -&self.surd_part,
            discriminant: self.discriminant.clone(),
        }
    }

    /// `p^2 - q^2 d`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.rat_part * &self.rat_part - &self.surd_part * &self.surd_part * &self.discriminant
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.discriminant != rhs.discriminant {
            return Err(Error::DiscriminantMismatch {
                left: self.discriminant.to_string(),
                right: rhs.discriminant.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadraticNumber {
            rat_part: &self.rat_part + &rhs.rat_part,
            surd_part: &self.surd_part + &rhs.surd_part,
            discriminant: self.discriminant.clone(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(QuadraticNumber {
            rat_part: &self.rat_part - &rhs.rat_part,
            surd_part: &self.surd_part - &rhs.surd_part,
            discriminant: self.discriminant.clone(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let (p1, q1) = (&self.rat_part, &self.surd_part);
        let (p2, q2) = (&rhs.rat_part, &rhs.surd_part);
        Ok(QuadraticNumber {
            rat_part: p1 * p2 + q1 * q2 * &self.discriminant,
            surd_part: p1 * q2 + p2 * q1,
            discriminant: self.discriminant.clone(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let norm = rhs.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.mul(&rhs.conj())?;
        Ok(QuadraticNumber {
            rat_part: num.rat_part.checked_div(&norm)?,
            surd_part: num.surd_part.checked_div(&norm)?,
            discriminant: self.discriminant.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            rat_part: -&self.rat_part,
            surd_part: -&self.surd_part,
            discriminant: self.discriminant.clone(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QuadraticNumber {
            rat_part: &self.rat_part * factor,
            surd_part: &self.surd_part * factor,
            discriminant: self.discriminant.clone(),
        }
    }

    pub fn add_rational(&self, value: &Rational) -> Self {
        QuadraticNumber {
            rat_part: &self.rat_part + value,
            surd_part: self.surd_part.clone(),
            discriminant: self.discriminant.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = QuadraticNumber::from_rational(Rational::one(), &self.discriminant);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same discriminant");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same discriminant");
            }
        }
        result
    }
}

pub fn quad_arith(
    a: &QuadraticNumber,
    b: &QuadraticNumber,
    op: ArithOp,
) -> Result<QuadraticNumber> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*sqrt({})",
            self.rat_part, self.surd_part, self.discriminant
        )
    }
}
