//! Exact numeric types shared by the counters and the verification reports.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative arbitrary-precision count. Serializes as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Count(pub BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Natural logarithm, accurate for values far beyond the f64 range.
    pub fn ln(&self) -> f64 {
        ln_biguint(&self.0)
    }

    pub fn to_rat(&self) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(self.0.clone())))
    }
}

impl From<u128> for Count {
    fn from(v: u128) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigUint>()
            .map(Count)
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// An exact rational in canonical reduced form. Serializes as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn pow(&self, exp: u32) -> Rat {
        Rat(num_traits::Pow::pow(&self.0, exp))
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Rat) -> Option<Rat> {
        if other.is_zero() {
            None
        } else {
            Some(Rat(&self.0 / &other.0))
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Shift both sides down first so huge ratios keep their precision.
        let n = self.0.numer();
        let d = self.0.denom();
        let nb = n.bits() as i64;
        let db = d.bits() as i64;
        if nb < 1000 && db < 1000 {
            return n.to_f64().unwrap() / d.to_f64().unwrap();
        }
        let ns = (nb - 64).max(0) as u64;
        let ds = (db - 64).max(0) as u64;
        let nf = (n >> ns).to_f64().unwrap();
        let df = (d >> ds).to_f64().unwrap();
        (nf / df) * 2f64.powi((ns as i64 - ds as i64) as i32)
    }

    /// The exact rational value of a finite float.
    pub fn from_f64(v: f64) -> Option<Rat> {
        BigRational::from_float(v).map(Rat)
    }
}

impl From<&Count> for Rat {
    fn from(c: &Count) -> Self {
        c.to_rat()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad numerator in {s:?}"))?;
                let q: BigInt = q
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad denominator in {s:?}"))?;
                if q.is_zero() {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(Rat::new(p, q))
            }
            None => s
                .parse::<BigInt>()
                .map(Rat::integer)
                .map_err(|_| format!("not a rational: {s:?}")),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}
