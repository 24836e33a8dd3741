//! Probability scalars: exact rationals and log-space floats.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// One factor `p^e` or `(1 - p)^e` of a product.
#[derive(Clone, Debug)]
pub struct Factor<P> {
    pub p: P,
    pub complement: bool,
    pub exponent: u64,
}

impl<P> Factor<P> {
    pub fn p(p: P, exponent: u64) -> Self {
        Factor { p, complement: false, exponent }
    }

    pub fn q(p: P, exponent: u64) -> Self {
        Factor { p, complement: true, exponent }
    }
}

pub trait Probability:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when dividing by zero.
    fn div(&self, other: &Self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn is_exact() -> bool;

    /// `∏ factors`. Floats accumulate in log space with `ln_1p` for the
    /// complements so long products of near-one terms do not round away.
    fn product(factors: &[Factor<Self>]) -> Self;

    fn from_json(v: &Value) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn complement(&self) -> Self {
        Self::one().sub(self)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn in_unit_interval(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(it: I) -> Self {
        it.into_iter().fold(Self::zero(), |a, b| a.add(b))
    }
}

pub type Rational = BigRational;

/// Parses `"num/den"`, an integer string, or a JSON number into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            if let Ok(i) = s.parse::<BigInt>() {
                return Ok(BigRational::from_integer(i));
            }
            let f: f64 = s.parse().map_err(|_| bad())?;
            BigRational::from_float(f).ok_or_else(bad)
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Probability for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        true
    }

    fn product(factors: &[Factor<Self>]) -> Self {
        let mut acc = <BigRational as One>::one();
        for f in factors {
            if f.exponent == 0 {
                continue;
            }
            let base = if f.complement { <BigRational as One>::one() - &f.p } else { f.p.clone() };
            if Zero::is_zero(&base) {
                return <BigRational as Zero>::zero();
            }
            if One::is_one(&base) {
                continue;
            }
            let e = i32::try_from(f.exponent).expect("exact power exponent fits i32");
            acc *= base.pow(e);
        }
        acc
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("expected a probability, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= <BigRational as One>::one()
    }
}

impl Probability for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if *other == 0.0 {
            None
        } else {
            Some(self / other)
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }

    fn product(factors: &[Factor<Self>]) -> Self {
        let mut log = 0.0f64;
        for f in factors {
            if f.exponent == 0 {
                continue;
            }
            let ln = if f.complement { (-f.p).ln_1p() } else { f.p.ln() };
            if ln == f64::NEG_INFINITY {
                return 0.0;
            }
            log += f.exponent as f64 * ln;
        }
        log.exp()
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("not a float: {n}"))),
            Value::String(s) => Ok(Probability::to_f64(&parse_rational(s)?)),
            other => Err(Error::Parse(format!("expected a probability, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        serde_json::json!(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::from_ratio(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), BigRational::from_ratio(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::from_ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&BigRational::from_ratio(6, 4)), "3/2");
    }

    #[test]
    fn products_agree_across_scalars() {
        let exact = BigRational::product(&[
            Factor::p(BigRational::from_ratio(1, 2), 3),
            Factor::q(BigRational::from_ratio(1, 3), 2),
        ]);
        assert_eq!(exact, BigRational::from_ratio(4, 72));
        let float = f64::product(&[Factor::p(0.5, 3), Factor::q(1.0 / 3.0, 2)]);
        assert!((float - 4.0 / 72.0).abs() < 1e-15);
        assert_eq!(f64::product(&[Factor::q(1.0, 1)]), 0.0);
        assert_eq!(BigRational::product(&[Factor::q(<BigRational as One>::one(), 0)]), <BigRational as One>::one());
    }

    #[test]
    fn log_space_survives_underflow_prone_powers() {
        // (1 - 1e-12)^(1e12) ≈ e^{-1}; naive powf on the rounded base drifts.
        let v = f64::product(&[Factor::q(1e-12, 1_000_000_000_000)]);
        assert!((v - (-1.0f64).exp()).abs() < 1e-9);
    }
}
