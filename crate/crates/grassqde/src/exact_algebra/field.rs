use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Complex, One, Signed, ToPrimitive, Zero};

use super::monomial::Var;
use super::poly::MultiPoly;
use super::Rational;
use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Scalar field used by the matrix, series and verification code.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    /// Absolute value for numeric fields, `None` for symbolic ones.
    fn abs_value(&self) -> Option<f64>;

    /// True when equality is decided exactly.
    fn is_exact() -> bool;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }

    /// Evaluates `p` with each variable mapped through `value`.
    fn eval_poly(p: &MultiPoly, value: &dyn Fn(Var) -> Option<Self>) -> Result<Self> {
        let mut cache: Vec<(Var, Self)> = Vec::new();
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            let mut t = Self::from_rational(c);
            for &(v, e) in m.iter() {
                let base = match cache.iter().find(|p| p.0 == v) {
                    Some(p) => p.1.clone(),
                    None => {
                        let b = value(v).ok_or_else(|| Error::Unassigned(v.to_string()))?;
                        cache.push((v, b.clone()));
                        b
                    }
                };
                let f = base.powi(e as i64).map_err(|_| Error::PoleAtPoint)?;
                t = t * f;
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::ZeroDenominator)
        } else {
            Ok(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn abs_value(&self) -> Option<f64> {
        self.abs().to_f64()
    }
    fn is_exact() -> bool {
        true
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::ZeroDenominator)
        } else {
            Ok(1.0 / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn abs_value(&self) -> Option<f64> {
        Some(self.abs())
    }
    fn is_exact() -> bool {
        false
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Result<Self> {
        if Field::is_zero(self) {
            Err(Error::ZeroDenominator)
        } else {
            Ok(Complex::new(1.0, 0.0) / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn abs_value(&self) -> Option<f64> {
        Some(self.norm())
    }
    fn is_exact() -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_negative() {
        let two = Rational::from_integer(2.into());
        assert_eq!(
            two.powi(-3).unwrap(),
            Rational::new(1.into(), 8.into())
        );
        assert_eq!(Field::powi(&2.0f64, 10).unwrap(), 1024.0);
        assert!(<Rational as Field>::zero().powi(-1).is_err());
    }
}
