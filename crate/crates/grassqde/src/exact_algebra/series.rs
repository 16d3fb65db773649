use super::field::Field;
use crate::error::{Error, Result};

/// Power series in z truncated after order D (coefficients `0..=D`).
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesZ<F> {
    coeffs: Vec<F>,
}

impl<F: Field> SeriesZ<F> {
    pub fn zero(order: usize) -> Self {
        SeriesZ { coeffs: vec![F::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = SeriesZ::zero(order);
        s.coeffs[0] = F::one();
        s
    }

    /// Builds from coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<F>, order: usize) -> Self {
        coeffs.resize(order + 1, F::zero());
        SeriesZ { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &F {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SeriesZ {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(SeriesZ {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.order();
        let mut out = vec![F::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(SeriesZ { coeffs: out })
    }

    /// The substitution z -> q z.
    pub fn qshift(&self, q: &F) -> Self {
        let mut pw = F::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.clone() * pw.clone());
            pw = pw * q.clone();
        }
        SeriesZ { coeffs }
    }

    /// The substitution z -> c z for a scalar c.
    pub fn rescale_z(&self, c: &F) -> Self {
        self.qshift(c)
    }

    /// Multiplies every coefficient by a z-independent scalar.
    pub fn scale_column(&self, c: &F) -> Self {
        SeriesZ { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SeriesZ<G> {
        SeriesZ { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{RatFunc, Var};

    fn s(c: &[i64], d: usize) -> SeriesZ<RatFunc> {
        SeriesZ::from_coeffs(c.iter().map(|&v| RatFunc::from_int(v)).collect(), d)
    }

    #[test]
    fn truncating_product() {
        let a = s(&[1, 1], 2);
        let b = s(&[1, -1], 2);
        assert_eq!(a.mul(&b).unwrap(), s(&[1, 0, -1], 2));
        assert_eq!(s(&[1, 1], 1).mul(&s(&[1, -1], 1)).unwrap(), s(&[1], 1));
        assert_eq!(a.mul(&s(&[1], 1)), Err(Error::TruncationMismatch(2, 1)));
    }

    #[test]
    fn qshift_definition() {
        let q = RatFunc::var(Var::Q);
        let shifted = s(&[1, 1, 1], 2).qshift(&q);
        assert_eq!(shifted.coeff(1), &q);
        assert_eq!(shifted.coeff(2), &(q.clone() * q));
    }
}
