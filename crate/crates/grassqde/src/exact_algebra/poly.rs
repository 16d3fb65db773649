use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::field;
use super::monomial::{Monomial, Var};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial over the rationals. Terms are kept sorted with
/// the leading (largest graded-lex) monomial first and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> MultiPoly {
        MultiPoly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> MultiPoly {
        MultiPoly::constant(rat(c))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Monomial::var(v), rat(1))
    }

    pub fn term(m: Monomial, c: Rational) -> MultiPoly {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> MultiPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        MultiPoly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> MultiPoly {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    fn from_sorted(terms: Vec<(Monomial, Rational)>) -> MultiPoly {
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(m.clone(), |acc, (m, _)| acc.min_with(m)),
        }
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly::from_sorted(self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        // multiplication by a monomial preserves the order
        MultiPoly::from_sorted(self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect())
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MultiPoly::from_sorted(out)
    }

    pub fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some((m, c)) = other.as_monomial() {
            return self.mul_monomial(m).scale(c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        MultiPoly::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MultiPoly>>(it: I) -> MultiPoly {
        it.into_iter().fold(MultiPoly::one(), |acc, p| acc.mul_ref(p))
    }

    /// Exact division in the Laurent ring. Fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero());
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Ok(self.mul_monomial(&m.inverse()).scale(&c.recip()));
        }
        // Reduce to polynomial division: strip the divisor's monomial content
        // and shift the dividend into the polynomial ring.
        let dm = divisor.min_monomial();
        let b = divisor.mul_monomial(&dm.inverse());
        let a = self.mul_monomial(&dm.inverse());
        let shift = a.min_monomial().min_with(&Monomial::one());
        let a = a.mul_monomial(&shift.inverse());
        let q = poly_divide(&a, &b)?;
        Ok(q.mul_monomial(&shift))
    }

    /// Substitutes each variable by `coef * monomial` (or leaves it if `None`).
    pub fn substitute_monomials(
        &self,
        map: &dyn Fn(Var) -> Option<(Rational, Monomial)>,
    ) -> Result<MultiPoly> {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut mono = Monomial::one();
            for &(v, e) in m.iter() {
                match map(v) {
                    None => mono = mono.mul(&Monomial::var_pow(v, e)),
                    Some((a, mv)) => {
                        if a.is_zero() {
                            if e < 0 {
                                return Err(Error::PoleAtPoint);
                            }
                            coef = Rational::zero();
                            break;
                        }
                        coef *= <Rational as field::Field>::powi(&a, e as i64)?;
                        mono = mono.mul(&mv.pow(e));
                    }
                }
            }
            if !coef.is_zero() {
                *acc.entry(mono).or_insert_with(Rational::zero) += coef;
            }
        }
        Ok(MultiPoly::from_map(acc))
    }

    /// Substitutes scalar values for some variables.
    pub fn specialize(&self, map: &dyn Fn(Var) -> Option<Rational>) -> Result<MultiPoly> {
        self.substitute_monomials(&|v| map(v).map(|c| (c, Monomial::one())))
    }

    pub fn rename(&self, map: &dyn Fn(Var) -> Var) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.iter().map(|&(v, e)| (map(v), e))), c.clone())),
        )
    }

    /// Substitutes a polynomial for a variable that appears with nonnegative exponents.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Result<MultiPoly> {
        let mut by_power: BTreeMap<i32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.remove(v);
            if e < 0 {
                return Err(Error::InvalidShape(format!("negative power of {v} in substitution")));
            }
            by_power.entry(e).or_default().push((rest, c.clone()));
        }
        let mut acc = MultiPoly::zero();
        let mut pw = MultiPoly::one();
        let mut cur = 0;
        for (e, ts) in by_power {
            while cur < e {
                pw = pw.mul_ref(value);
                cur += 1;
            }
            acc = acc.add_ref(&MultiPoly::from_terms(ts).mul_ref(&pw));
        }
        Ok(acc)
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                None
            } else {
                Some((m.div(&Monomial::var(v)), c * rat(e as i64)))
            }
        }))
    }

    pub fn eval<F: field::Field>(&self, value: &dyn Fn(Var) -> Option<F>) -> Result<F> {
        F::eval_poly(self, value)
    }

    /// Leading coefficient under the graded-lex order.
    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    /// Univariate dense coefficients (ascending) if the polynomial only involves `v`
    /// with nonnegative exponents.
    pub fn to_dense(&self, v: Var) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.remove(v);
            if !rest.is_one() || e < 0 {
                return None;
            }
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Rational::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    pub fn from_dense(v: Var, coeffs: &[Rational]) -> MultiPoly {
        MultiPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial::var_pow(v, e as i32), c.clone())),
        )
    }

    pub fn max_abs_coeff_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    }
}

/// Multivariate division with remainder; errors unless the remainder is zero.
fn poly_divide(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    let (lm, lc) = b.leading().cloned().ok_or(Error::ZeroDenominator)?;
    let mut rem: BTreeMap<Monomial, Rational> = a.terms.iter().cloned().collect();
    let mut quot: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        if !lm.divides(&m) {
            return Err(Error::DivisionNotExact);
        }
        let qm = m.div(&lm);
        let qc = &c / &lc;
        for (bm, bc) in b.terms.iter().skip(1) {
            let key = bm.mul(&qm);
            let delta = &qc * bc;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    Ok(MultiPoly::from_sorted(quot))
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: MultiPoly) -> MultiPoly {
        self.add_ref(&o)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        self.sub_ref(&o)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        self.mul_ref(&o)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.sub_ref(o)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.mul_ref(o)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::from_sorted(self.terms.into_iter().map(|(m, c)| (m, -c)).collect())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (m.is_one(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> MultiPoly {
        MultiPoly::var(Var::x(1))
    }
    fn u1() -> MultiPoly {
        MultiPoly::var(Var::u(1))
    }

    #[test]
    fn difference_of_squares() {
        let p = (x1() + u1()) * (x1() - u1());
        assert_eq!(p, x1() * x1() - u1() * u1());
        assert_eq!(p.exact_div(&(x1() - u1())).unwrap(), x1() + u1());
        assert_eq!((x1() + u1()).exact_div(&(x1() - u1())), Err(Error::DivisionNotExact));
    }

    #[test]
    fn laurent_division() {
        let inv = MultiPoly::term(Monomial::var_pow(Var::u(1), -1), rat(1));
        let a = (MultiPoly::one() - x1() * inv.clone()) * (x1() + u1() * u1());
        let q = a.exact_div(&(MultiPoly::one() - x1() * inv)).unwrap();
        assert_eq!(q, x1() + u1() * u1());
    }

    #[test]
    fn substitution_and_derivative() {
        let p = x1() * x1() * u1() + MultiPoly::int(3);
        let s = p.substitute(Var::x(1), &(u1() + MultiPoly::one())).unwrap();
        assert_eq!(s, (u1() + MultiPoly::one()).pow(2) * u1() + MultiPoly::int(3));
        assert_eq!(p.derivative(Var::x(1)), x1() * u1() * MultiPoly::int(2));
        let zeroed = p.specialize(&|v| (v == Var::u(1)).then(|| rat(0))).unwrap();
        assert_eq!(zeroed, MultiPoly::int(3));
    }

    #[test]
    fn dense_roundtrip() {
        let p = MultiPoly::from_dense(Var::Q, &[rat(1), rat(0), rat(-2)]);
        assert_eq!(p.to_dense(Var::Q).unwrap(), vec![rat(1), rat(0), rat(-2)]);
        assert!(x1().to_dense(Var::Q).is_none());
    }
}
