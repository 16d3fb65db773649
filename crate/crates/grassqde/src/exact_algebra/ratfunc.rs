use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use super::field::Field;
use super::monomial::{Monomial, Var};
use super::poly::MultiPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Rational function `num / den`.
///
/// Canonical form: a monomial denominator is folded into a Laurent numerator;
/// otherwise both sides are polynomials without a common monomial factor and
/// `den` is monic. A full gcd is taken when everything lives in one variable,
/// and trial division is attempted otherwise. Equality is decided by
/// cross-multiplication, so the reduction is only a size optimisation.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(canonical(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        canonical(p, MultiPoly::one())
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(v))
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn canonicalize(&self) -> RatFunc {
        canonical(self.num.clone(), self.den.clone())
    }

    pub fn eval<F: Field>(&self, value: &dyn Fn(Var) -> Option<F>) -> Result<F> {
        let d = F::eval_poly(&self.den, value)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = F::eval_poly(&self.num, value)?;
        n.div(&d)
    }

    pub fn specialize(&self, map: &dyn Fn(Var) -> Option<Rational>) -> Result<RatFunc> {
        let den = self.den.specialize(map)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        RatFunc::new(self.num.specialize(map)?, den)
    }

    pub fn substitute_monomials(
        &self,
        map: &dyn Fn(Var) -> Option<(Rational, Monomial)>,
    ) -> Result<RatFunc> {
        let den = self.den.substitute_monomials(map)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        RatFunc::new(self.num.substitute_monomials(map)?, den)
    }

    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

fn single_var(a: &MultiPoly, b: &MultiPoly) -> Option<Var> {
    let mut vs = a.vars();
    vs.extend(b.vars());
    if vs.len() == 1 {
        vs.into_iter().next()
    } else {
        None
    }
}

fn canonical(num: MultiPoly, den: MultiPoly) -> RatFunc {
    if num.is_zero() {
        return RatFunc { num, den: MultiPoly::one() };
    }
    if let Some((m, c)) = den.as_monomial() {
        let num = num.mul_monomial(&m.inverse()).scale(&c.recip());
        return RatFunc { num, den: MultiPoly::one() };
    }
    let shift = num.min_monomial().min_with(&den.min_monomial()).inverse();
    let mut num = num.mul_monomial(&shift);
    let mut den = den.mul_monomial(&shift);
    if let Some(v) = single_var(&num, &den) {
        if let (Some(a), Some(b)) = (num.to_dense(v), den.to_dense(v)) {
            let g = dense_gcd(&a, &b);
            if g.len() > 1 {
                let g = MultiPoly::from_dense(v, &g);
                num = num.exact_div(&g).expect("gcd divides numerator");
                den = den.exact_div(&g).expect("gcd divides denominator");
            }
        }
    } else if let Ok(q) = num.exact_div(&den) {
        num = q;
        den = MultiPoly::one();
    }
    if let Some((m, c)) = den.as_monomial() {
        let num = num.mul_monomial(&m.inverse()).scale(&c.recip());
        return RatFunc { num, den: MultiPoly::one() };
    }
    let lc = den.leading_coeff().recip();
    RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(num::Zero::is_zero) {
        v.pop();
    }
}

/// Monic gcd of dense univariate polynomials (coefficients ascending).
pub fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lc = b.last().unwrap().clone();
        for c in b.iter_mut() {
            *c /= &lc;
        }
        // a <- a mod b, with b monic
        while a.len() >= b.len() {
            let f = a.last().unwrap().clone();
            let off = a.len() - b.len();
            if !num::Zero::is_zero(&f) {
                for (i, c) in b.iter().enumerate() {
                    a[off + i] -= &f * c;
                }
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lc;
        }
    }
    a
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul_ref(&other.den) == other.num.mul_ref(&self.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        combine(self, o, false)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        combine(self, o, true)
    }
}

fn combine(a: &RatFunc, b: &RatFunc, negate: bool) -> RatFunc {
    let bn = if negate { -b.num.clone() } else { b.num.clone() };
    if a.den == b.den {
        return canonical(a.num.add_ref(&bn), a.den.clone());
    }
    if b.den.is_one() {
        return canonical(a.num.add_ref(&bn.mul_ref(&a.den)), a.den.clone());
    }
    if a.den.is_one() {
        return canonical(a.num.mul_ref(&b.den).add_ref(&bn), b.den.clone());
    }
    if let Some(v) = single_var(&a.den, &b.den) {
        if let (Some(da), Some(db)) = (a.den.to_dense(v), b.den.to_dense(v)) {
            let g = dense_gcd(&da, &db);
            if g.len() > 1 {
                let g = MultiPoly::from_dense(v, &g);
                let ca = b.den.exact_div(&g).expect("gcd divides");
                let cb = a.den.exact_div(&g).expect("gcd divides");
                let num = a.num.mul_ref(&ca).add_ref(&bn.mul_ref(&cb));
                return canonical(num, a.den.mul_ref(&ca));
            }
        }
    }
    let num = a.num.mul_ref(&b.den).add_ref(&bn.mul_ref(&a.den));
    canonical(num, a.den.mul_ref(&b.den))
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul_ref(&o.num), den: MultiPoly::one() };
        }
        canonical(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() }
    }
    fn one() -> Self {
        RatFunc { num: MultiPoly::one(), den: MultiPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn abs_value(&self) -> Option<f64> {
        None
    }
    fn is_exact() -> bool {
        true
    }

    fn eval_poly(p: &MultiPoly, value: &dyn Fn(Var) -> Option<Self>) -> Result<Self> {
        // Fast path: every assigned value is a Laurent monomial.
        let mut subs: Vec<(Var, Rational, Monomial)> = Vec::new();
        let mut monomial_only = true;
        for v in p.vars() {
            let val = value(v).ok_or_else(|| Error::Unassigned(v.to_string()))?;
            if val.num.is_zero() {
                subs.push((v, <Rational as num::Zero>::zero(), Monomial::one()));
                continue;
            }
            match (val.den.is_one(), val.num.as_monomial()) {
                (true, Some((m, c))) => subs.push((v, c.clone(), m.clone())),
                _ => {
                    monomial_only = false;
                    break;
                }
            }
        }
        if monomial_only {
            let out = p.substitute_monomials(&|v| {
                subs.iter()
                    .find(|s| s.0 == v)
                    .map(|s| (s.1.clone(), s.2.clone()))
            })?;
            return Ok(RatFunc::from_poly(out));
        }
        let mut acc = RatFunc::zero();
        let mut cache: Vec<(Var, RatFunc)> = Vec::new();
        for (m, c) in p.terms() {
            let mut t = RatFunc::constant(c.clone());
            for &(v, e) in m.iter() {
                let base = match cache.iter().find(|p| p.0 == v) {
                    Some(p) => p.1.clone(),
                    None => {
                        let b = value(v).ok_or_else(|| Error::Unassigned(v.to_string()))?;
                        cache.push((v, b.clone()));
                        b
                    }
                };
                t = &t * &base.powi(e as i64).map_err(|_| Error::PoleAtPoint)?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl One for RatFunc {
    fn one() -> Self {
        <RatFunc as Field>::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::poly::rat;

    fn v(var: Var) -> MultiPoly {
        MultiPoly::var(var)
    }

    #[test]
    fn additive_inverse() {
        let x = v(Var::x(1));
        let u = v(Var::u(1));
        let a = RatFunc::new(MultiPoly::one(), &x - &u).unwrap();
        let b = RatFunc::new(MultiPoly::one(), &u - &x).unwrap();
        assert!((a + b).is_zero());
    }

    #[test]
    fn reduces_by_trial_division() {
        let x = v(Var::x(1));
        let u = v(Var::u(1));
        let r = RatFunc::new(&x * &x - &u * &u, &x - &u).unwrap();
        assert!(r.is_poly());
        assert_eq!(r.num(), &(&x + &u));
    }

    #[test]
    fn monomial_cancellation() {
        let x = RatFunc::var(Var::x(1));
        let u = RatFunc::var(Var::u(1));
        let prod = x.div(&u).unwrap() * u.div(&x).unwrap();
        assert_eq!(prod, <RatFunc as Field>::one());
        assert!(prod.is_poly() && prod.num().is_one());
    }

    #[test]
    fn univariate_gcd() {
        let q = v(Var::Q);
        let one = MultiPoly::one();
        let a = (&one - &q) * (&one + &q);
        let b = (&one - &q) * (&q + &MultiPoly::int(3));
        let r = RatFunc::new(a, b).unwrap();
        assert_eq!(r.num().total_degree(), 1);
        assert_eq!(r.den(), &(&q + &MultiPoly::int(3)));
        assert_eq!(
            r.eval::<Rational>(&|_| Some(rat(1))).unwrap(),
            Rational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn pole_detection() {
        let x = v(Var::x(1));
        let u = v(Var::u(1));
        let r = RatFunc::new(&x + &u, &x - &u).unwrap();
        let at = |a: i64, b: i64| {
            move |var: Var| match var {
                Var::X(1) => Some(rat(a)),
                Var::U(1) => Some(rat(b)),
                _ => None,
            }
        };
        assert_eq!(r.eval::<Rational>(&at(3, 1)).unwrap(), rat(2));
        assert_eq!(r.eval::<Rational>(&at(3, 3)), Err(Error::PoleAtPoint));
    }
}
