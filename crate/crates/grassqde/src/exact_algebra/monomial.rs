use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A variable of the ambient ring. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u8),
    U(u8),
    Q,
    Eps,
    Z,
}

impl Var {
    pub fn x(i: usize) -> Var {
        Var::X(i as u8)
    }

    pub fn u(i: usize) -> Var {
        Var::U(i as u8)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::U(i) => write!(f, "u{i}"),
            Var::Q => write!(f, "q"),
            Var::Eps => write!(f, "eps"),
            Var::Z => write!(f, "z"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        match s {
            "q" => return Ok(Var::Q),
            "eps" => return Ok(Var::Eps),
            "z" => return Ok(Var::Z),
            _ => {}
        }
        let (head, idx) = s.split_at(1.min(s.len()));
        let idx: u8 = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match head {
            "x" => Ok(Var::X(idx)),
            "u" => Ok(Var::U(idx)),
            _ => Err(bad()),
        }
    }
}

/// A Laurent monomial: variables sorted ascending, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((v, e));
        }
        m
    }

    /// Builds a monomial from arbitrary (var, exp) pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Monomial {
        let mut v: SmallVec<[(Var, i32); 4]> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::new();
        for (var, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => out.push((var, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Var, i32)> {
        self.0.iter()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|p| p.1 > 0)
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|p| (p.0, sign * p.1)));
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|p| (p.0, -p.1)).collect())
    }

    pub fn pow(&self, e: i32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|p| (p.0, p.1 * e)).collect())
    }

    /// True when `other / self` has no negative exponent.
    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).0.iter().all(|p| p.1 > 0)
    }

    /// Componentwise minimum of exponents (missing variables count as 0).
    pub fn min_with(&self, other: &Monomial) -> Monomial {
        self.combine(other, i32::min)
    }

    pub fn max_with(&self, other: &Monomial) -> Monomial {
        self.combine(other, i32::max)
    }

    fn combine(&self, other: &Monomial, f: fn(i32, i32) -> i32) -> Monomial {
        let mut vars: Vec<Var> = self.0.iter().chain(other.0.iter()).map(|p| p.0).collect();
        vars.sort();
        vars.dedup();
        Monomial::from_pairs(
            vars.into_iter()
                .map(|v| (v, f(self.exponent(v), other.exponent(v)))),
        )
    }

    /// The part with negative exponents, negated: `m * neg_part(m)` is polynomial.
    pub fn negative_part(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|p| p.1 < 0)
                .map(|p| (p.0, -p.1))
                .collect(),
        )
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|p| p.0)
    }

    /// Drops variable `v`, returning its exponent.
    pub fn remove(&self, v: Var) -> (Monomial, i32) {
        let e = self.exponent(v);
        (Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect()), e)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(p), None) => return p.1.cmp(&0),
                (None, Some(p)) => return 0.cmp(&p.1),
                (Some(p), Some(r)) => match p.0.cmp(&r.0) {
                    Ordering::Less => return p.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&r.1),
                    Ordering::Equal => {
                        if p.1 != r.1 {
                            return p.1.cmp(&r.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// Graded lexicographic order with x1 > x2 > ... > u1 > ... > q > eps > z.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
