//! JSON encoding: a polynomial is `{"terms": [[{"x1": 2, "u3": -1}, "num", "den"], ...]}`,
//! a rational function is `{"num": <poly>, "den": <poly>}`.

use std::collections::BTreeMap;

use num::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Monomial, Var};
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<(BTreeMap<String, i32>, String, String)>,
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: MultiPoly,
    den: MultiPoly,
}

fn to_repr(p: &MultiPoly) -> PolyRepr {
    PolyRepr {
        terms: p
            .terms()
            .iter()
            .map(|(m, c)| {
                let exps = m.iter().map(|(v, e)| (v.to_string(), *e)).collect();
                (exps, c.numer().to_string(), c.denom().to_string())
            })
            .collect(),
    }
}

fn from_repr(r: PolyRepr) -> Result<MultiPoly> {
    let mut terms = Vec::with_capacity(r.terms.len());
    for (exps, n, d) in r.terms {
        let mut pairs = Vec::with_capacity(exps.len());
        for (name, e) in exps {
            pairs.push((name.parse::<Var>()?, e));
        }
        let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad integer {n:?}")))?;
        let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad integer {d:?}")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse("zero denominator in coefficient".into()));
        }
        terms.push((Monomial::from_pairs(pairs), Rational::new(n, d)));
    }
    Ok(MultiPoly::from_terms(terms))
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_repr(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        from_repr(r).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr { num: self.num().clone(), den: self.den().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}
