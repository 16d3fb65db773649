//! Exact scalars, sparse Laurent polynomials, rational functions, truncated
//! z-series and dense matrices over a pluggable field.

pub mod field;
pub mod json;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub type Rational = num::BigRational;

pub use field::{Complex64, Field};
pub use matrix::Matrix;
pub use monomial::{Monomial, Var};
pub use poly::{rat, ratio, MultiPoly};
pub use ratfunc::RatFunc;
pub use series::SeriesZ;

/// Binary operations on polynomials, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> crate::Result<MultiPoly> {
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::ExactDiv => a.exact_div(b)?,
    })
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: PolyOp) -> crate::Result<RatFunc> {
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::ExactDiv => a.div(b)?,
    })
}
