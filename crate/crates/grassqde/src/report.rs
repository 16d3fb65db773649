//! Residual bookkeeping shared by the QDE and qde verifiers.

use serde::Serialize;

use crate::boxcomb::{KSubset, Partition};
use crate::error::Result;
use crate::exact_algebra::{Field, Matrix};

/// Outcome for one (lambda, order) pair, aggregated over fixed points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub lambda: Partition,
    pub order: usize,
    pub frames_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failing_frames: Vec<KSubset>,
}

/// Residual of `lhs - sum(terms)` at one fixed point. Numeric residuals are
/// relative to the largest of `floor`, `|lhs|` and the `|terms|`.
#[derive(Clone, Debug)]
pub struct PointResidual {
    pub zero: bool,
    pub relative: f64,
}

pub fn point_residual<F: Field>(lhs: &F, terms: &[F], floor: f64, tol: f64) -> PointResidual {
    let mut diff = lhs.clone();
    for t in terms {
        diff = diff - t.clone();
    }
    if F::is_exact() {
        let zero = diff.is_zero();
        return PointResidual { zero, relative: if zero { 0.0 } else { f64::INFINITY } };
    }
    let scale = terms
        .iter()
        .filter_map(|t| t.abs_value())
        .chain(lhs.abs_value())
        .fold(floor.max(1e-300), f64::max);
    let relative = diff.abs_value().unwrap_or(f64::INFINITY) / scale;
    PointResidual { zero: relative <= tol, relative }
}

/// Residuals of `factor(m) c_m[lam] = sum_mu M0[mu][lam] c_m[mu] + M1[mu][lam] c_{m-1}[mu]`
/// at one fixed point, where `cols[mu][m]` is the order-m coefficient of column mu.
/// Numeric residuals share one scale per order: the largest term of any equation.
pub fn frame_residuals<F: Field>(
    cols: &[Vec<F>],
    m0: &Matrix<F>,
    m1: &Matrix<F>,
    factor: &dyn Fn(usize) -> Result<F>,
    order: usize,
    tol: f64,
) -> Result<Vec<Vec<PointResidual>>> {
    let size = cols.len();
    let mut eqs: Vec<Vec<(F, Vec<F>)>> = Vec::with_capacity(size);
    for lam in 0..size {
        let mut row = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let lhs = factor(m)? * cols[lam][m].clone();
            let mut terms = Vec::new();
            for mu in 0..size {
                let a = m0.get(mu, lam);
                if !a.is_zero() {
                    terms.push(a.clone() * cols[mu][m].clone());
                }
                let b = m1.get(mu, lam);
                if m > 0 && !b.is_zero() {
                    terms.push(b.clone() * cols[mu][m - 1].clone());
                }
            }
            row.push((lhs, terms));
        }
        eqs.push(row);
    }
    let floor: Vec<f64> = (0..=order)
        .map(|m| {
            eqs.iter()
                .flat_map(|row| std::iter::once(&row[m].0).chain(&row[m].1))
                .filter_map(|v| v.abs_value())
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(eqs
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(m, (lhs, terms))| point_residual(lhs, terms, floor[m], tol))
                .collect()
        })
        .collect())
}

/// Transposes per-frame residual tables into one entry per (lambda, order).
pub fn collect_entries<F: Field>(
    parts: &[Partition],
    frames: &[KSubset],
    per_frame: &[Vec<Vec<PointResidual>>],
    order: usize,
) -> Vec<ResidualEntry> {
    let mut entries = Vec::new();
    for (li, lambda) in parts.iter().enumerate() {
        for m in 0..=order {
            let rs: Vec<(KSubset, PointResidual)> = frames
                .iter()
                .zip(per_frame)
                .map(|(r, res)| (r.clone(), res[li][m].clone()))
                .collect();
            entries.push(aggregate::<F>(lambda, m, &rs));
        }
    }
    entries
}

/// Folds per-frame residuals into one entry.
pub fn aggregate<F: Field>(
    lambda: &Partition,
    order: usize,
    per_frame: &[(KSubset, PointResidual)],
) -> ResidualEntry {
    let failing: Vec<KSubset> = per_frame
        .iter()
        .filter(|(_, r)| !r.zero)
        .map(|(f, _)| f.clone())
        .collect();
    let (exact_zero, max_residual) = if F::is_exact() {
        (Some(failing.is_empty()), None)
    } else {
        (None, Some(per_frame.iter().map(|(_, r)| r.relative).fold(0.0, f64::max)))
    };
    ResidualEntry {
        lambda: lambda.clone(),
        order,
        frames_checked: per_frame.len(),
        exact_zero,
        max_residual,
        failing_frames: failing,
    }
}

/// Full verification report for one (theory, k, n, D) run.
#[derive(Clone, Debug, Serialize)]
pub struct QdeReport {
    pub theory: crate::Theory,
    pub k: usize,
    pub n: usize,
    pub order: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub u: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    pub tolerance: Option<f64>,
    pub normalization: Vec<String>,
    pub entries: Vec<ResidualEntry>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    /// Present when the first point failed and a second point was tried.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rerun: Option<Box<QdeReport>>,
}

impl QdeReport {
    pub fn finish(mut self) -> QdeReport {
        self.pass = self
            .entries
            .iter()
            .all(|e| e.failing_frames.is_empty());
        self.max_residual = self
            .entries
            .iter()
            .filter_map(|e| e.max_residual)
            .reduce(f64::max);
        self
    }
}
