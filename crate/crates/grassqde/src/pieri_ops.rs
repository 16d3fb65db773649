//! Quantum Pieri operators in the Schubert basis and the polynomial Pieri
//! identities behind them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::boxcomb::{
    enumerate_partitions, hat_bar, nu_a, partition_to_subset, rook_strip_successors, Partition,
};
use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Field, Matrix, Monomial, MultiPoly, Var};
use crate::par::Exec;
use crate::schubert_polys::{eval_rep, schubert_poly, schubert_table, LocalizationMatrix};
use crate::Theory;

/// M(z) = M0 + z M1 in the Schubert basis. `cols0[j][i]` is the coefficient of
/// the i-th class in the image of the j-th class (column-major storage).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieriMatrix {
    pub theory: Theory,
    pub k: usize,
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub cols0: Vec<Vec<MultiPoly>>,
    pub cols1: Vec<Vec<MultiPoly>>,
}

impl PieriMatrix {
    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    pub fn entry(&self, order: usize, row: usize, col: usize) -> &MultiPoly {
        match order {
            0 => &self.cols0[col][row],
            _ => &self.cols1[col][row],
        }
    }

    /// Numeric (or exact) matrices (M0, M1) at the given weights.
    pub fn eval<F: Field>(&self, u: &[F]) -> Result<(Matrix<F>, Matrix<F>)> {
        let n = self.size();
        let mut m0 = Matrix::zeros(n, n);
        let mut m1 = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                if !self.cols0[j][i].is_zero() {
                    m0.set(i, j, eval_rep(&self.cols0[j][i], &[], u)?);
                }
                if !self.cols1[j][i].is_zero() {
                    m1.set(i, j, eval_rep(&self.cols1[j][i], &[], u)?);
                }
            }
        }
        Ok((m0, m1))
    }

    /// M0 + z M1 at concrete weights.
    pub fn at<F: Field>(&self, u: &[F], z: &F) -> Result<Matrix<F>> {
        let (m0, m1) = self.eval(u)?;
        Ok(m0.add(&m1.scale(z)))
    }
}

fn index_of(parts: &[Partition]) -> HashMap<Partition, usize> {
    parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

fn frame_weight_product(lambda: &Partition, n: usize) -> Result<Monomial> {
    let r = partition_to_subset(lambda, n)?;
    Ok(Monomial::from_pairs(r.0.iter().map(|&i| (Var::u(i), 1))))
}

fn frame_weight_sum(lambda: &Partition, n: usize) -> Result<MultiPoly> {
    let r = partition_to_subset(lambda, n)?;
    Ok(r.0.iter().fold(MultiPoly::zero(), |acc, &i| acc + MultiPoly::var(Var::u(i))))
}

/// Quantum K-theory multiplication by O(-1):
/// M(z) O_lambda = prod u_{r_i} sum_nu (-1)^{|nu/lambda|} (O_nu - z O_{hatbar nu}).
pub fn pieri_matrix_k(k: usize, n: usize, exec: Exec) -> Result<PieriMatrix> {
    let parts = enumerate_partitions(k, n)?;
    let idx = index_of(&parts);
    let size = parts.len();
    let bound = (n - k) as u32;
    let cols = exec.map(&parts, |lambda| -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
        let pref = frame_weight_product(lambda, n)?;
        let mut c0 = vec![MultiPoly::zero(); size];
        let mut c1 = vec![MultiPoly::zero(); size];
        for s in rook_strip_successors(lambda, Some(bound)) {
            let term = MultiPoly::term(pref.clone(), rat(s.sign as i64));
            let i = idx[&s.nu];
            c0[i] = &c0[i] + &term;
            let h = idx[&hat_bar(&s.nu)];
            c1[h] = &c1[h] - &term;
        }
        Ok((c0, c1))
    });
    let (cols0, cols1) = cols.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(PieriMatrix { theory: Theory::KTheory, k, n, partitions: parts, cols0, cols1 })
}

fn interlaces_above(lambda: &Partition, mu: &Partition) -> bool {
    // lambda_1 >= mu_1 >= lambda_2 >= ... >= lambda_k >= mu_k
    let k = mu.k();
    (0..k).all(|i| {
        lambda.0[i] >= mu.0[i] && (i + 1 == k || mu.0[i] >= lambda.0[i + 1])
    })
}

fn quantum_interlaces(nu: &Partition, mu: &Partition) -> bool {
    // mu_i - 1 >= nu_i >= mu_{i+1} - 1, with nu_k >= 0
    let k = mu.k();
    (0..k).all(|i| {
        let upper = mu.0[i] as i64 - 1;
        let lower = if i + 1 < k { mu.0[i + 1] as i64 - 1 } else { 0 };
        let v = nu.0[i] as i64;
        v <= upper && v >= lower
    })
}

/// Quantum cohomology multiplication by sigma_1 (equivariantly corrected).
pub fn pieri_matrix_coh(k: usize, n: usize, exec: Exec) -> Result<PieriMatrix> {
    let parts = enumerate_partitions(k, n)?;
    let size = parts.len();
    let cols = exec.map(&parts, |mu| -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
        let mut c0 = vec![MultiPoly::zero(); size];
        let mut c1 = vec![MultiPoly::zero(); size];
        for (i, lambda) in parts.iter().enumerate() {
            if lambda.size() == mu.size() + 1 && interlaces_above(lambda, mu) {
                c0[i] = MultiPoly::one();
            }
            if lambda == mu {
                c0[i] = frame_weight_sum(mu, n)?;
            }
            if lambda.size() as i64 == mu.size() as i64 + 1 - n as i64 && quantum_interlaces(lambda, mu) {
                c1[i] = MultiPoly::one();
            }
        }
        Ok((c0, c1))
    });
    let (cols0, cols1) = cols.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(PieriMatrix { theory: Theory::Cohomology, k, n, partitions: parts, cols0, cols1 })
}

pub fn pieri_matrix(theory: Theory, k: usize, n: usize, exec: Exec) -> Result<PieriMatrix> {
    match theory {
        Theory::Cohomology => pieri_matrix_coh(k, n, exec),
        Theory::KTheory => pieri_matrix_k(k, n, exec),
    }
}

fn x_product(k: usize) -> Monomial {
    Monomial::from_pairs((1..=k).map(|i| (Var::x(i), 1)))
}

fn grothendieck(lambda: &Partition) -> Result<MultiPoly> {
    Ok(schubert_poly(Theory::KTheory, lambda)?.value)
}

/// x_1...x_k G_lambda = prod u_{r_i} sum_nu (-1)^{|nu/lambda|} G_nu over all
/// rook strips nu/lambda (nu may leave the box).
pub fn check_pieri_identity_k(lambda: &Partition, n: usize) -> Result<bool> {
    let k = lambda.k();
    let lhs = grothendieck(lambda)?.mul_monomial(&x_product(k));
    let pref = frame_weight_product(lambda, n)?;
    let mut rhs = MultiPoly::zero();
    for s in rook_strip_successors(lambda, None) {
        rhs = rhs + grothendieck(&s.nu)?.scale(&rat(s.sign as i64));
    }
    Ok(lhs == rhs.mul_monomial(&pref))
}

/// For lambda_1 = n-k: x_1...x_k G_lambda = prod u_{r_i} sum_nu sign (G_nu - G_{nu^a})
/// over strips inside the box.
pub fn check_gkpieri(lambda: &Partition, n: usize) -> Result<bool> {
    let k = lambda.k();
    if n < k || lambda.first() as usize != n - k {
        return Err(Error::NotFullWidth(lambda.0.clone()));
    }
    let lhs = grothendieck(lambda)?.mul_monomial(&x_product(k));
    let pref = frame_weight_product(lambda, n)?;
    let mut rhs = MultiPoly::zero();
    for s in rook_strip_successors(lambda, Some((n - k) as u32)) {
        let d = grothendieck(&s.nu)? - grothendieck(&nu_a(&s.nu))?;
        rhs = rhs + d.scale(&rat(s.sign as i64));
    }
    Ok(lhs == rhs.mul_monomial(&pref))
}

/// One row of the Pieri identity sweep.
#[derive(Clone, Debug, Serialize)]
pub struct PieriCheck {
    pub k: usize,
    pub n: usize,
    pub lambda: Partition,
    pub pieri: bool,
    pub gkpieri: Option<bool>,
}

/// Runs both identities for every partition of every box with k <= n <= max_n.
pub fn pieri_sweep(max_n: usize, max_k: usize, exec: Exec) -> Result<Vec<PieriCheck>> {
    let mut jobs = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k.min(n) {
            for lambda in enumerate_partitions(k, n)? {
                jobs.push((k, n, lambda));
            }
        }
    }
    exec.map(&jobs, |(k, n, lambda)| {
        let pieri = check_pieri_identity_k(lambda, *n)?;
        let gkpieri = if lambda.first() as usize == n - k {
            Some(check_gkpieri(lambda, *n)?)
        } else {
            None
        };
        Ok(PieriCheck { k: *k, n: *n, lambda: lambda.clone(), pieri, gkpieri })
    })
    .into_iter()
    .collect()
}

/// M_loc(z) = L^T (M0 + z M1) (L^T)^{-1}, returned as its z-coefficients.
pub fn localize_operator<F: Field>(
    p: &PieriMatrix,
    l: &LocalizationMatrix,
    u: &[F],
) -> Result<(Matrix<F>, Matrix<F>)> {
    let (m0, m1) = p.eval(u)?;
    let lt = l.eval(u)?.transpose();
    localize_matrices(&m0, &m1, &lt)
}

pub fn localize_matrices<F: Field>(
    m0: &Matrix<F>,
    m1: &Matrix<F>,
    lt: &Matrix<F>,
) -> Result<(Matrix<F>, Matrix<F>)> {
    let lt_inv = lt.inverse().map_err(|e| match e {
        Error::ZeroDenominator => Error::SingularLocalization,
        other => other,
    })?;
    Ok((lt.mul(m0)?.mul(&lt_inv)?, lt.mul(m1)?.mul(&lt_inv)?))
}

/// Representatives of all box partitions (shared by several verifiers).
pub fn box_representatives(theory: Theory, k: usize, n: usize, exec: Exec) -> Result<Vec<MultiPoly>> {
    schubert_table(theory, &enumerate_partitions(k, n)?, exec)
}
