//! Five-vertex R-matrices, the Yang-Baxter equation, monodromy and the
//! twisted transfer matrix T(x) = z A(x) + D(x), and a probe identifying the
//! weight sectors of T with the K-theory Pieri operators.
//!
//! Spin basis: site i carries bit i-1 of the state index, and the marked sites
//! of a frame are the bits equal to 1.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::bethe::{build_bethe, offshell_vector, predicted_eigenvalue, solve_bethe};
use crate::boxcomb::{binomial, frames};
use crate::error::{Error, Result};
use crate::exact_algebra::{Complex64, Field, Matrix, MultiPoly, RatFunc, Var};
use crate::par::Exec;
use crate::pieri_ops::pieri_matrix_k;
use crate::sampling;
use crate::Theory;

/// 4x4 R-matrix in the basis |00>, |01>, |10>, |11> (first factor first).
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix4<F> {
    pub theory: Theory,
    pub parameter: F,
    pub entries: Matrix<F>,
}

/// Middle block [[0,1],[1,u]] (cohomology) or [[0,t],[1,1-t]] (K-theory).
pub fn r_matrix<F: Field>(theory: Theory, t: F) -> RMatrix4<F> {
    let (a, b) = match theory {
        Theory::Cohomology => (F::one(), t.clone()),
        Theory::KTheory => (t.clone(), F::one() - t.clone()),
    };
    r_from_block(theory, t, a, F::one(), b)
}

fn r_from_block<F: Field>(theory: Theory, t: F, a12: F, a21: F, a22: F) -> RMatrix4<F> {
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, F::one());
    m.set(3, 3, F::one());
    m.set(1, 2, a12);
    m.set(2, 1, a21);
    m.set(2, 2, a22);
    RMatrix4 { theory, parameter: t, entries: m }
}

/// The same matrix acting on factors (i, j) of a three-fold product, 8x8 with
/// factor 0 as the most significant bit.
fn embed3<F: Field>(r: &Matrix<F>, i: usize, j: usize) -> Matrix<F> {
    let bit = |s: usize, f: usize| (s >> (2 - f)) & 1;
    Matrix::from_fn(8, 8, |row, col| {
        let other = 3 - i - j;
        if bit(row, other) != bit(col, other) {
            return F::zero();
        }
        let ri = 2 * bit(row, i) + bit(row, j);
        let ci = 2 * bit(col, i) + bit(col, j);
        r.get(ri, ci).clone()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AttractingMatrices {
    pub theory: Theory,
    pub t_plus: Vec<Vec<String>>,
    pub t_minus: Vec<Vec<String>>,
    pub product: Vec<Vec<String>>,
    pub determinant: String,
    /// (T-)^{-1} T+ equals the middle block of the R-matrix.
    pub matches_r_block: bool,
}

fn show(m: &Matrix<RatFunc>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

/// T+ and T- from the restrictions to the two fixed points of P^1, and their quotient.
pub fn attracting_matrices(theory: Theory) -> Result<AttractingMatrices> {
    let one = RatFunc::one();
    let zero = RatFunc::zero();
    let (t_plus, t_minus, block) = match theory {
        Theory::Cohomology => {
            let u = RatFunc::var(Var::u(1));
            (
                Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![one.clone(), u.clone()]]),
                Matrix::from_rows(vec![vec![-u.clone(), one.clone()], vec![zero.clone(), one.clone()]]),
                Matrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), u]]),
            )
        }
        Theory::KTheory => {
            let t = RatFunc::var(Var::Q);
            let tinv = one.div(&t)?;
            (
                Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![one.clone(), one.clone() - t.clone()]]),
                Matrix::from_rows(vec![vec![one.clone() - tinv, one.clone()], vec![zero.clone(), one.clone()]]),
                Matrix::from_rows(vec![vec![zero, t.clone()], vec![one.clone(), one - t]]),
            )
        }
    };
    let product = t_minus.inverse()?.mul(&t_plus)?;
    Ok(AttractingMatrices {
        theory,
        t_plus: show(&t_plus),
        t_minus: show(&t_minus),
        determinant: product.det()?.to_string(),
        matches_r_block: product == block,
        product: show(&product),
    })
}

/// Checks R_a1(p1) R_a2(p2) R_12(p12) = R_12(p12) R_a2(p2) R_a1(p1) exactly, with
/// p_i = u_i/x, p12 = u2/u1 (K-theory) or p_i = u_i - x, p12 = u2 - u1 (cohomology).
/// `r` builds the 4x4 matrix from its spectral parameter.
pub fn check_ybe_with(theory: Theory, r: &dyn Fn(RatFunc) -> Matrix<RatFunc>) -> Result<bool> {
    let x = RatFunc::var(Var::x(1));
    let u1 = RatFunc::var(Var::u(1));
    let u2 = RatFunc::var(Var::u(2));
    let (p1, p2, p12) = match theory {
        Theory::KTheory => (u1.div(&x)?, u2.div(&x)?, u2.div(&u1)?),
        Theory::Cohomology => (u1.clone() - x.clone(), u2.clone() - x, u2 - u1),
    };
    let ra1 = embed3(&r(p1), 0, 1);
    let ra2 = embed3(&r(p2), 0, 2);
    let r12 = embed3(&r(p12), 1, 2);
    let lhs = ra1.mul(&ra2)?.mul(&r12)?;
    let rhs = r12.mul(&ra2)?.mul(&ra1)?;
    Ok(lhs == rhs)
}

pub fn check_ybe(theory: Theory) -> Result<bool> {
    check_ybe_with(theory, &|t| r_matrix(theory, t).entries)
}

/// K-theory R-matrix with middle block [[0,t],[1,1]]; fails the Yang-Baxter equation.
pub fn perturbed_r(t: RatFunc) -> Matrix<RatFunc> {
    r_from_block(Theory::KTheory, t.clone(), t, RatFunc::one(), RatFunc::one()).entries
}

/// L(x) = [[A, B], [C, D]] in the auxiliary basis; each block acts on 2^n states.
#[derive(Clone, Debug)]
pub struct Monodromy<F> {
    pub theory: Theory,
    pub n: usize,
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub d: Matrix<F>,
}

impl<F: Field> Monodromy<F> {
    fn block(&self, alpha: usize, beta: usize) -> &Matrix<F> {
        match (alpha, beta) {
            (0, 0) => &self.a,
            (0, _) => &self.b,
            (_, 0) => &self.c,
            _ => &self.d,
        }
    }
}

/// X O where O acts on site i (bit i) by the 2x2 matrix o.
fn right_site<F: Field>(x: &Matrix<F>, o: &[[F; 2]; 2], i: usize) -> Matrix<F> {
    let dim = x.cols();
    let mask = 1usize << i;
    let mut out = Matrix::<F>::zeros(x.rows(), dim);
    for col in 0..dim {
        let s_out = (col >> i) & 1;
        for s_in in 0..2 {
            let w = &o[s_in][s_out];
            if w.is_zero() {
                continue;
            }
            let src = (col & !mask) | (s_in << i);
            for row in 0..x.rows() {
                let v = x.get(row, src);
                if !v.is_zero() {
                    let acc = out.get(row, col).clone() + v.clone() * w.clone();
                    out.set(row, col, acc);
                }
            }
        }
    }
    out
}

pub const MAX_SITES: usize = 8;

/// L(x) = R_a1(p_1) ... R_an(p_n) with p_i = x/u_i (K-theory) or x - u_i (cohomology).
pub fn monodromy<F: Field>(theory: Theory, x: &F, u: &[F]) -> Result<Monodromy<F>> {
    let n = u.len();
    if n > MAX_SITES {
        return Err(Error::SizeLimit(n));
    }
    let dim = 1usize << n;
    let mut blocks = [
        [Matrix::identity(dim), Matrix::zeros(dim, dim)],
        [Matrix::zeros(dim, dim), Matrix::identity(dim)],
    ];
    for (i, ui) in u.iter().enumerate() {
        let p = match theory {
            Theory::KTheory => x.div(ui).map_err(|_| Error::DegenerateWeights("zero weight".into()))?,
            Theory::Cohomology => x.clone() - ui.clone(),
        };
        let r = r_matrix(theory, p).entries;
        // site operator r_{beta gamma}[s, s'] = R[(beta, s), (gamma, s')]
        let site = |beta: usize, gamma: usize| {
            [
                [r.get(2 * beta, 2 * gamma).clone(), r.get(2 * beta, 2 * gamma + 1).clone()],
                [r.get(2 * beta + 1, 2 * gamma).clone(), r.get(2 * beta + 1, 2 * gamma + 1).clone()],
            ]
        };
        let mut next = blocks.clone();
        for (alpha, row) in next.iter_mut().enumerate() {
            for (gamma, slot) in row.iter_mut().enumerate() {
                let mut acc = Matrix::zeros(dim, dim);
                for beta in 0..2 {
                    let o = site(beta, gamma);
                    if o.iter().flatten().all(|w| w.is_zero()) {
                        continue;
                    }
                    acc = acc.add(&right_site(&blocks[alpha][beta], &o, i));
                }
                *slot = acc;
            }
        }
        blocks = next;
    }
    let [[a, b], [c, d]] = blocks;
    Ok(Monodromy { theory, n, a, b, c, d })
}

/// T(x) = z A(x) + D(x).
pub fn transfer_matrix<F: Field>(mono: &Monodromy<F>, z: &F) -> Matrix<F> {
    mono.a.scale(z).add(&mono.d)
}

/// Change in the number of marked sites caused by each block, or None when a
/// block mixes different changes.
pub fn block_charges<F: Field>(mono: &Monodromy<F>) -> [[Option<i32>; 2]; 2] {
    let mut out = [[None; 2]; 2];
    for (alpha, row) in out.iter_mut().enumerate() {
        for (beta, slot) in row.iter_mut().enumerate() {
            let m = mono.block(alpha, beta);
            let mut charge: Option<i32> = None;
            let mut mixed = false;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    if !m.get(i, j).is_zero() {
                        let c = i.count_ones() as i32 - j.count_ones() as i32;
                        match charge {
                            None => charge = Some(c),
                            Some(c0) if c0 != c => mixed = true,
                            _ => {}
                        }
                    }
                }
            }
            *slot = if mixed { None } else { charge.or(Some(0)) };
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightSector {
    pub n: usize,
    pub k: usize,
    /// Spin-state indices, in the order of the partitions of the k x (n-k) box.
    pub states: Vec<usize>,
}

impl WeightSector {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Diagonal 0/1 projector on the full 2^n space.
    pub fn projector<F: Field>(&self) -> Matrix<F> {
        let dim = 1usize << self.n;
        Matrix::from_fn(dim, dim, |i, j| if i == j && self.states.contains(&i) { F::one() } else { F::zero() })
    }

    /// Rows and columns of `m` belonging to the sector.
    pub fn restrict<F: Field>(&self, m: &Matrix<F>) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.dim(), |i, j| m.get(self.states[i], self.states[j]).clone())
    }
}

pub fn weight_sector(n: usize, k: usize) -> Result<WeightSector> {
    if k > n {
        return Err(Error::InvalidShape(format!("k = {k} exceeds n = {n}")));
    }
    if k == 0 {
        return Ok(WeightSector { n, k, states: vec![0] });
    }
    let states = frames(k, n)?.iter().map(|(_, r)| r.state_index()).collect();
    Ok(WeightSector { n, k, states })
}

fn commutator_norm(a: &Matrix<f64>, b: &Matrix<f64>) -> Result<f64> {
    Ok(a.mul(b)?.sub(&b.mul(a)?).max_abs())
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutingSample {
    pub x1: f64,
    pub x2: f64,
    pub z: f64,
    pub u: Vec<f64>,
    /// max |[T(x1), T(x2)]| / (max |T(x1)| max |T(x2)|)
    pub full: f64,
    pub sectors: Vec<f64>,
    /// the same for the untwisted D(x)
    pub untwisted: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutingReport {
    pub theory: Theory,
    pub n: usize,
    pub seed: u64,
    pub samples: Vec<CommutingSample>,
    pub max_full: f64,
    pub max_sector: f64,
    pub sector_dims: Vec<usize>,
    pub tolerance: f64,
    pub pass: bool,
}

/// [T(x1), T(x2)] at random numeric points, on the full space and per sector.
pub fn commuting_family_check(theory: Theory, n: usize, samples: usize, seed: u64, tol: f64, exec: Exec) -> Result<CommutingReport> {
    let mut rng = sampling::rng(seed);
    let points: Vec<(f64, f64, f64, Vec<f64>)> = (0..samples)
        .map(|_| {
            let u = sampling::distinct_floats(&mut rng, n, 0.5, 2.0, 0.05);
            (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), rng.gen_range(0.1..1.0), u)
        })
        .collect();
    let sectors = (0..=n).map(|k| weight_sector(n, k)).collect::<Result<Vec<_>>>()?;
    let out = exec
        .map(&points, |(x1, x2, z, u)| -> Result<CommutingSample> {
            let m1 = monodromy(theory, x1, u)?;
            let m2 = monodromy(theory, x2, u)?;
            let t1 = transfer_matrix(&m1, z);
            let t2 = transfer_matrix(&m2, z);
            let scale = (t1.max_abs() * t2.max_abs()).max(1e-300);
            let full = commutator_norm(&t1, &t2)? / scale;
            let per = sectors
                .iter()
                .map(|s| Ok(commutator_norm(&s.restrict(&t1), &s.restrict(&t2))? / scale))
                .collect::<Result<Vec<_>>>()?;
            let dscale = (m1.d.max_abs() * m2.d.max_abs()).max(1e-300);
            Ok(CommutingSample {
                x1: *x1,
                x2: *x2,
                z: *z,
                u: u.clone(),
                full,
                sectors: per,
                untwisted: commutator_norm(&m1.d, &m2.d)? / dscale,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let max_full = out.iter().map(|s| s.full).fold(0.0, f64::max);
    let max_sector = out.iter().flat_map(|s| s.sectors.iter().copied()).fold(0.0, f64::max);
    let sector_dims: Vec<usize> = sectors.iter().map(|s| s.dim()).collect();
    let dims_ok = sector_dims.iter().enumerate().all(|(k, &d)| d == binomial(n, k));
    Ok(CommutingReport {
        theory,
        n,
        seed,
        samples: out,
        max_full,
        max_sector,
        sector_dims,
        tolerance: tol,
        pass: dims_ok && max_full < tol && max_sector < tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub k: usize,
    pub z: f64,
    pub x: f64,
    pub u: Vec<f64>,
    /// max |[T_k(x), M(z)]| relative to |T| |M|, identity gauge.
    pub identity_residual: f64,
    /// the same after the best diagonal gauge G M G^{-1}
    pub gauge_residual: f64,
    /// log of the diagonal gauge entries (first fixed to 0)
    pub gauge_log: Vec<f64>,
    pub gauge_found: bool,
    /// 1 - |<w, T w>| / (|w| |T w|) for the predicted eigenvectors w (columns of V^{-T})
    pub eigenvector_cosine_distance: Vec<f64>,
    /// ||T w - rho(w) w|| / ||w|| with rho the Rayleigh quotient
    pub eigenvector_residual: Vec<f64>,
    pub tolerance: f64,
}

fn gauge_residual(t: &Matrix<f64>, m: &Matrix<f64>, h: &[f64]) -> Vec<f64> {
    let n = m.rows();
    let g = Matrix::from_fn(n, n, |i, j| m.get(i, j) * (h[i] - h[j]).exp());
    let c = t.mul(&g).and_then(|a| Ok(a.sub(&g.mul(t)?))).unwrap_or_else(|_| Matrix::zeros(n, n));
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            out.push(*c.get(i, j));
        }
    }
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Least squares over diagonal gauges by Gauss-Newton in log coordinates,
/// starting from the identity.
fn solve_gauge(t: &Matrix<f64>, m: &Matrix<f64>) -> (Vec<f64>, f64) {
    let n = m.rows();
    let mut h = vec![0.0; n];
    let mut best = norm(&gauge_residual(t, m, &h));
    for _ in 0..30 {
        let r0 = gauge_residual(t, m, &h);
        let step = 1e-7;
        let jac = DMatrix::from_fn(r0.len(), n.saturating_sub(1), |row, col| {
            let mut hp = h.clone();
            hp[col + 1] += step;
            (gauge_residual(t, m, &hp)[row] - r0[row]) / step
        });
        if jac.ncols() == 0 {
            break;
        }
        let rhs = DVector::from_vec(r0.iter().map(|v| -v).collect());
        let Ok(delta) = jac.svd(true, true).solve(&rhs, 1e-12) else {
            break;
        };
        let mut trial = h.clone();
        for i in 1..n {
            trial[i] += delta[i - 1];
        }
        let r = norm(&gauge_residual(t, m, &trial));
        if r < best {
            best = r;
            h = trial;
        } else {
            break;
        }
    }
    (h, best)
}

/// Compares T(x) on the weight-k sector with the K-theory Pieri operator M(z),
/// both at the same z.
pub fn bethe_algebra_probe(n: usize, k: usize, x: f64, z: f64, u: &[f64], tol: f64) -> Result<ProbeReport> {
    let mono = monodromy(Theory::KTheory, &x, u)?;
    let sector = weight_sector(n, k)?;
    let t = sector.restrict(&transfer_matrix(&mono, &z));
    let m = pieri_matrix_k(k, n, Exec::sequential())?.at(u, &z)?;
    let scale = (t.max_abs() * m.max_abs()).max(1e-300);
    let identity_residual = commutator_norm(&t, &m)? / scale;
    let (h, _) = solve_gauge(&t, &m);
    let g_res = gauge_residual(&t, &m, &h).iter().map(|v| v.abs()).fold(0.0, f64::max) / scale;
    let gauge_residual = g_res.min(identity_residual);
    if gauge_residual > tol {
        eprintln!("warning: {}", Error::GaugeNotFound(gauge_residual));
    }

    // predicted eigenvectors of M (hence of T) from the Bethe roots
    let sys = build_bethe(Theory::KTheory, k, n, u, z)?;
    let dim = sector.dim();
    let mut v = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, (_, r)) in frames(k, n)?.iter().enumerate() {
        let roots = solve_bethe(&sys, r, 1e-13)?;
        let _ = predicted_eigenvalue(Theory::KTheory, &roots.roots);
        for (row, c) in offshell_vector(Theory::KTheory, &roots.roots, k, n, u)?.into_iter().enumerate() {
            v[(row, col)] = c;
        }
    }
    let w = v.transpose().try_inverse().ok_or(Error::SingularLocalization)?;
    let tc = DMatrix::<Complex64>::from_fn(dim, dim, |i, j| Complex64::new(*t.get(i, j), 0.0));
    let mut cosines = Vec::with_capacity(dim);
    let mut residuals = Vec::with_capacity(dim);
    for j in 0..dim {
        let wj = w.column(j).into_owned();
        let tw = &tc * &wj;
        let inner = wj.dotc(&tw);
        let (nw, ntw) = (wj.norm(), tw.norm());
        cosines.push(1.0 - inner.norm() / (nw * ntw).max(1e-300));
        let rho = inner / wj.dotc(&wj);
        residuals.push((tw - wj.scale(1.0) * rho).norm() / nw.max(1e-300));
    }
    Ok(ProbeReport {
        n,
        k,
        z,
        x,
        u: u.to_vec(),
        identity_residual,
        gauge_found: gauge_residual <= tol,
        gauge_residual,
        gauge_log: h,
        eigenvector_cosine_distance: cosines,
        eigenvector_residual: residuals,
        tolerance: tol,
    })
}

/// Symbolic monodromy for small n, with x and u as variables.
pub fn symbolic_monodromy(theory: Theory, n: usize) -> Result<Monodromy<RatFunc>> {
    let u: Vec<RatFunc> = (1..=n).map(|i| RatFunc::var(Var::u(i))).collect();
    monodromy(theory, &RatFunc::var(Var::x(1)), &u)
}

/// Transfer matrix with x, u and z symbolic.
pub fn symbolic_transfer(theory: Theory, n: usize) -> Result<Matrix<RatFunc>> {
    let mono = symbolic_monodromy(theory, n)?;
    Ok(transfer_matrix(&mono, &RatFunc::var(Var::Z)))
}

pub fn entry_poly(m: &Matrix<RatFunc>, i: usize, j: usize) -> Option<MultiPoly> {
    let e = m.get(i, j);
    e.is_poly().then(|| e.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ybe_both_theories() {
        assert!(check_ybe(Theory::KTheory).unwrap());
        assert!(check_ybe(Theory::Cohomology).unwrap());
        assert!(!check_ybe_with(Theory::KTheory, &perturbed_r).unwrap());
    }

    #[test]
    fn attracting_products() {
        let c = attracting_matrices(Theory::Cohomology).unwrap();
        assert!(c.matches_r_block);
        assert_eq!(c.determinant, "-1");
        let k = attracting_matrices(Theory::KTheory).unwrap();
        assert!(k.matches_r_block);
        assert_eq!(k.t_plus[1][1], "-q + 1");
    }

    #[test]
    fn one_site_blocks() {
        let m = symbolic_monodromy(Theory::KTheory, 1).unwrap();
        let t = RatFunc::var(Var::x(1)).div(&RatFunc::var(Var::u(1))).unwrap();
        let r = r_matrix(Theory::KTheory, t).entries;
        for s in 0..2 {
            for s2 in 0..2 {
                assert_eq!(m.a.get(s, s2), r.get(s, s2));
                assert_eq!(m.d.get(s, s2), r.get(2 + s, 2 + s2));
            }
        }
    }

    #[test]
    fn two_sites_match_tensor_product() {
        // brute force: aux is factor 0, site 1 factor 1 (bit 0), site 2 factor 2 (bit 1)
        let u = [0.7, 1.9];
        let x = 1.3;
        let m = monodromy(Theory::KTheory, &x, &u).unwrap();
        let r1 = embed3(&r_matrix(Theory::KTheory, x / u[0]).entries, 0, 2);
        let r2 = embed3(&r_matrix(Theory::KTheory, x / u[1]).entries, 0, 1);
        let full = r1.mul(&r2).unwrap();
        // state (a, s2, s1) has index 4a + 2 s2 + s1 in embed3's ordering
        for a in 0..2 {
            for b in 0..2 {
                let blk = m.block(a, b);
                for i in 0..4 {
                    for j in 0..4 {
                        let e = *full.get(4 * a + i, 4 * b + j);
                        assert!((blk.get(i, j) - e).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_conserve_charge() {
        for n in 1..=6 {
            let u: Vec<f64> = (1..=n).map(|i| 0.3 + i as f64 * 0.37).collect();
            for theory in [Theory::KTheory, Theory::Cohomology] {
                let c = block_charges(&monodromy(theory, &1.1, &u).unwrap());
                assert_eq!(c, [[Some(0), Some(1)], [Some(-1), Some(0)]], "n = {n}");
            }
        }
    }

    #[test]
    fn sectors() {
        let s = weight_sector(4, 2).unwrap();
        assert_eq!(s.states, vec![3, 5, 6, 9, 10, 12]);
        let p: Matrix<f64> = s.projector();
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(weight_sector(2, 1).unwrap().dim(), 2);
    }

    #[test]
    fn transfer_commutes() {
        for n in [2, 4] {
            let r = commuting_family_check(Theory::KTheory, n, 5, 3, 1e-12, Exec::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn transfer_at_zero_twist_is_d() {
        let u = [0.7, 1.9];
        let m = monodromy(Theory::KTheory, &1.3, &u).unwrap();
        assert_eq!(transfer_matrix(&m, &0.0), m.d);
    }

    #[test]
    fn probe_gr24() {
        let r = bethe_algebra_probe(4, 2, 1.7, 1e-3, &[1.3, 2.1, 2.9, 3.7], 1e-8).unwrap();
        assert!(r.identity_residual < 1e-10, "{r:?}");
        assert!(r.eigenvector_cosine_distance.iter().all(|&d| d < 1e-6), "{r:?}");
    }
}
