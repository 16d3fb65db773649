//! The differential equation eps z d/dz psi = M^C(z) psi for equivariant
//! quantum cohomology of Gr(k,n): the projective-space solution, the
//! Grassmannian solution in closed form and as a wedge determinant, and an
//! order-by-order check at every fixed point.
//!
//! Gamma functions never appear. Every ratio Gamma(a+d)/Gamma(a) is a rising
//! factorial, and the d-independent Gamma products are divided out of each
//! column, so the order-0 coefficient of a column is s_lambda(x).

use serde::Serialize;

use crate::boxcomb::{compositions, frames, KSubset, Partition};
use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Field, Monomial, MultiPoly, RatFunc, Rational, SeriesZ, Var};
use crate::par::Exec;
use crate::pieri_ops::pieri_matrix_coh;
use crate::report::{collect_entries, frame_residuals, PointResidual, QdeReport, ResidualEntry};
use crate::sampling;
use crate::schubert_polys::{eval_rep, factorial_schur, poly_det, schubert_table};
use crate::Theory;

/// a (a+1) ... (a+d-1).
#[derive(Clone, Debug, PartialEq)]
pub struct RisingFactorial<F> {
    pub base: F,
    pub length: u32,
    pub value: F,
}

impl<F: Field> RisingFactorial<F> {
    pub fn new(base: F, length: u32) -> Self {
        let mut value = F::one();
        let mut t = base.clone();
        for _ in 0..length {
            value = value * t.clone();
            t = t + F::one();
        }
        RisingFactorial { base, length, value }
    }
}

pub fn rising<F: Field>(a: &F, d: u32) -> F {
    RisingFactorial::new(a.clone(), d).value
}

/// Gamma(a+e)/Gamma(a) for any integer e.
pub fn gamma_shift<F: Field>(a: &F, e: i64) -> Result<F> {
    if e >= 0 {
        Ok(rising(a, e as u32))
    } else {
        let shifted = a.clone() + F::from_int(e);
        F::one().div(&rising(&shifted, (-e) as u32)).map_err(|_| Error::PoleAtPoint)
    }
}

/// How the 1/RF((x_b - u_l)/eps + 1, d_b) factors are normalized.
///
/// When some (x_b - u_l)/eps is a negative integer (integer weights with eps = 1,
/// say), those factors have poles. Multiplying the whole column by
/// prod_{b,l} RF(a_bl, D) turns each factor into the polynomial RF(a_bl + d_b, D - d_b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Plain,
    Shifted { order: u32 },
}

fn inverse_rising<F: Field>(a: &F, d: u32, norm: Normalization) -> Result<F> {
    match norm {
        Normalization::Plain => F::one().div(&rising(a, d)).map_err(|_| Error::PoleAtPoint),
        Normalization::Shifted { order } => {
            if d > order {
                return Err(Error::InvalidShape(format!("degree {d} beyond normalization order {order}")));
            }
            Ok(rising(&(a.clone() + F::from_int(d as i64)), order - d))
        }
    }
}

fn check_eps<F: Field>(eps: &F) -> Result<()> {
    if eps.is_zero() {
        return Err(Error::ZeroEpsilon);
    }
    Ok(())
}

/// s_lambda(x + d eps) eps^{-n d} / prod_l RF((x - u_l)/eps + 1, d) for a single-row lambda.
pub fn coeff_1n<F: Field>(
    rep: &MultiPoly,
    d: u32,
    x: &F,
    u: &[F],
    eps: &F,
    norm: Normalization,
) -> Result<F> {
    check_eps(eps)?;
    let n = u.len();
    let shifted = x.clone() + eps.clone() * F::from_int(d as i64);
    let mut c = eval_rep(rep, &[shifted], u)?;
    c = c * eps.powi(-((n as i64) * d as i64))?;
    for ul in u {
        let a = (x.clone() - ul.clone()).div(eps)? + F::one();
        c = c * inverse_rising(&a, d, norm)?;
    }
    Ok(c)
}

/// (-1)^{(k+1)|d|} prod_{i<j} ((x_i-x_j)/eps + d_i - d_j)/((x_i-x_j)/eps)
/// * s_lambda(x + d eps) eps^{-n|d|} / prod_{b,l} RF((x_b - u_l)/eps + 1, d_b).
pub fn coeff_kn<F: Field>(
    rep: &MultiPoly,
    d: &[u32],
    x: &[F],
    u: &[F],
    eps: &F,
    norm: Normalization,
) -> Result<F> {
    check_eps(eps)?;
    let k = x.len();
    let n = u.len();
    let total: u32 = d.iter().sum();
    let mut c = F::one();
    for i in 0..k {
        for j in i + 1..k {
            let t = (x[i].clone() - x[j].clone()).div(eps)?;
            if t.is_zero() {
                return Err(Error::DegenerateFixedPoint);
            }
            let shifted = t.clone() + F::from_int(d[i] as i64 - d[j] as i64);
            c = c * shifted.div(&t)?;
        }
    }
    if ((k + 1) as u32 * total) % 2 == 1 {
        c = -c;
    }
    let xs: Vec<F> = x
        .iter()
        .zip(d)
        .map(|(xb, &db)| xb.clone() + eps.clone() * F::from_int(db as i64))
        .collect();
    c = c * eval_rep(rep, &xs, u)? * eps.powi(-((n as i64) * total as i64))?;
    for (b, xb) in x.iter().enumerate() {
        for ul in u {
            let a = (xb.clone() - ul.clone()).div(eps)? + F::one();
            c = c * inverse_rising(&a, d[b], norm)?;
        }
    }
    Ok(c)
}

/// Order-m coefficients sum_{|d| = m} coeff_kn(d) of the normalized column.
pub fn psi_series_c<F: Field>(
    rep: &MultiPoly,
    x: &[F],
    u: &[F],
    eps: &F,
    order: usize,
    norm: Normalization,
) -> Result<SeriesZ<F>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut c = F::zero();
        for d in compositions(m as u32, x.len()) {
            c = c + coeff_kn(rep, &d, x, u, eps, norm)?;
        }
        coeffs.push(c);
    }
    Ok(SeriesZ::from_coeffs(coeffs, order))
}

/// Picks the shifted normalization when some 1/RF factor up to `order` has a pole.
pub fn choose_normalization<F: Field>(x: &[F], u: &[F], eps: &F, order: usize) -> Result<Normalization> {
    check_eps(eps)?;
    for xb in x {
        for ul in u {
            let a = (xb.clone() - ul.clone()).div(eps)? + F::one();
            if rising(&a, order as u32).is_zero() {
                return Ok(Normalization::Shifted { order: order as u32 });
            }
        }
    }
    Ok(Normalization::Plain)
}

/// Normalized restriction of psi_lambda to the fixed point r. The full column is
/// z^{exponent_base} times the series.
#[derive(Clone, Debug)]
pub struct PsiColumnC {
    pub lambda: Partition,
    pub frame: KSubset,
    /// (sum_b u_{r_b}) / eps
    pub exponent_base: RatFunc,
    pub series: SeriesZ<RatFunc>,
}

impl PsiColumnC {
    /// eps z d/dz applied to z^{exponent_base + m}: the factor sum_b u_{r_b} + m eps.
    pub fn euler_factor(&self, m: usize) -> Result<RatFunc> {
        let eps = RatFunc::var(Var::Eps);
        Ok(self.exponent_base.clone() * eps.clone() + eps * RatFunc::from_int(m as i64))
    }
}

/// Column with u and eps symbolic.
pub fn psi_column_c(lambda: &Partition, r: &KSubset, order: usize, n: usize) -> Result<PsiColumnC> {
    let rep = factorial_schur(lambda)?.value;
    let u: Vec<RatFunc> = (1..=n).map(|i| RatFunc::var(Var::u(i))).collect();
    let x: Vec<RatFunc> = r.0.iter().map(|&i| u[i - 1].clone()).collect();
    let eps = RatFunc::var(Var::Eps);
    let series = psi_series_c(&rep, &x, &u, &eps, order, Normalization::Plain)?;
    let sum = x.iter().fold(RatFunc::zero(), |acc, v| acc + v.clone());
    Ok(PsiColumnC { lambda: lambda.clone(), frame: r.clone(), exponent_base: sum.div(&eps)?, series })
}

/// Wedge of projective-space columns psi^{1n}_{lambda_i + k - i}(x_j, (-1)^{k-1} z),
/// divided by prod_{i<j} (x_i - x_j).
pub fn satake_wedge<F: Field>(
    lambda: &Partition,
    order: usize,
    x: &[F],
    u: &[F],
    eps: &F,
    norm: Normalization,
) -> Result<SeriesZ<F>> {
    let k = lambda.k();
    if x.len() != k {
        return Err(Error::InvalidShape(format!("need {k} coordinates, got {}", x.len())));
    }
    let sign = if k % 2 == 1 { F::one() } else { -F::one() };
    let mut entries: Vec<Vec<SeriesZ<F>>> = Vec::with_capacity(k);
    for i in 0..k {
        let a = lambda.0[i] + (k - 1 - i) as u32;
        let rep = factorial_schur(&Partition(vec![a]))?.value;
        let row = x
            .iter()
            .map(|xj| {
                let coeffs = (0..=order)
                    .map(|d| coeff_1n(&rep, d as u32, xj, u, eps, norm))
                    .collect::<Result<Vec<F>>>()?;
                Ok(SeriesZ::from_coeffs(coeffs, order).rescale_z(&sign))
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let mut vandermonde = F::one();
    for i in 0..k {
        for j in i + 1..k {
            let t = x[i].clone() - x[j].clone();
            if t.is_zero() {
                return Err(Error::DegenerateFixedPoint);
            }
            vandermonde = vandermonde * t;
        }
    }
    let mut det = SeriesZ::zero(order);
    for (perm, odd) in permutations(k) {
        let mut term = SeriesZ::one(order);
        for (j, &i) in perm.iter().enumerate() {
            term = term.mul(&entries[i][j])?;
        }
        det = if odd { det.sub(&term)? } else { det.add(&term)? };
    }
    let inv = F::one().div(&vandermonde)?;
    Ok(det.scale_column(&inv))
}

/// All permutations of 0..k with their parity (true = odd), by Heap's algorithm.
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut a: Vec<usize> = (0..k).collect();
    let mut out = vec![(a.clone(), false)];
    let mut c = vec![0usize; k];
    let mut odd = false;
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Compares the closed form with the wedge determinant at every fixed point.
pub fn check_satake<F: Field>(k: usize, n: usize, order: usize, u: &[F], eps: &F) -> Result<Vec<(Partition, KSubset, bool)>> {
    let mut out = Vec::new();
    let fr = frames(k, n)?;
    for (lambda, _) in &fr {
        let rep = factorial_schur(lambda)?.value;
        for (_, r) in &fr {
            let x: Vec<F> = r.0.iter().map(|&i| u[i - 1].clone()).collect();
            let norm = choose_normalization(&x, u, eps, order)?;
            let closed = psi_series_c(&rep, &x, u, eps, order, norm)?;
            let wedge = satake_wedge(lambda, order, &x, u, eps, norm)?;
            out.push((lambda.clone(), r.clone(), closed == wedge));
        }
    }
    Ok(out)
}

/// prod_{b,c} Gamma((x_c/eps + d_c) - (x_b/eps + d_b) + 1) / Gamma(x_c/eps - x_b/eps + 1)
/// against (-1)^{(k+1)|d|} prod_{i<j} ((x_i/eps + d_i) - (x_j/eps + d_j)) / (x_i/eps - x_j/eps),
/// exactly with x and eps symbolic.
pub fn check_gamma_ratio(d: &[u32]) -> Result<bool> {
    let k = d.len();
    let t = |i: usize| {
        MultiPoly::term(Monomial::from_pairs([(Var::x(i + 1), 1), (Var::Eps, -1)]), rat(1))
    };
    let mut lhs_num = MultiPoly::one();
    let mut lhs_den = MultiPoly::one();
    for b in 0..k {
        for c in 0..k {
            if b == c {
                continue;
            }
            let a = &(&t(c) - &t(b)) + &MultiPoly::one();
            let e = d[c] as i64 - d[b] as i64;
            let mut acc = MultiPoly::one();
            let start = if e >= 0 { a.clone() } else { &a + &MultiPoly::int(e) };
            for s in 0..e.unsigned_abs() {
                acc = acc.mul_ref(&(&start + &MultiPoly::int(s as i64)));
            }
            if e >= 0 {
                lhs_num = lhs_num.mul_ref(&acc);
            } else {
                lhs_den = lhs_den.mul_ref(&acc);
            }
        }
    }
    let total: u32 = d.iter().sum();
    let mut rhs_num = MultiPoly::int(if ((k + 1) as u32 * total) % 2 == 1 { -1 } else { 1 });
    let mut rhs_den = MultiPoly::one();
    for i in 0..k {
        for j in i + 1..k {
            let diff = &t(i) - &t(j);
            rhs_num = rhs_num.mul_ref(&(&diff + &MultiPoly::int(d[i] as i64 - d[j] as i64)));
            rhs_den = rhs_den.mul_ref(&diff);
        }
    }
    Ok(lhs_num * rhs_den == rhs_num * lhs_den)
}

/// Residual check at every fixed point in the chosen field.
pub fn qde_residual_c_with<F: Field>(
    k: usize,
    n: usize,
    order: usize,
    u: &[F],
    eps: &F,
    tol: f64,
    exec: Exec,
) -> Result<(Vec<ResidualEntry>, bool)> {
    check_eps(eps)?;
    let fr = frames(k, n)?;
    let parts: Vec<Partition> = fr.iter().map(|f| f.0.clone()).collect();
    let reps = schubert_table(Theory::Cohomology, &parts, exec)?;
    let (m0, m1) = pieri_matrix_coh(k, n, exec)?.eval(u)?;
    let per_frame = exec.map(&fr, |(_, r)| -> Result<(Vec<Vec<PointResidual>>, bool)> {
        let x: Vec<F> = r.0.iter().map(|&i| u[i - 1].clone()).collect();
        let norm = choose_normalization(&x, u, eps, order)?;
        let cols = reps
            .iter()
            .map(|rep| Ok(psi_series_c(rep, &x, u, eps, order, norm)?.into_coeffs()))
            .collect::<Result<Vec<Vec<F>>>>()?;
        let weight = x.iter().fold(F::zero(), |acc, v| acc + v.clone());
        let factor = |m: usize| Ok(weight.clone() + eps.clone() * F::from_int(m as i64));
        let res = frame_residuals(&cols, &m0, &m1, &factor, order, tol)?;
        Ok((res, norm != Normalization::Plain))
    });
    let per_frame = per_frame.into_iter().collect::<Result<Vec<_>>>()?;
    let shifted = per_frame.iter().any(|(_, s)| *s);
    let tables: Vec<Vec<Vec<PointResidual>>> = per_frame.into_iter().map(|(t, _)| t).collect();
    let subsets: Vec<KSubset> = fr.into_iter().map(|f| f.1).collect();
    Ok((collect_entries::<F>(&parts, &subsets, &tables, order), shifted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CMode {
    /// Rational u and eps.
    Exact,
    /// Floating point u and eps.
    Numeric,
}

#[derive(Clone, Debug)]
pub struct CQdeConfig {
    pub k: usize,
    pub n: usize,
    pub order: usize,
    pub mode: CMode,
    pub seed: u64,
    pub u: Option<Vec<Rational>>,
    pub eps: Option<Rational>,
    pub tol: f64,
    pub rerun_on_failure: bool,
    pub exec: Exec,
}

impl CQdeConfig {
    pub fn new(k: usize, n: usize, order: usize, mode: CMode, seed: u64) -> Self {
        CQdeConfig {
            k,
            n,
            order,
            mode,
            seed,
            u: None,
            eps: None,
            tol: 1e-10,
            rerun_on_failure: true,
            exec: Exec::default(),
        }
    }
}

fn check_distinct(u: &[Rational], n: usize) -> Result<()> {
    if u.len() != n {
        return Err(Error::InvalidShape(format!("expected {n} weights, got {}", u.len())));
    }
    for i in 0..n {
        if u[i + 1..].contains(&u[i]) {
            return Err(Error::DegenerateWeights("repeated weight".into()));
        }
    }
    Ok(())
}

pub fn qde_residual_kn(cfg: &CQdeConfig) -> Result<QdeReport> {
    if cfg.order > 6 {
        return Err(Error::InvalidShape("order must be at most 6".into()));
    }
    let mut rng = sampling::rng(cfg.seed);
    let mut report = QdeReport {
        theory: Theory::Cohomology,
        k: cfg.k,
        n: cfg.n,
        order: cfg.order,
        mode: format!("{:?}", cfg.mode).to_lowercase(),
        seed: Some(cfg.seed),
        u: Vec::new(),
        q: None,
        eps: None,
        tolerance: None,
        normalization: vec![
            "Gamma products at d = 0 and the z-exponent prefactor divided out of each column".into(),
        ],
        entries: Vec::new(),
        pass: false,
        max_residual: None,
        rerun: None,
    };
    let shifted = match cfg.mode {
        CMode::Exact => {
            let u = match &cfg.u {
                Some(u) => u.clone(),
                None => sampling::distinct_rationals(&mut rng, cfg.n, -20, 20, 3),
            };
            check_distinct(&u, cfg.n)?;
            let eps = match &cfg.eps {
                Some(e) => e.clone(),
                None => sampling::rational_in(&mut rng, 1, 3, 5),
            };
            report.u = u.iter().map(|x| x.to_string()).collect();
            report.eps = Some(eps.to_string());
            let (entries, shifted) = qde_residual_c_with(cfg.k, cfg.n, cfg.order, &u, &eps, 0.0, cfg.exec)?;
            report.entries = entries;
            shifted
        }
        CMode::Numeric => {
            let u: Vec<f64> = match &cfg.u {
                Some(u) => {
                    check_distinct(u, cfg.n)?;
                    u.iter().map(<f64 as Field>::from_rational).collect()
                }
                None => sampling::distinct_floats(&mut rng, cfg.n, -3.0, 3.0, 0.2),
            };
            let eps = match &cfg.eps {
                Some(e) => <f64 as Field>::from_rational(e),
                None => sampling::float_in(&mut rng, 0.5, 1.5),
            };
            report.u = u.iter().map(|x| format!("{x:e}")).collect();
            report.eps = Some(format!("{eps:e}"));
            report.tolerance = Some(cfg.tol);
            let (entries, shifted) = qde_residual_c_with(cfg.k, cfg.n, cfg.order, &u, &eps, cfg.tol, cfg.exec)?;
            report.entries = entries;
            shifted
        }
    };
    if shifted {
        report.normalization.push(format!(
            "resonant weights: columns at some fixed points multiplied by prod RF((u_r - u_l)/eps + 1, {})",
            cfg.order
        ));
    }
    let mut report = report.finish();
    if !report.pass && cfg.rerun_on_failure && cfg.u.is_none() {
        let again = CQdeConfig { seed: cfg.seed.wrapping_add(1), rerun_on_failure: false, ..cfg.clone() };
        report.rerun = Some(Box::new(qde_residual_kn(&again)?));
    }
    Ok(report)
}

/// The projective-space case, checked through the same machinery with k = 1.
pub fn qde_residual_1n(cfg: &CQdeConfig) -> Result<QdeReport> {
    if cfg.k != 1 {
        return Err(Error::InvalidShape("qde_residual_1n needs k = 1".into()));
    }
    qde_residual_kn(cfg)
}

/// det(x_i^{lambda_j + k - j}) / prod_{i<j} (x_i - x_j).
pub fn schur(lambda: &Partition) -> Result<MultiPoly> {
    let k = lambda.k();
    let x: Vec<MultiPoly> = (1..=k).map(|i| MultiPoly::var(Var::x(i))).collect();
    let m = (0..k)
        .map(|i| (0..k).map(|j| x[i].pow(lambda.0[j] + (k - 1 - j) as u32)).collect())
        .collect();
    let mut v = poly_det(m)?;
    for i in 0..k {
        for j in i + 1..k {
            v = v.exact_div(&(&x[i] - &x[j]))?;
        }
    }
    Ok(v)
}

/// Nonequivariant column at u = 0, built from ordinary Schur polynomials:
/// order m is the sum over |d| = m of the Vandermonde prefactor times
/// s_lambda(x + d eps) eps^{-n|d|} / prod_b RF(x_b/eps + 1, d_b)^n.
pub fn nonequiv_psi_c<F: Field>(lambda: &Partition, order: usize, n: usize, x: &[F], eps: &F) -> Result<SeriesZ<F>> {
    check_eps(eps)?;
    let s = schur(lambda)?;
    let k = lambda.k();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut c = F::zero();
        for d in compositions(m as u32, k) {
            let mut t = if ((k + 1) * m) % 2 == 1 { -F::one() } else { F::one() };
            for i in 0..k {
                for j in i + 1..k {
                    let w = (x[i].clone() - x[j].clone()).div(eps)?;
                    t = t * (w.clone() + F::from_int(d[i] as i64 - d[j] as i64)).div(&w)?;
                }
            }
            let xs: Vec<F> = x
                .iter()
                .zip(&d)
                .map(|(xb, &db)| xb.clone() + eps.clone() * F::from_int(db as i64))
                .collect();
            t = t * eval_rep(&s, &xs, &[])? * eps.powi(-((n * m) as i64))?;
            for (b, xb) in x.iter().enumerate() {
                let r = rising(&(xb.div(eps)? + F::one()), d[b]);
                t = t.div(&r.powi(n as i64)?)?;
            }
            c = c + t;
        }
        coeffs.push(c);
    }
    Ok(SeriesZ::from_coeffs(coeffs, order))
}

/// Compares `nonequiv_psi_c` with the closed form at u = 0, at a rational x.
pub fn check_nonequiv_c(lambda: &Partition, order: usize, n: usize, x: &[Rational], eps: &Rational) -> Result<bool> {
    let rep = factorial_schur(lambda)?.value;
    let zeros = vec![rat(0); n];
    let closed = psi_series_c(&rep, x, &zeros, eps, order, Normalization::Plain)?;
    Ok(closed == nonequiv_psi_c(lambda, order, n, x, eps)?)
}

/// Finds e with coeff_m(c eps, c u, c x) = c^e coeff_m(eps, u, x), for |e| <= 64.
/// Returns None when the coefficient vanishes or no such e exists.
pub fn measure_eps_scaling(
    lambda: &Partition,
    m: usize,
    x: &[Rational],
    u: &[Rational],
    eps: &Rational,
    c: &Rational,
) -> Result<Option<i64>> {
    let rep = factorial_schur(lambda)?.value;
    let base = psi_series_c(&rep, x, u, eps, m, Normalization::Plain)?.coeff(m).clone();
    let scale = |v: &[Rational]| v.iter().map(|a| a * c).collect::<Vec<_>>();
    let scaled = psi_series_c(&rep, &scale(x), &scale(u), &(eps * c), m, Normalization::Plain)?
        .coeff(m)
        .clone();
    if num::Zero::is_zero(&base) {
        return Ok(None);
    }
    let ratio = scaled / base;
    Ok((-64..=64).find(|&e| <Rational as Field>::powi(c, e).map(|p| p == ratio).unwrap_or(false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::ratio;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn rising_and_gamma_shift() {
        assert_eq!(rising(&rat(3), 0), rat(1));
        assert_eq!(rising(&rat(3), 3), rat(60));
        assert_eq!(gamma_shift(&rat(5), -2).unwrap(), ratio(1, 12));
        assert!(gamma_shift(&rat(1), -1).is_err());
    }

    #[test]
    fn coeff_1n_examples() {
        let x = RatFunc::var(Var::x(1));
        let u1 = RatFunc::var(Var::u(1));
        let eps = RatFunc::var(Var::Eps);
        let one = factorial_schur(&Partition(vec![0])).unwrap().value;
        let c = coeff_1n(&one, 1, &x, &[u1.clone()], &eps, Normalization::Plain).unwrap();
        let expect = RatFunc::one().div(&(x - u1 + eps)).unwrap();
        assert_eq!(c, expect);
        let s1 = factorial_schur(&Partition(vec![1])).unwrap().value;
        let c0 = coeff_1n(&s1, 0, &rat(5), &r(&[2, 5]), &rat(1), Normalization::Plain).unwrap();
        assert_eq!(c0, rat(3));
    }

    #[test]
    fn coeff_kn_prefactor() {
        let one = MultiPoly::one();
        let x = [ratio(7, 2), ratio(1, 3)];
        let u: Vec<Rational> = vec![];
        let c = coeff_kn(&one, &[1, 0], &x, &u, &rat(1), Normalization::Plain).unwrap();
        let t = &x[0] - &x[1];
        assert_eq!(c, -(&t + rat(1)) / t);
        assert_eq!(
            coeff_kn(&one, &[0, 0], &[rat(1), rat(1)], &u, &rat(1), Normalization::Plain),
            Err(Error::DegenerateFixedPoint)
        );
    }

    #[test]
    fn gamma_ratio_small() {
        assert!(check_gamma_ratio(&[0, 0]).unwrap());
        assert!(check_gamma_ratio(&[1, 0]).unwrap());
        assert!(check_gamma_ratio(&[2, 0, 1]).unwrap());
    }

    #[test]
    fn residual_gr12_integer_weights() {
        let mut cfg = CQdeConfig::new(1, 2, 3, CMode::Exact, 0);
        cfg.u = Some(r(&[2, 5]));
        cfg.eps = Some(rat(1));
        let rep = qde_residual_1n(&cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.entries);
        assert_eq!(rep.normalization.len(), 2);
    }

    #[test]
    fn residual_gr24_integer_weights() {
        let mut cfg = CQdeConfig::new(2, 4, 3, CMode::Exact, 0);
        cfg.u = Some(r(&[2, 3, 5, 7]));
        cfg.eps = Some(rat(1));
        assert!(qde_residual_kn(&cfg).unwrap().pass);
    }

    #[test]
    fn residual_gr23_numeric() {
        let rep = qde_residual_kn(&CQdeConfig::new(2, 3, 4, CMode::Numeric, 5)).unwrap();
        assert!(rep.pass);
        assert!(rep.max_residual.unwrap() < 1e-10);
    }

    #[test]
    fn satake_matches_closed_form() {
        let u = vec![ratio(1, 2), ratio(-3, 1), ratio(5, 3), ratio(2, 7)];
        let res = check_satake(2, 4, 2, &u, &ratio(3, 4)).unwrap();
        assert_eq!(res.len(), 36);
        assert!(res.iter().all(|t| t.2));
    }

    #[test]
    fn satake_order_zero_is_one() {
        let x = [rat(2), rat(3)];
        let w = satake_wedge(&Partition(vec![0, 0]), 0, &x, &r(&[2, 3, 5, 7]), &rat(1), Normalization::Plain)
            .unwrap();
        assert_eq!(w.coeff(0), &rat(1));
    }

    #[test]
    fn nonequiv_single_point() {
        let s = nonequiv_psi_c(&Partition(vec![0]), 2, 1, &[ratio(1, 3)], &ratio(1, 2)).unwrap();
        // 1/((x + eps)(x + 2 eps)) at x = 1/3, eps = 1/2
        assert_eq!(s.coeff(2), &(rat(1) / (ratio(5, 6) * ratio(4, 3))));
        assert!(check_nonequiv_c(&Partition(vec![2, 1]), 2, 4, &[ratio(2, 3), ratio(-1, 5)], &ratio(3, 2)).unwrap());
    }

    #[test]
    fn permutation_parity() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|x| x.1).count(), 3);
    }
}
