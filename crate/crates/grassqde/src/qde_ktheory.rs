//! The q-difference equation Psi(qz) O(-1) = M(z) Psi(z) for equivariant
//! quantum K-theory of Gr(k,n), checked order by order at every fixed point.
//!
//! Only the ratios Phi(x q^d)/Phi(x) of the infinite q-Pochhammer prefactor
//! are ever formed. At a fixed point the column is normalized by Phi(u_r, u),
//! which is independent of z, so it cancels from both sides.

use serde::Serialize;

use crate::boxcomb::{compositions, frames, KSubset, Partition};
use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Field, Monomial, MultiPoly, RatFunc, Rational, SeriesZ, Var};
use crate::par::Exec;
use crate::pieri_ops::pieri_matrix_k;
use crate::report::{collect_entries, frame_residuals, PointResidual, QdeReport, ResidualEntry};
use crate::sampling;
use crate::schubert_polys::{eval_rep, nonequivariant_limit, schubert_poly, schubert_table};
use crate::Theory;

/// Multiplies the finite form of (a q^{d+1}; q)_inf / (a q; q)_inf into `num`/`den`.
fn qpoch_factors<F: Field>(a: &F, d: i64, q: &F, num: &mut F, den: &mut F) -> Result<()> {
    if d >= 0 {
        for m in 1..=d {
            *den = den.clone() * (F::one() - a.clone() * q.powi(m)?);
        }
    } else {
        for m in d + 1..=0 {
            *num = num.clone() * (F::one() - a.clone() * q.powi(m)?);
        }
    }
    Ok(())
}

/// (a q^{d} q; q)_inf / (a q; q)_inf: prod_{m=1}^{d} (1 - a q^m)^{-1} for d >= 0,
/// prod_{m=d+1}^{0} (1 - a q^m) for d < 0.
pub fn qpoch_ratio<F: Field>(a: &F, d: i64, q: &F) -> Result<F> {
    let mut num = F::one();
    let mut den = F::one();
    qpoch_factors(a, d, q, &mut num, &mut den)?;
    num.div(&den).map_err(|_| Error::PoleAtPoint)
}

/// Phi(x q^d, u) / Phi(x, u) with
/// Phi(x, u) = prod_{b,l} (x_b q/u_l; q)_inf / prod_{b,c} (x_b q/x_c; q)_inf.
pub fn phi_ratio<F: Field>(d: &[u32], x: &[F], u: &[F], q: &F) -> Result<F> {
    let mut num = F::one();
    let mut den = F::one();
    for (b, xb) in x.iter().enumerate() {
        for ul in u {
            let a = xb.div(ul).map_err(|_| Error::DegenerateWeights("zero weight".into()))?;
            qpoch_factors(&a, d[b] as i64, q, &mut num, &mut den)?;
        }
        for (c, xc) in x.iter().enumerate() {
            if b == c {
                continue;
            }
            let a = xb.div(xc).map_err(|_| Error::DegenerateWeights("zero coordinate".into()))?;
            // a denominator pair: numerator and denominator swap roles
            qpoch_factors(&a, d[b] as i64 - d[c] as i64, q, &mut den, &mut num)?;
        }
    }
    if den.is_zero() {
        return Err(Error::DegenerateWeights("a q-Pochhammer factor vanishes".into()));
    }
    num.div(&den)
}

/// phi_ratio(d) times the frame constant prod_{b,l} (x_b q/u_l; q)_D, a polynomial in q:
/// prod_{b,l} prod_{m=d_b+1}^{D} (1 - x_b q^m/u_l) times, for each pair b<c with e = d_b - d_c > 0,
/// (1 - a q^e)/(1 - a) (-a)^e q^{e(e-1)/2} where a = x_b/x_c (roles swap when e < 0).
pub fn phi_scaled<F: Field>(d: &[u32], x: &[F], u: &[F], q: &F, order: u32) -> Result<F> {
    let mut acc = F::one();
    for (b, xb) in x.iter().enumerate() {
        if d[b] > order {
            return Err(Error::InvalidShape(format!("degree {} beyond order {order}", d[b])));
        }
        for ul in u {
            let a = xb.div(ul).map_err(|_| Error::DegenerateWeights("zero weight".into()))?;
            for m in d[b] + 1..=order {
                acc = acc * (F::one() - a.clone() * q.powi(m as i64)?);
            }
        }
        for c in b + 1..x.len() {
            let (num, den, e) = match d[b].cmp(&d[c]) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Greater => (xb, &x[c], d[b] - d[c]),
                std::cmp::Ordering::Less => (&x[c], xb, d[c] - d[b]),
            };
            let a = num.div(den).map_err(|_| Error::DegenerateWeights("zero coordinate".into()))?;
            let one_minus = F::one() - a.clone();
            if one_minus.is_zero() {
                return Err(Error::DegenerateFixedPoint);
            }
            let e = e as i64;
            acc = acc * (F::one() - a.clone() * q.powi(e)?).div(&one_minus)?
                * (-a).powi(e)?
                * q.powi(e * (e - 1) / 2)?;
        }
    }
    Ok(acc)
}

/// Coefficients of the normalized column: order m is
/// sum_{|d| = m} phi_ratio(d) * G(x_1 q^{d_1}, ..., x_k q^{d_k}; u).
pub fn psi_series<F: Field>(rep: &MultiPoly, x: &[F], u: &[F], q: &F, order: usize) -> Result<SeriesZ<F>> {
    let shifted = ShiftTable::new(x, u, q, order, false)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut c = F::zero();
        for (_, phi, xs) in &shifted.layers[m] {
            c = c + phi.clone() * eval_rep(rep, xs, u)?;
        }
        coeffs.push(c);
    }
    Ok(SeriesZ::from_coeffs(coeffs, order))
}

/// Per-fixed-point data shared by all partitions: for every degree vector d
/// the ratio phi(d) (or its polynomial rescaling) and the shifted point x q^d.
struct ShiftTable<F> {
    layers: Vec<Vec<(Vec<u32>, F, Vec<F>)>>,
}

impl<F: Field> ShiftTable<F> {
    fn new(x: &[F], u: &[F], q: &F, order: usize, scaled: bool) -> Result<Self> {
        let k = x.len();
        let mut layers = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut layer = Vec::new();
            for d in compositions(m as u32, k) {
                let phi = if scaled { phi_scaled(&d, x, u, q, order as u32)? } else { phi_ratio(&d, x, u, q)? };
                let xs = x
                    .iter()
                    .zip(&d)
                    .map(|(xb, &db)| Ok(xb.clone() * q.powi(db as i64)?))
                    .collect::<Result<Vec<F>>>()?;
                layer.push((d, phi, xs));
            }
            layers.push(layer);
        }
        Ok(ShiftTable { layers })
    }
}

/// Normalized restriction of Psi_lambda to the fixed point r.
#[derive(Clone, Debug)]
pub struct PsiColumnK {
    pub lambda: Partition,
    pub frame: KSubset,
    pub series: SeriesZ<RatFunc>,
}

/// Fully symbolic column (q and u symbolic).
pub fn psi_column(lambda: &Partition, r: &KSubset, order: usize, n: usize) -> Result<PsiColumnK> {
    let rep = schubert_poly(Theory::KTheory, lambda)?.value;
    let u: Vec<RatFunc> = (1..=n).map(|i| RatFunc::var(Var::u(i))).collect();
    let x: Vec<RatFunc> = r.0.iter().map(|&i| u[i - 1].clone()).collect();
    let series = psi_series(&rep, &x, &u, &RatFunc::var(Var::Q), order)?;
    Ok(PsiColumnK { lambda: lambda.clone(), frame: r.clone(), series })
}

/// All columns at frame `r`, one per partition, rescaled by the frame constant
/// prod_{b,l} (u_{r_b} q/u_l; q)_D so that every coefficient is a polynomial in q.
fn columns_at_frame<F: Field>(
    reps: &[MultiPoly],
    x: &[F],
    u: &[F],
    q: &F,
    order: usize,
) -> Result<Vec<Vec<F>>> {
    let table = ShiftTable::new(x, u, q, order, true)?;
    reps.iter()
        .map(|rep| {
            (0..=order)
                .map(|m| {
                    let mut c = F::zero();
                    for (_, phi, xs) in &table.layers[m] {
                        c = c + phi.clone() * eval_rep(rep, xs, u)?;
                    }
                    Ok(c)
                })
                .collect()
        })
        .collect()
}

/// Runs the residual check at every fixed point in the chosen field.
pub fn qde_residual_k_with<F: Field>(
    k: usize,
    n: usize,
    order: usize,
    u: &[F],
    q: &F,
    tol: f64,
    exec: Exec,
) -> Result<Vec<ResidualEntry>> {
    let fr = frames(k, n)?;
    let parts: Vec<Partition> = fr.iter().map(|f| f.0.clone()).collect();
    let reps = schubert_table(Theory::KTheory, &parts, exec)?;
    let (m0, m1) = pieri_matrix_k(k, n, exec)?.eval(u)?;
    let per_frame = exec.map(&fr, |(_, r)| -> Result<Vec<Vec<PointResidual>>> {
        let x: Vec<F> = r.0.iter().map(|&i| u[i - 1].clone()).collect();
        let weight = x.iter().fold(F::one(), |acc, v| acc * v.clone());
        let cols = columns_at_frame(&reps, &x, u, q, order)?;
        // q^m c_m[lambda] prod u_{r_b} against the transposed action of M
        let factor = |m: usize| Ok(q.powi(m as i64)? * weight.clone());
        frame_residuals(&cols, &m0, &m1, &factor, order, tol)
    });
    let per_frame = per_frame.into_iter().collect::<Result<Vec<_>>>()?;
    let subsets: Vec<KSubset> = fr.into_iter().map(|f| f.1).collect();
    Ok(collect_entries::<F>(&parts, &subsets, &per_frame, order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KMode {
    /// q symbolic, u random distinct rationals.
    ExactQ,
    /// q and u symbolic; small cases only.
    Symbolic,
    /// Floating point q and u.
    Numeric,
}

#[derive(Clone, Debug)]
pub struct KQdeConfig {
    pub k: usize,
    pub n: usize,
    pub order: usize,
    pub mode: KMode,
    pub seed: u64,
    pub u: Option<Vec<Rational>>,
    pub q: Option<f64>,
    pub tol: f64,
    /// Retry once at a fresh random point when a check fails.
    pub rerun_on_failure: bool,
    pub exec: Exec,
}

impl KQdeConfig {
    pub fn new(k: usize, n: usize, order: usize, mode: KMode, seed: u64) -> Self {
        KQdeConfig { k, n, order, mode, seed, u: None, q: None, tol: 1e-10, rerun_on_failure: true, exec: Exec::default() }
    }
}

fn check_weights(u: &[Rational], n: usize) -> Result<()> {
    if u.len() != n {
        return Err(Error::InvalidShape(format!("expected {n} weights, got {}", u.len())));
    }
    if u.iter().any(num::Zero::is_zero) {
        return Err(Error::DegenerateWeights("zero weight".into()));
    }
    for i in 0..n {
        if u[i + 1..].contains(&u[i]) {
            return Err(Error::DegenerateWeights("repeated weight".into()));
        }
    }
    Ok(())
}

pub fn qde_residual_k(cfg: &KQdeConfig) -> Result<QdeReport> {
    if cfg.order > 6 {
        return Err(Error::InvalidShape("order must be at most 6".into()));
    }
    let mut rng = sampling::rng(cfg.seed);
    let mut report = QdeReport {
        theory: Theory::KTheory,
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
            "columns divided by Phi(u_r, u) at each fixed point".into(),
            format!("then multiplied by prod_(b,l) (u_(r_b) q/u_l; q)_{}", cfg.order),
        ],
        entries: Vec::new(),
        pass: false,
        max_residual: None,
        rerun: None,
    };
    match cfg.mode {
        KMode::ExactQ => {
            report.mode = "exact_q".into();
            let u = match &cfg.u {
                Some(u) => u.clone(),
                None => sampling::distinct_rationals(&mut rng, cfg.n, 2, 1000, 4),
            };
            check_weights(&u, cfg.n)?;
            report.u = u.iter().map(|x| x.to_string()).collect();
            report.q = Some("q".into());
            let uf: Vec<RatFunc> = u.iter().map(|x| RatFunc::constant(x.clone())).collect();
            report.entries = qde_residual_k_with(
                cfg.k, cfg.n, cfg.order, &uf, &RatFunc::var(Var::Q), 0.0, cfg.exec,
            )?;
        }
        KMode::Symbolic => {
            if cfg.k != 1 || cfg.n > 3 {
                return Err(Error::InvalidShape("symbolic mode supports Gr(1,2) and Gr(1,3)".into()));
            }
            report.u = (1..=cfg.n).map(|i| format!("u{i}")).collect();
            report.q = Some("q".into());
            let uf: Vec<RatFunc> = (1..=cfg.n).map(|i| RatFunc::var(Var::u(i))).collect();
            report.entries = qde_residual_k_with(
                cfg.k, cfg.n, cfg.order, &uf, &RatFunc::var(Var::Q), 0.0, cfg.exec,
            )?;
        }
        KMode::Numeric => {
            let u: Vec<f64> = match &cfg.u {
                Some(u) => {
                    check_weights(u, cfg.n)?;
                    u.iter().map(<f64 as Field>::from_rational).collect()
                }
                None => sampling::distinct_floats(&mut rng, cfg.n, 1.0, 4.0, 0.2),
            };
            let q = cfg.q.unwrap_or_else(|| sampling::float_in(&mut rng, 0.2, 0.6));
            report.u = u.iter().map(|x| format!("{x:e}")).collect();
            report.q = Some(format!("{q:e}"));
            report.tolerance = Some(cfg.tol);
            report.entries = qde_residual_k_with(cfg.k, cfg.n, cfg.order, &u, &q, cfg.tol, cfg.exec)?;
        }
    }
    let mut report = report.finish();
    if !report.pass && cfg.rerun_on_failure && cfg.u.is_none() && cfg.mode != KMode::Symbolic {
        let again = KQdeConfig { seed: cfg.seed.wrapping_add(1), rerun_on_failure: false, ..cfg.clone() };
        let second = qde_residual_k(&again)?;
        report.rerun = Some(Box::new(second));
    }
    Ok(report)
}

/// Nonequivariant column with x kept as given and u = 1:
/// order m is sum_{|d|=m} prod_b R(x_b, d_b)^n / prod_{b,c} R(x_b/x_c, d_b-d_c) * G(x q^d),
/// where G is the stable Grothendieck polynomial.
pub fn nonequiv_psi_k<F: Field>(lambda: &Partition, order: usize, n: usize, x: &[F], q: &F) -> Result<SeriesZ<F>> {
    let stable = nonequivariant_limit(&schubert_poly(Theory::KTheory, lambda)?)?;
    let k = lambda.k();
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut c = F::zero();
        for d in compositions(m as u32, k) {
            let mut num = F::one();
            let mut den = F::one();
            for b in 0..k {
                for _ in 0..n {
                    qpoch_factors(&x[b], d[b] as i64, q, &mut num, &mut den)?;
                }
                for cc in 0..k {
                    if cc != b {
                        let a = x[b].div(&x[cc])?;
                        qpoch_factors(&a, d[b] as i64 - d[cc] as i64, q, &mut den, &mut num)?;
                    }
                }
            }
            let phi = num.div(&den).map_err(|_| Error::PoleAtPoint)?;
            let xs = x
                .iter()
                .zip(&d)
                .map(|(xb, &db)| Ok(xb.clone() * q.powi(db as i64)?))
                .collect::<Result<Vec<F>>>()?;
            c = c + phi * eval_rep(&stable, &xs, &[])?;
        }
        coeffs.push(c);
    }
    Ok(SeriesZ::from_coeffs(coeffs, order))
}

/// Compares `nonequiv_psi_k` with the equivariant construction at u = (1,...,1),
/// both at the same rational x with q symbolic.
pub fn check_nonequiv_k(lambda: &Partition, order: usize, n: usize, x: &[Rational]) -> Result<bool> {
    let q = RatFunc::var(Var::Q);
    let xf: Vec<RatFunc> = x.iter().map(|v| RatFunc::constant(v.clone())).collect();
    let ones = vec![RatFunc::constant(rat(1)); n];
    let rep = schubert_poly(Theory::KTheory, lambda)?.value;
    let equivariant = psi_series(&rep, &xf, &ones, &q, order)?;
    let direct = nonequiv_psi_k(lambda, order, n, &xf, &q)?;
    Ok(equivariant == direct)
}

fn finite_ratio(a: &Monomial, e: i64, num: &mut Vec<MultiPoly>, den: &mut Vec<MultiPoly>) {
    // (a q; q)_inf / (a q^e q; q)_inf
    let factor = |m: i64| {
        MultiPoly::one() - MultiPoly::term(a.mul(&Monomial::var_pow(Var::Q, m as i32)), rat(1))
    };
    if e >= 0 {
        num.extend((1..=e).map(factor));
    } else {
        den.extend((e + 1..=0).map(factor));
    }
}

/// prod_{i<j} (x_j q^{d_j} - x_i q^{d_i}) = W(d)^{-1} prod_{b,c} (x_b q/x_c; q)_inf / (x_b q^{d_b-d_c} q/x_c; q)_inf
/// with W(d) = prod_{i<j} (x_j - x_i)^{-1} (-x_j/x_i)^{d_j-d_i} q^{(d_j-d_i)(d_j-d_i-1)/2 - d_i},
/// checked exactly with x and q symbolic.
pub fn check_pochsplit(d: &[u32]) -> Result<bool> {
    let k = d.len();
    let x = |i: usize| MultiPoly::var(Var::x(i + 1));
    let q_pow = |e: i64| Monomial::var_pow(Var::Q, e as i32);
    let mut lhs = MultiPoly::one();
    for j in 0..k {
        for i in 0..j {
            let t = x(j).mul_monomial(&q_pow(d[j] as i64)) - x(i).mul_monomial(&q_pow(d[i] as i64));
            lhs = lhs * t;
        }
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    for j in 0..k {
        for i in 0..j {
            let e = d[j] as i64 - d[i] as i64;
            // W^{-1} factor: (x_j - x_i) (-x_j/x_i)^{-e} q^{-(e(e-1)/2 - d_i)}
            let mono = Monomial::from_pairs([
                (Var::x(j + 1), -(e as i32)),
                (Var::x(i + 1), e as i32),
                (Var::Q, -((e * (e - 1) / 2 - d[i] as i64) as i32)),
            ]);
            let sign = if e % 2 == 0 { 1 } else { -1 };
            num.push((x(j) - x(i)).mul_monomial(&mono).scale(&rat(sign)));
        }
    }
    for b in 0..k {
        for c in 0..k {
            if b != c {
                let a = Monomial::from_pairs([(Var::x(b + 1), 1), (Var::x(c + 1), -1)]);
                finite_ratio(&a, d[b] as i64 - d[c] as i64, &mut num, &mut den);
            }
        }
    }
    let rhs_num = MultiPoly::product(&num);
    let rhs_den = MultiPoly::product(&den);
    Ok(lhs * rhs_den == rhs_num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::ratio;

    fn q() -> RatFunc {
        RatFunc::var(Var::Q)
    }
    fn c(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }

    #[test]
    fn qpoch_closed_forms() {
        let a = RatFunc::var(Var::x(1)).div(&RatFunc::var(Var::u(1))).unwrap();
        assert_eq!(qpoch_ratio(&a, 0, &q()).unwrap(), c(1));
        let two = qpoch_ratio(&a, 2, &q()).unwrap();
        let expect = (c(1) - a.clone() * q()) * (c(1) - a.clone() * q() * q());
        assert_eq!(two * expect, c(1));
        assert_eq!(qpoch_ratio(&a, -1, &q()).unwrap(), c(1) - a);
    }

    #[test]
    fn phi_ratio_gr12() {
        let u = [RatFunc::var(Var::u(1)), RatFunc::var(Var::u(2))];
        let x = [u[0].clone()];
        let phi = phi_ratio(&[1], &x, &u, &q()).unwrap();
        let a = u[0].div(&u[1]).unwrap();
        let expect = (c(1) - q()) * (c(1) - a * q());
        assert_eq!(phi * expect, c(1));
        let phi1 = phi_ratio(&[1], &x[..], &u[..1], &q()).unwrap();
        assert_eq!(phi1 * (c(1) - q()), c(1));
    }

    #[test]
    fn scaled_phi_is_rescaling() {
        let u: Vec<RatFunc> = [2, 5, 3].iter().map(|&v| c(v)).collect();
        let x = vec![u[2].clone(), u[0].clone()];
        let order = 3;
        let mut frame = c(1);
        for xb in &x {
            for ul in &u {
                frame = frame * qpoch_ratio(&xb.div(ul).unwrap(), order, &q()).unwrap();
            }
        }
        for d in [[0u32, 0], [1, 0], [0, 2], [3, 0], [1, 2]] {
            let direct = phi_ratio(&d, &x, &u, &q()).unwrap().div(&frame).unwrap();
            assert_eq!(phi_scaled(&d, &x, &u, &q(), order as u32).unwrap(), direct);
        }
    }

    #[test]
    fn column_z0_is_restriction() {
        let col = psi_column(&Partition(vec![1]), &KSubset(vec![2]), 2, 2).unwrap();
        let u1 = RatFunc::var(Var::u(1));
        let u2 = RatFunc::var(Var::u(2));
        assert_eq!(col.series.coeff(0), &(c(1) - u2.div(&u1).unwrap()));
    }

    #[test]
    fn residual_gr12_exact() {
        let mut cfg = KQdeConfig::new(1, 2, 3, KMode::ExactQ, 0);
        cfg.u = Some(vec![rat(2), rat(5)]);
        let r = qde_residual_k(&cfg).unwrap();
        assert!(r.pass, "{:?}", r.entries);
        assert_eq!(r.entries.len(), 8);
    }

    #[test]
    fn residual_symbolic_gr12() {
        let r = qde_residual_k(&KQdeConfig::new(1, 2, 2, KMode::Symbolic, 0)).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn residual_numeric_gr24() {
        let r = qde_residual_k(&KQdeConfig::new(2, 4, 3, KMode::Numeric, 11)).unwrap();
        assert!(r.pass, "{}", serde_json::to_string(&r).unwrap());
        assert!(r.max_residual.unwrap() < 1e-10);
    }

    #[test]
    fn pochsplit_small() {
        assert!(check_pochsplit(&[0]).unwrap());
        assert!(check_pochsplit(&[2]).unwrap());
        assert!(check_pochsplit(&[1, 0]).unwrap());
        assert!(check_pochsplit(&[2, 1, 0]).unwrap());
    }

    #[test]
    fn nonequiv_matches() {
        let x = [ratio(3, 7), ratio(-5, 2)];
        assert!(check_nonequiv_k(&Partition(vec![1, 0]), 2, 4, &x).unwrap());
    }
}
