//! Bethe equations for both theories, numeric root tracking from z = 0, and
//! comparison of the predicted spectrum with the Pieri operators.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::boxcomb::{frames, KSubset, Partition};
use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Complex64, Matrix, Monomial, MultiPoly, Var};
use crate::par::Exec;
use crate::pieri_ops::pieri_matrix;
use crate::schubert_polys::{eval_rep, schubert_table};
use crate::Theory;

/// k polynomial equations in x_1..x_k, symbolic in u and z; `u` and `z` hold the
/// numeric point they are solved at.
#[derive(Clone, Debug, Serialize)]
pub struct BetheSystem {
    pub theory: Theory,
    pub k: usize,
    pub n: usize,
    pub u: Vec<f64>,
    pub z: f64,
    pub equations: Vec<MultiPoly>,
}

fn var(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

/// Cohomology: prod_l (x_j - u_l) - (-1)^{k-1} z.
/// K-theory, cleared of denominators: prod_l (u_l - x_j) prod_{i != j} x_i - z prod_l u_l (-x_j)^{k-1}.
pub fn build_bethe(theory: Theory, k: usize, n: usize, u: &[f64], z: f64) -> Result<BetheSystem> {
    if u.len() != n || k == 0 || k > n {
        return Err(Error::InvalidShape(format!("need 1 <= k <= n and {n} weights")));
    }
    if theory == Theory::KTheory && u.contains(&0.0) {
        return Err(Error::DegenerateWeights("K-theory weights must be nonzero".into()));
    }
    let zsym = var(Var::Z);
    let mut equations = Vec::with_capacity(k);
    for j in 1..=k {
        let xj = var(Var::x(j));
        let eq = match theory {
            Theory::Cohomology => {
                let p = MultiPoly::product(&(1..=n).map(|l| &xj - &var(Var::u(l))).collect::<Vec<_>>());
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p - zsym.scale(&rat(sign))
            }
            Theory::KTheory => {
                let mut left = MultiPoly::product(&(1..=n).map(|l| &var(Var::u(l)) - &xj).collect::<Vec<_>>());
                for i in (1..=k).filter(|&i| i != j) {
                    left = left * var(Var::x(i));
                }
                let us = MultiPoly::term(Monomial::from_pairs((1..=n).map(|l| (Var::u(l), 1))), rat(1));
                let right = zsym.mul_ref(&us).mul_ref(&(-xj.clone()).pow((k - 1) as u32));
                left - right
            }
        };
        equations.push(eq);
    }
    Ok(BetheSystem { theory, k, n, u: u.to_vec(), z, equations })
}

#[derive(Clone, Debug, Serialize)]
pub struct BetheRoots {
    pub frame: KSubset,
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// "seed" when the path starts at x = u_r, "puiseux" for repeated weights.
    pub start: String,
    pub steps: usize,
}

impl BetheSystem {
    fn value(&self, eq: &MultiPoly, x: &[Complex64], z: Complex64) -> Result<Complex64> {
        eq.eval(&|v| match v {
            Var::X(i) => x.get(i as usize - 1).copied(),
            Var::U(i) => self.u.get(i as usize - 1).map(|&w| Complex64::new(w, 0.0)),
            Var::Z => Some(z),
            _ => None,
        })
    }

    fn residual(&self, x: &[Complex64], z: Complex64) -> Result<Vec<Complex64>> {
        self.equations.iter().map(|e| self.value(e, x, z)).collect()
    }

    fn jacobian(&self, derivs: &[Vec<MultiPoly>], x: &[Complex64], z: Complex64) -> Result<DMatrix<Complex64>> {
        let k = self.k;
        let mut j = DMatrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                j[(a, b)] = self.value(&derivs[a][b], x, z)?;
            }
        }
        Ok(j)
    }

    /// Scale for residuals: the largest equation term magnitude at x.
    fn scale(&self, x: &[Complex64]) -> f64 {
        let m = x.iter().map(|v| v.norm()).chain(self.u.iter().map(|w| w.abs())).fold(1.0, f64::max);
        m.powi(self.n as i32 + self.k as i32 - 1).max(self.z.abs())
    }
}

/// Newton's method at fixed z; on success also returns the iteration count.
fn newton(
    sys: &BetheSystem,
    derivs: &[Vec<MultiPoly>],
    mut x: Vec<Complex64>,
    z: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<std::result::Result<(Vec<Complex64>, usize), f64>> {
    let mut cond = f64::INFINITY;
    for it in 0..max_iter {
        let f = sys.residual(&x, z)?;
        let fnorm = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if fnorm <= tol * sys.scale(&x) {
            return Ok(Ok((x, it)));
        }
        let jac = sys.jacobian(derivs, &x, z)?;
        let lu = jac.lu();
        let u = lu.u();
        let diag: Vec<f64> = (0..sys.k).map(|i| u[(i, i)].norm()).collect();
        let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = diag.iter().cloned().fold(0.0, f64::max);
        cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        let rhs = nalgebra::DVector::from_vec(f);
        let Some(step) = lu.solve(&rhs) else {
            return Ok(Err(cond));
        };
        for i in 0..sys.k {
            x[i] -= step[i];
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Ok(Err(cond));
        }
    }
    Ok(Err(cond))
}

/// Starting point on the path: x_j = u_{r_j}, or for a repeated weight u_0 of
/// multiplicity m (cohomology only) the leading Puiseux term
/// u_0 + (sigma z_0 / c)^{1/m} w^j, with j the position of r_j among the repeats.
fn start_point(sys: &BetheSystem, r: &KSubset, z0: Complex64) -> (Vec<Complex64>, bool) {
    let u = &sys.u;
    let mut puiseux = false;
    let sigma = if sys.k % 2 == 1 { 1.0 } else { -1.0 };
    let x = r
        .0
        .iter()
        .map(|&ri| {
            let u0 = u[ri - 1];
            let cluster: Vec<usize> = (1..=sys.n).filter(|&l| u[l - 1] == u0).collect();
            let m = cluster.len();
            if m == 1 || sys.theory == Theory::KTheory {
                return Complex64::new(u0, 0.0);
            }
            puiseux = true;
            let c: f64 = (1..=sys.n).filter(|l| !cluster.contains(l)).map(|l| u0 - u[l - 1]).product();
            let base = (z0 * sigma / c).powf(1.0 / m as f64);
            let pos = cluster.iter().position(|&l| l == ri).unwrap_or(0);
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * pos as f64 / m as f64);
            Complex64::new(u0, 0.0) + base * w
        })
        .collect();
    (x, puiseux)
}

/// Imaginary bulge of the continuation path; keeps it off the real branch points.
const DETOUR: f64 = 0.37;

fn path_z(target: f64, t: f64) -> Complex64 {
    Complex64::new(target * t, target * DETOUR * t * (1.0 - t))
}

fn path_dz(target: f64, t: f64) -> Complex64 {
    Complex64::new(target, target * DETOUR * (1.0 - 2.0 * t))
}

/// Tangent dx/dt = -J^{-1} (dF/dz) dz/dt, or None at a singular Jacobian.
fn tangent(
    sys: &BetheSystem,
    derivs: &[Vec<MultiPoly>],
    dz_eqs: &[MultiPoly],
    x: &[Complex64],
    z: Complex64,
    dz: Complex64,
) -> Result<Option<Vec<Complex64>>> {
    let jac = sys.jacobian(derivs, x, z)?;
    let rhs: Vec<Complex64> = dz_eqs.iter().map(|e| sys.value(e, x, z).map(|v| -v * dz)).collect::<Result<_>>()?;
    Ok(jac.lu().solve(&nalgebra::DVector::from_vec(rhs)).map(|v| v.iter().copied().collect()))
}

/// Tracks the root from z = 0 (x = u_r) to the system's z along a complex
/// detour, with a tangent predictor, a short Newton corrector and step halving.
pub fn solve_bethe(sys: &BetheSystem, r: &KSubset, tol: f64) -> Result<BetheRoots> {
    if r.0.len() != sys.k || r.0.iter().any(|&i| i == 0 || i > sys.n) {
        return Err(Error::InvalidShape(format!("frame {:?} does not fit Gr({},{})", r.0, sys.k, sys.n)));
    }
    let derivs: Vec<Vec<MultiPoly>> = sys
        .equations
        .iter()
        .map(|e| (1..=sys.k).map(|b| e.derivative(Var::x(b))).collect())
        .collect();
    let dz_eqs: Vec<MultiPoly> = sys.equations.iter().map(|e| e.derivative(Var::Z)).collect();
    let target = sys.z;
    let t0 = 1e-6;
    let (mut x, puiseux) = start_point(sys, r, if target == 0.0 { Complex64::new(0.0, 0.0) } else { path_z(target, t0) });
    let mut t = if puiseux { t0 } else { 0.0 };
    let mut steps = 0;
    if target != 0.0 {
        if puiseux {
            match newton(sys, &derivs, x.clone(), path_z(target, t), tol, 40)? {
                Ok((v, _)) => x = v,
                Err(cond) => return Err(Error::NonConvergence { step: 0, z: t * target, cond }),
            }
        }
        let mut h: f64 = 1.0 / 64.0;
        while t < 1.0 {
            let next = (t + h).min(1.0);
            let dt = next - t;
            let pred = tangent(sys, &derivs, &dz_eqs, &x, path_z(target, t), path_dz(target, t))?
                .map(|d| x.iter().zip(&d).map(|(a, b)| a + b * dt).collect::<Vec<_>>());
            let outcome = match &pred {
                Some(p) => newton(sys, &derivs, p.clone(), path_z(target, next), tol, 8)?,
                None => Err(f64::INFINITY),
            };
            let accepted = match (&outcome, &pred) {
                (Ok((v, iters)), Some(p)) => {
                    let moved = p.iter().zip(&x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    let corr = v.iter().zip(p).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                    let size = x.iter().map(|v| v.norm()).fold(1.0, f64::max);
                    *iters <= 6 && corr <= 0.25 * moved + 1e-9 * size
                }
                _ => false,
            };
            if accepted {
                if let Ok((v, _)) = outcome {
                    x = v;
                }
                t = next;
                steps += 1;
                h = (h * 1.5).min(1.0 / 16.0);
            } else {
                h /= 2.0;
                if h < 1e-9 {
                    let cond = outcome.err().unwrap_or(f64::INFINITY);
                    return Err(Error::NonConvergence { step: steps, z: next * target, cond });
                }
            }
        }
    }
    let z = Complex64::new(target, 0.0);
    let residuals = sys.residual(&x, z)?.iter().map(|v| v.norm()).collect();
    for i in 0..sys.k {
        for j in i + 1..sys.k {
            if (x[i] - x[j]).norm() < 1e-8 {
                return Err(Error::PathCollision(i, j));
            }
        }
    }
    Ok(BetheRoots {
        frame: r.clone(),
        roots: x,
        residuals,
        start: if puiseux { "puiseux".into() } else { "seed".into() },
        steps,
    })
}

/// Eigenvalue predicted by a Bethe root: sum_j x_j (cohomology), prod_j x_j (K-theory).
pub fn predicted_eigenvalue(theory: Theory, roots: &[Complex64]) -> Complex64 {
    match theory {
        Theory::Cohomology => roots.iter().sum(),
        Theory::KTheory => roots.iter().product(),
    }
}

/// Component lambda is the Schubert representative of lambda evaluated at x.
pub fn offshell_vector(theory: Theory, x: &[Complex64], k: usize, n: usize, u: &[f64]) -> Result<Vec<Complex64>> {
    let parts: Vec<Partition> = frames(k, n)?.into_iter().map(|f| f.0).collect();
    let reps = schubert_table(theory, &parts, Exec::sequential())?;
    let uc: Vec<Complex64> = u.iter().map(|&w| Complex64::new(w, 0.0)).collect();
    reps.iter().map(|p| eval_rep(p, x, &uc)).collect()
}

pub fn spectrum(m: &Matrix<f64>) -> Vec<Complex64> {
    let d = DMatrix::from_fn(m.rows(), m.cols(), |i, j| *m.get(i, j));
    d.complex_eigenvalues().iter().copied().collect()
}

/// ||A v - lambda v|| / ||v||.
pub fn eigen_residual(a: &Matrix<f64>, v: &[Complex64], lambda: Complex64) -> f64 {
    let n = v.len();
    let mut err = 0.0;
    let mut norm = 0.0;
    for i in 0..n {
        let mut s = -lambda * v[i];
        for j in 0..n {
            s += v[j] * *a.get(i, j);
        }
        err += s.norm_sqr();
        norm += v[i].norm_sqr();
    }
    (err / norm.max(1e-300)).sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    pub frame: KSubset,
    pub predicted: Complex64,
    pub eigenvalue: Complex64,
    pub distance: f64,
    /// ||M^T v - lambda v|| / ||v|| for the off-shell vector v at the roots.
    pub transpose_residual: f64,
    /// ||M v - lambda v|| / ||v||.
    pub direct_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub theory: Theory,
    pub k: usize,
    pub n: usize,
    pub u: Vec<f64>,
    pub z: f64,
    pub tolerance: f64,
    pub eigenvalue_rule: String,
    pub roots: Vec<BetheRoots>,
    pub spectrum: Vec<Complex64>,
    pub pairs: Vec<MatchedPair>,
    pub max_distance: f64,
    /// "transpose" when off-shell vectors are eigenvectors of M^T, "direct" for M.
    pub eigenvector_basis: String,
    pub max_eigenvector_residual: f64,
}

/// Greedy nearest pairing; each spectrum entry is used at most once.
fn greedy_match(pred: &[Complex64], spec: &[Complex64]) -> Vec<(usize, usize, f64)> {
    let mut cand: Vec<(f64, usize, usize)> = Vec::new();
    for (i, p) in pred.iter().enumerate() {
        for (j, s) in spec.iter().enumerate() {
            cand.push(((p - s).norm(), i, j));
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut used_p = vec![false; pred.len()];
    let mut used_s = vec![false; spec.len()];
    let mut out = Vec::new();
    for (d, i, j) in cand {
        if !used_p[i] && !used_s[j] {
            used_p[i] = true;
            used_s[j] = true;
            out.push((i, j, d));
        }
    }
    out.sort_by_key(|t| t.0);
    out
}

/// Solves the Bethe system at every frame and matches the predicted spectrum
/// with the eigenvalues of M(z) in the Schubert basis.
pub fn eigen_compare(theory: Theory, k: usize, n: usize, u: &[f64], z: f64, tol: f64, exec: Exec) -> Result<EigenReport> {
    let sys = build_bethe(theory, k, n, u, z)?;
    let fr = frames(k, n)?;
    let roots = exec
        .map(&fr, |(_, r)| solve_bethe(&sys, r, 1e-13))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let m = pieri_matrix(theory, k, n, exec)?.at(u, &z)?;
    let mt = m.transpose();
    let spec = spectrum(&m);
    let pred: Vec<Complex64> = roots.iter().map(|b| predicted_eigenvalue(theory, &b.roots)).collect();
    let matching = greedy_match(&pred, &spec);
    let mut pairs = Vec::new();
    for (i, j, d) in matching {
        let v = offshell_vector(theory, &roots[i].roots, k, n, u)?;
        pairs.push(MatchedPair {
            frame: roots[i].frame.clone(),
            predicted: pred[i],
            eigenvalue: spec[j],
            distance: d,
            transpose_residual: eigen_residual(&mt, &v, pred[i]),
            direct_residual: eigen_residual(&m, &v, pred[i]),
        });
    }
    let max_distance = pairs.iter().map(|p| p.distance).fold(0.0, f64::max);
    let tr = pairs.iter().map(|p| p.transpose_residual).fold(0.0, f64::max);
    let dr = pairs.iter().map(|p| p.direct_residual).fold(0.0, f64::max);
    let scale = spec.iter().map(|s| s.norm()).fold(1.0, f64::max);
    if pairs.len() != spec.len() || max_distance > tol * scale {
        return Err(Error::UnmatchedSpectrum(format!("predicted {pred:?}, spectrum {spec:?}")));
    }
    Ok(EigenReport {
        theory,
        k,
        n,
        u: u.to_vec(),
        z,
        tolerance: tol,
        eigenvalue_rule: match theory {
            Theory::Cohomology => "sum_j x_j".into(),
            Theory::KTheory => "prod_j x_j".into(),
        },
        roots,
        spectrum: spec,
        pairs,
        max_distance,
        eigenvector_basis: if tr <= dr { "transpose".into() } else { "direct".into() },
        max_eigenvector_residual: tr.min(dr),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(v: &[usize]) -> KSubset {
        KSubset(v.to_vec())
    }

    #[test]
    fn equations_small() {
        let s = build_bethe(Theory::Cohomology, 1, 2, &[0.0, 0.0], 0.0).unwrap();
        let x = var(Var::x(1));
        let expect = &(&x - &var(Var::u(1))) * &(&x - &var(Var::u(2))) - var(Var::Z);
        assert_eq!(s.equations[0], expect);
        assert!(build_bethe(Theory::KTheory, 1, 2, &[0.0, 1.0], 0.1).is_err());
    }

    #[test]
    fn seed_is_exact_at_zero() {
        let s = build_bethe(Theory::Cohomology, 1, 2, &[2.0, 5.0], 0.0).unwrap();
        let r = solve_bethe(&s, &fr(&[1]), 1e-14).unwrap();
        assert_eq!(r.roots[0], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn degenerate_weights_use_puiseux() {
        let s = build_bethe(Theory::Cohomology, 1, 2, &[0.0, 0.0], 0.04).unwrap();
        let a = solve_bethe(&s, &fr(&[1]), 1e-14).unwrap();
        let b = solve_bethe(&s, &fr(&[2]), 1e-14).unwrap();
        assert_eq!(a.start, "puiseux");
        assert!((a.roots[0] - 0.2).norm() < 1e-12);
        assert!((b.roots[0] + 0.2).norm() < 1e-12);
    }

    #[test]
    fn ktheory_quadratic() {
        let z = 0.01;
        let s = build_bethe(Theory::KTheory, 1, 2, &[1.0, 2.0], z).unwrap();
        let r = solve_bethe(&s, &fr(&[1]), 1e-14).unwrap();
        // (1 - x)(1 - x/2) = z  =>  x^2 - 3x + 2(1 - z) = 0
        let expect = (3.0 - (9.0 - 8.0 * (1.0 - z)).sqrt()) / 2.0;
        assert!((r.roots[0].re - expect).abs() < 1e-12);
    }

    #[test]
    fn eigen_gr24_cohomology() {
        let rep = eigen_compare(Theory::Cohomology, 2, 4, &[2.0, 3.0, 5.0, 7.0], 1e-3, 1e-8, Exec::default()).unwrap();
        assert_eq!(rep.pairs.len(), 6);
        assert!(rep.max_eigenvector_residual < 1e-6);
        assert_eq!(rep.eigenvector_basis, "transpose");
    }

    #[test]
    fn eigen_gr24_ktheory() {
        let rep = eigen_compare(Theory::KTheory, 2, 4, &[1.3, 2.1, 2.9, 3.7], 1e-3, 1e-8, Exec::default()).unwrap();
        assert!(rep.max_distance < 1e-8);
        assert!(rep.max_eigenvector_residual < 1e-6);
    }

    #[test]
    fn nonequivariant_gr12_spectrum() {
        let rep = eigen_compare(Theory::Cohomology, 1, 2, &[0.0, 0.0], 0.04, 1e-12, Exec::sequential()).unwrap();
        let mut ev: Vec<f64> = rep.spectrum.iter().map(|c| c.re).collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + 0.2).abs() < 1e-12 && (ev[1] - 0.2).abs() < 1e-12);
    }
}
