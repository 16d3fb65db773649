//! Factorial Schur and double Grothendieck polynomials via bialternants,
//! fixed-point localization tables and nonequivariant specializations.

use serde::{Deserialize, Serialize};

use crate::boxcomb::{frames, KSubset, Partition};
use crate::error::{Error, Result};
use crate::exact_algebra::{rat, Field, Matrix, Monomial, MultiPoly, Var};
use crate::par::Exec;
use crate::Theory;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchubertPoly {
    pub theory: Theory,
    pub lambda: Partition,
    /// Laurent in u for K-theory.
    pub value: MultiPoly,
}

/// (x|u)^b: prod_{j<=b} (x - u_j) in cohomology, prod_{j<=b} (1 - x/u_j) in K-theory.
pub fn falling_factorial(x: &MultiPoly, b: u32, theory: Theory) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for j in 1..=b as usize {
        let f = match theory {
            Theory::Cohomology => x - &MultiPoly::var(Var::u(j)),
            Theory::KTheory => {
                &MultiPoly::one() - &x.mul_monomial(&Monomial::var_pow(Var::u(j), -1))
            }
        };
        acc = acc.mul_ref(&f);
    }
    acc
}

/// Fraction-free (Bareiss) determinant with exact Laurent division.
pub fn poly_det(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    match n {
        0 => return Ok(MultiPoly::one()),
        1 => return Ok(m[0][0].clone()),
        2 => return Ok(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]),
        _ => {}
    }
    let mut prev = MultiPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

fn xs(k: usize) -> Vec<MultiPoly> {
    (1..=k).map(|i| MultiPoly::var(Var::x(i))).collect()
}

/// det((x_i|u)^{lambda_j + k - j}) / prod_{i<j} (x_i - x_j).
pub fn factorial_schur(lambda: &Partition) -> Result<SchubertPoly> {
    let k = lambda.k();
    let x = xs(k);
    let m: Vec<Vec<MultiPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| falling_factorial(&x[i], lambda.0[j] + (k - 1 - j) as u32, Theory::Cohomology))
                .collect()
        })
        .collect();
    let mut v = poly_det(m)?;
    for i in 0..k {
        for j in i + 1..k {
            v = v.exact_div(&(&x[i] - &x[j]))?;
        }
    }
    Ok(SchubertPoly { theory: Theory::Cohomology, lambda: lambda.clone(), value: v })
}

/// det(x_j^{i-1} (x_j|u)^{lambda_i + k - i}) / prod_{i<j} (x_j - x_i).
pub fn double_grothendieck(lambda: &Partition) -> Result<SchubertPoly> {
    let k = lambda.k();
    let x = xs(k);
    let m: Vec<Vec<MultiPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    x[j].pow(i as u32).mul_ref(&falling_factorial(
                        &x[j],
                        lambda.0[i] + (k - 1 - i) as u32,
                        Theory::KTheory,
                    ))
                })
                .collect()
        })
        .collect();
    let mut v = poly_det(m)?;
    for i in 0..k {
        for j in i + 1..k {
            v = v.exact_div(&(&x[j] - &x[i]))?;
        }
    }
    Ok(SchubertPoly { theory: Theory::KTheory, lambda: lambda.clone(), value: v })
}

pub fn schubert_poly(theory: Theory, lambda: &Partition) -> Result<SchubertPoly> {
    match theory {
        Theory::Cohomology => factorial_schur(lambda),
        Theory::KTheory => double_grothendieck(lambda),
    }
}

/// Representatives for a list of partitions, computed in parallel.
pub fn schubert_table(theory: Theory, parts: &[Partition], exec: Exec) -> Result<Vec<MultiPoly>> {
    exec.map(parts, |p| schubert_poly(theory, p).map(|s| s.value))
        .into_iter()
        .collect()
}

/// Sends every u_l to 0 (cohomology) or 1 (K-theory).
pub fn nonequivariant_limit(p: &SchubertPoly) -> Result<MultiPoly> {
    let c = match p.theory {
        Theory::Cohomology => rat(0),
        Theory::KTheory => rat(1),
    };
    p.value.specialize(&|v| matches!(v, Var::U(_)).then(|| c.clone()))
}

/// Evaluates a representative at x = `x`, u = `u` in any field.
pub fn eval_rep<F: Field>(p: &MultiPoly, x: &[F], u: &[F]) -> Result<F> {
    p.eval(&|v| match v {
        Var::X(i) => x.get(i as usize - 1).cloned(),
        Var::U(i) => u.get(i as usize - 1).cloned(),
        _ => None,
    })
}

/// Restricts a representative to the fixed point x_b = u_{r_b}, symbolically in u.
pub fn restrict_to_frame(p: &MultiPoly, r: &KSubset) -> Result<MultiPoly> {
    p.substitute_monomials(&|v| match v {
        Var::X(b) => Some((rat(1), Monomial::var(Var::u(r.0[b as usize - 1])))),
        _ => None,
    })
}

/// entry[lambda][r] = representative of lambda at the fixed point r.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalizationMatrix {
    pub theory: Theory,
    pub k: usize,
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub frames: Vec<KSubset>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl LocalizationMatrix {
    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    pub fn eval<F: Field>(&self, u: &[F]) -> Result<Matrix<F>> {
        let n = self.size();
        let mut m = Matrix::zeros(n, n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m.set(i, j, eval_rep(e, &[], u)?);
            }
        }
        Ok(m)
    }

    /// Pairs (lambda, r) where the entry vanishes identically.
    pub fn zero_pattern(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub fn localization_matrix(k: usize, n: usize, theory: Theory, exec: Exec) -> Result<LocalizationMatrix> {
    let fr = frames(k, n)?;
    let parts: Vec<Partition> = fr.iter().map(|f| f.0.clone()).collect();
    let subsets: Vec<KSubset> = fr.into_iter().map(|f| f.1).collect();
    let polys = schubert_table(theory, &parts, exec)?;
    let entries = exec
        .map(&polys, |p| {
            subsets.iter().map(|r| restrict_to_frame(p, r)).collect::<Result<Vec<_>>>()
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalizationMatrix { theory, k, n, partitions: parts, frames: subsets, entries })
}

/// Checks invariance under the transposition x_i <-> x_j for all pairs.
pub fn is_symmetric(p: &MultiPoly, k: usize) -> bool {
    for i in 1..=k {
        for j in i + 1..=k {
            let swapped = p.rename(&|v| match v {
                Var::X(a) if a as usize == i => Var::x(j),
                Var::X(a) if a as usize == j => Var::x(i),
                other => other,
            });
            if &swapped != p {
                return false;
            }
        }
    }
    true
}

/// Errors if `lambda` has the wrong number of parts for the box.
pub fn check_parts(lambda: &Partition, k: usize) -> Result<()> {
    if lambda.k() != k {
        return Err(Error::InvalidShape(format!("{lambda} does not have {k} parts")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition(v.to_vec())
    }
    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }
    fn u(i: usize) -> MultiPoly {
        MultiPoly::var(Var::u(i))
    }

    #[test]
    fn small_schur() {
        assert_eq!(factorial_schur(&p(&[1, 1])).unwrap().value, (x(1) - u(1)) * (x(2) - u(1)));
        assert_eq!(factorial_schur(&p(&[1, 0])).unwrap().value, x(1) - u(1) + x(2) - u(2));
        assert!(factorial_schur(&p(&[0, 0, 0])).unwrap().value.is_one());
    }

    #[test]
    fn small_grothendieck() {
        let g = double_grothendieck(&p(&[1, 0])).unwrap().value;
        let inv = MultiPoly::term(Monomial::from_pairs([(Var::u(1), -1), (Var::u(2), -1)]), rat(1));
        assert_eq!(g, MultiPoly::one() - x(1) * x(2) * inv);
        assert!(double_grothendieck(&p(&[0, 0])).unwrap().value.is_one());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![x(1), u(1), MultiPoly::int(2)],
            vec![u(2), x(2), x(1)],
            vec![MultiPoly::one(), u(1), x(2)],
        ];
        let cof = &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        assert_eq!(poly_det(m).unwrap(), cof);
    }

    #[test]
    fn localization_k1() {
        let l = localization_matrix(1, 2, Theory::Cohomology, Exec::sequential()).unwrap();
        assert_eq!(l.entries[0], vec![MultiPoly::one(), MultiPoly::one()]);
        assert_eq!(l.entries[1], vec![MultiPoly::zero(), u(2) - u(1)]);
    }
}
