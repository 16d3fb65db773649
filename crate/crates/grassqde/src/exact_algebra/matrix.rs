use super::field::Field;
use crate::error::{Error, Result};

/// Dense matrix stored column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(r, c, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[F] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidShape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            for l in 0..self.cols {
                let b = other.get(l, j);
                if b.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        let idx = j * out.rows + i;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = o.clone() + a.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// Largest absolute entry (numeric fields only).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|a| a.abs_value().unwrap_or(f64::NAN))
            .fold(0.0, f64::max)
    }

    fn pivot_row(m: &Matrix<F>, col: usize, from: usize) -> Option<usize> {
        if F::is_exact() {
            (from..m.rows).find(|&i| !m.get(i, col).is_zero())
        } else {
            let best = (from..m.rows)
                .max_by(|&a, &b| {
                    let x = m.get(a, col).abs_value().unwrap_or(0.0);
                    let y = m.get(b, col).abs_value().unwrap_or(0.0);
                    x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
                })?;
            (!m.get(best, col).is_zero()).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(j * self.rows + a, j * self.rows + b);
        }
    }

    /// Gauss-Jordan inverse; `ZeroDenominator` when singular.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::InvalidShape("inverse of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let mut inv = Matrix::<F>::identity(n);
        for col in 0..n {
            let p = Matrix::pivot_row(&a, col, col).ok_or(Error::ZeroDenominator)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a.get(col, col).inv()?;
            for j in 0..n {
                let v = a.get(col, j).clone() * pinv.clone();
                a.set(col, j, v);
                let w = inv.get(col, j).clone() * pinv.clone();
                inv.set(col, j, w);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let pa = a.get(col, j).clone();
                    if !pa.is_zero() {
                        let v = a.get(i, j).clone() - f.clone() * pa;
                        a.set(i, j, v);
                    }
                    let pi = inv.get(col, j).clone();
                    if !pi.is_zero() {
                        let w = inv.get(i, j).clone() - f.clone() * pi;
                        inv.set(i, j, w);
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<F> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::InvalidShape("determinant of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = Matrix::pivot_row(&a, col, col) else {
                return Ok(F::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let piv = a.get(col, col).clone();
            det = det * piv.clone();
            let pinv = piv.inv()?;
            for i in col + 1..n {
                let f = a.get(i, col).clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![r(0), r(2), r(1)],
            vec![r(1), r(1), r(0)],
            vec![r(3), r(0), r(5)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(m.det().unwrap(), r(-13));
        let sing = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert_eq!(sing.inverse(), Err(Error::ZeroDenominator));
        assert_eq!(sing.det().unwrap(), r(0));
    }

    #[test]
    fn column_major_layout() {
        let m = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(3), r(4)]]);
        assert_eq!(m.column(0), &[r(1), r(3)]);
        assert_eq!(m.transpose().column(0), &[r(1), r(2)]);
    }
}
