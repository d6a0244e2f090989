//! Dense small matrices over a scalar or complex backend.
//!
//! Rank and nullspace decisions are exact on the exact backend and use a
//! relative pivot threshold on floats. Pivot selection is deterministic:
//! first nonzero entry (exact) or largest magnitude (float), so nullspace
//! bases are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{negligible, Field, TOL_RESIDUAL};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[T]) {
        assert_eq!(v.len(), self.rows);
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conjugate())
    }

    pub fn map<U: Field>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a.clone() * rhs.get(k, c).clone());
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (c, value) in v.iter().enumerate() {
                    acc = acc + self.get(r, c).clone() * value.clone();
                }
                acc
            })
            .collect()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - rhs`.
    pub fn distance(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn close_to(&self, rhs: &Self, tol: f64) -> bool {
        if T::EXACT {
            self == rhs
        } else {
            self.distance(rhs) <= tol * self.max_magnitude().max(rhs.max_magnitude()).max(1.0)
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    ///
    /// `eps` is the relative pivot threshold on the float backend and is
    /// ignored on the exact backend.
    pub fn rref(&mut self, eps: f64) -> Vec<usize> {
        let scale = self.max_magnitude().max(1.0);
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let pivot_row = if T::EXACT {
                (lead..self.rows).find(|&r| !self.get(r, col).is_zero())
            } else {
                let (best, mag) = (lead..self.rows)
                    .map(|r| (r, self.get(r, col).magnitude()))
                    .fold((lead, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                (mag > eps * scale).then_some(best)
            };
            let Some(p) = pivot_row else { continue };
            if p != lead {
                for c in 0..self.cols {
                    self.data.swap(lead * self.cols + c, p * self.cols + c);
                }
            }
            let inv = self.get(lead, col).clone().recip();
            for c in col..self.cols {
                let v = self.get(lead, c).clone() * inv.clone();
                self.set(lead, c, v);
            }
            self.set(lead, col, T::one());
            for r in 0..self.rows {
                if r == lead || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - factor.clone() * self.get(lead, c).clone();
                    self.set(r, c, v);
                }
                self.set(r, col, T::zero());
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self, eps: f64) -> usize {
        self.clone().rref(eps).len()
    }

    /// Basis of the kernel, ordered by ascending free column index.
    pub fn nullspace(&self, eps: f64) -> Vec<Vec<T>> {
        let mut red = self.clone();
        let pivots = red.rref(eps);
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().enumerate();
        let mut is_pivot = vec![None; self.cols];
        for (row, col) in &mut pivot_iter {
            is_pivot[col] = Some(row);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (col, slot) in is_pivot.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = -red.get(*row, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Gauss–Jordan inverse; `None` when singular at the working threshold.
    pub fn inverse(&self, eps: f64) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, T::one());
        }
        let pivots = aug.rref(eps);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Solve `self * x = b`; `None` when the system is singular.
    pub fn solve(&self, b: &[T], eps: f64) -> Option<Vec<T>> {
        Some(self.inverse(eps)?.apply(b))
    }

    /// Determinant by cofactor expansion; only small sizes are needed.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            0 => T::one(),
            1 => self.get(0, 0).clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            3 => {
                let m = |r: usize, c: usize| self.get(r, c).clone();
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            n => {
                let mut acc = T::zero();
                let mut sign = T::one();
                for c in 0..n {
                    let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
                        self.get(i + 1, if j < c { j } else { j + 1 }).clone()
                    });
                    acc = acc + sign.clone() * self.get(0, c).clone() * minor.det();
                    sign = -sign;
                }
                acc
            }
        }
    }

    pub fn require_shape(&self, n: usize) -> Result<()> {
        if self.rows != n || self.cols != n {
            return Err(Error::BadShape {
                expected: n,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Residual check `max |M v| <= eps * max(1, |M|) * max(1, |v|)`.
    pub fn annihilates(&self, v: &[T], eps: f64) -> bool {
        let image = self.apply(v);
        let scale = self.max_magnitude().max(1.0) * v.iter().map(Field::magnitude).fold(1.0, f64::max);
        image.iter().all(|x| negligible(x, eps, scale))
    }
}

/// Default relative threshold for rank decisions, shared by callers that do
/// not need a custom one.
pub const RANK_EPS: f64 = TOL_RESIDUAL;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Rational};

    #[test]
    fn nullspace_of_zero_matrix_is_everything() {
        let m: Matrix<f64> = Matrix::zero(2, 2);
        assert_eq!(m.nullspace(RANK_EPS).len(), 2);
    }

    #[test]
    fn nullspace_of_identity_is_trivial() {
        let m: Matrix<f64> = Matrix::identity(3);
        assert!(m.nullspace(RANK_EPS).is_empty());
    }

    #[test]
    fn exact_rank_plus_nullity_is_cols() {
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)],
            vec![ratio(1, 1), ratio(2, 3), ratio(1, 3)],
            vec![ratio(0, 1), ratio(1, 1), ratio(2, 1)],
        ]);
        let rank = m.rank(RANK_EPS);
        let nullity = m.nullspace(RANK_EPS).len();
        assert_eq!(rank + nullity, 3);
        // second row is twice the first
        assert_eq!(rank, 2);
        for v in m.nullspace(RANK_EPS) {
            assert!(m.apply(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![
            vec![2.0, 1.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 3.0],
        ]);
        let inv = m.inverse(RANK_EPS).unwrap();
        assert!(m.mul(&inv).close_to(&Matrix::identity(3), 1e-12));
    }

    #[test]
    fn det_small_sizes() {
        let m = Matrix::from_rows(vec![vec![ratio(1, 1), ratio(2, 1)], vec![ratio(3, 1), ratio(4, 1)]]);
        assert_eq!(m.det(), ratio(-2, 1));
    }
}
