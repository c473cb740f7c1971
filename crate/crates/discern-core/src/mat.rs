//! Dense row-major matrices. Small and predictable rather than fast: every
//! reduction runs in a fixed order so results are bit-reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;
use crate::{Error, Result};

/// Dense `rows x cols` matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds from a flat row-major slice.
    pub fn from_rows(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Mat { rows, cols, data: data.to_vec() })
    }

    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Mutable views of two distinct rows.
    pub fn two_rows_mut(&mut self, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
        assert!(p < q, "two_rows_mut requires p < q");
        let c = self.cols;
        let (head, tail) = self.data.split_at_mut(q * c);
        (&mut head[p * c..(p + 1) * c], &mut tail[..c])
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let lhs = self.row(i);
            for (k, &l) in lhs.iter().enumerate() {
                if l == 0.0 {
                    continue;
                }
                let rhs = other.row(k);
                let orow = out.row_mut(i);
                for (o, &r) in orow.iter_mut().zip(rhs) {
                    *o += l * r;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `X^T v` without materializing the transpose.
    pub fn tr_matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, v.len(), "tr_matvec shape mismatch");
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == 0.0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o += vi * x;
            }
        }
        out
    }

    /// `X^T X`, filled symmetrically.
    pub fn gram(&self) -> Mat {
        self.weighted_gram(None)
    }

    /// `sum_i w_i x_i x_i^T` over rows (`w = None` means all ones).
    pub fn weighted_gram(&self, weights: Option<&[f64]>) -> Mat {
        let d = self.cols;
        let mut out = Mat::zeros(d, d);
        for i in 0..self.rows {
            let w = weights.map_or(1.0, |w| w[i]);
            if w == 0.0 {
                continue;
            }
            let xi = self.row(i);
            for r in 0..d {
                let s = w * xi[r];
                if s == 0.0 {
                    continue;
                }
                let orow = &mut out.data[r * d..(r + 1) * d];
                for c in r..d {
                    orow[c] += s * xi[c];
                }
            }
        }
        for r in 0..d {
            for c in 0..r {
                out[(r, c)] = out[(c, r)];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(fmath::abs(x)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        fmath::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    /// Horizontal concatenation `[self, other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hcat shape mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    pub fn from_col(v: &[f64]) -> Mat {
        Mat::from_fn(v.len(), 1, |i, _| v[i])
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    fmath::sqrt(dot(a, a))
}

pub fn outer(a: &[f64], b: &[f64]) -> Mat {
    Mat::from_fn(a.len(), b.len(), |i, j| a[i] * b[j])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let x = Mat::from_rows(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let i3 = Mat::identity(3);
        assert_eq!(x.matmul(&i3), x);
    }

    #[test]
    fn gram_matches_explicit_product() {
        let x = Mat::from_rows(3, 2, &[1.0, 2.0, -1.0, 0.5, 3.0, -2.0]).unwrap();
        let g = x.gram();
        let g2 = x.transpose().matmul(&x);
        assert!(g.sub(&g2).max_abs() < 1e-14);
    }

    #[test]
    fn weighted_gram_matches_loop() {
        let x = Mat::from_rows(3, 2, &[1.0, 2.0, -1.0, 0.5, 3.0, -2.0]).unwrap();
        let w = [0.5, 2.0, 1.5];
        let g = x.weighted_gram(Some(&w));
        let mut expect = Mat::zeros(2, 2);
        for i in 0..3 {
            let xi = x.row(i);
            for r in 0..2 {
                for c in 0..2 {
                    expect[(r, c)] += w[i] * xi[r] * xi[c];
                }
            }
        }
        assert!(g.sub(&expect).max_abs() < 1e-14);
    }
}
