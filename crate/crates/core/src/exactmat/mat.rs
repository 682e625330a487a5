use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{Rational, Scalar};

/// Products with at least this many multiply-adds go through the parallel path.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 4096;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<T = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = T::one();
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
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Mat { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| T::from_i64(rows[r][c]))
    }

    pub fn diag(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    /// Matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.times(k))
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "difference")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    /// Exact product `self · b`.
    pub fn mul(&self, b: &Self) -> Result<Self> {
        if self.cols != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "product: {}x{} times {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        #[cfg(feature = "parallel")]
        if self.rows * self.cols * b.cols >= PAR_THRESHOLD && self.rows > 1 {
            return Ok(self.mul_par(b));
        }
        Ok(self.mul_seq(b))
    }

    fn mul_row_into(a_row: &[T], b: &Self, out: &mut [T]) {
        for (k, a) in a_row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, bkj) in out.iter_mut().zip(b.row(k)) {
                if !bkj.is_zero() {
                    *o = o.plus(&a.times(bkj));
                }
            }
        }
    }

    /// Sequential product; panics on shape mismatch.
    pub fn mul_seq(&self, b: &Self) -> Self {
        assert_eq!(self.cols, b.rows, "product shape mismatch");
        let mut out = Self::zeros(self.rows, b.cols);
        if b.cols > 0 {
            for (r, out_row) in out.data.chunks_mut(b.cols).enumerate() {
                Self::mul_row_into(self.row(r), b, out_row);
            }
        }
        out
    }

    /// Row-parallel product; bit-identical to [`Mat::mul_seq`]. Panics on shape mismatch.
    #[cfg(feature = "parallel")]
    pub fn mul_par(&self, b: &Self) -> Self {
        use rayon::prelude::*;
        assert_eq!(self.cols, b.rows, "product shape mismatch");
        let mut out = Self::zeros(self.rows, b.cols);
        if b.cols > 0 {
            out.data
                .par_chunks_mut(b.cols)
                .enumerate()
                .for_each(|(r, out_row)| Self::mul_row_into(self.row(r), b, out_row));
        }
        out
    }

    /// Kronecker product; the left factor is the most significant index.
    pub fn kron(&self, b: &Self) -> Self {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Self::zeros(rows, cols);
        if cols == 0 {
            return out;
        }
        let fill = |r: usize, out_row: &mut [T]| {
            let (i1, i2) = (r / b.rows, r % b.rows);
            for (j1, a) in self.row(i1).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j2, x) in b.row(i2).iter().enumerate() {
                    if !x.is_zero() {
                        out_row[j1 * b.cols + j2] = a.times(x);
                    }
                }
            }
        };
        #[cfg(feature = "parallel")]
        if rows * cols >= PAR_THRESHOLD {
            use rayon::prelude::*;
            out.data.par_chunks_mut(cols).enumerate().for_each(|(r, row)| fill(r, row));
            return out;
        }
        out.data.chunks_mut(cols).enumerate().for_each(|(r, row)| fill(r, row));
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.first_difference(&Self::identity(self.rows)).is_none()
    }

    /// Row-major first position where the two matrices disagree. A shape mismatch
    /// reports `(0, 0)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| !a.approx_eq(b))
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / cols, k % cols, v))
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (r, row) in cells.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}
