use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num::{BigInt, BigRational, Num, One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must share the same length;
    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::AmbientMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: Vec<Vec<T>>) -> Result<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for j in 0..self.cols {
            let v = self[(source, j)].clone() * factor.clone();
            let t = &mut self[(target, j)];
            *t = t.clone() + v;
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for i in 0..self.rows {
            let v = self[(i, source)].clone() * factor.clone();
            let t = &mut self[(i, target)];
            *t = t.clone() + v;
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &T) {
        for j in 0..self.cols {
            let t = &mut self[(i, j)];
            *t = t.clone() * factor.clone();
        }
    }

    pub fn scale_col(&mut self, j: usize, factor: &T) {
        for i in 0..self.rows {
            let t = &mut self[(i, j)];
            *t = t.clone() * factor.clone();
        }
    }

    /// Selects a contiguous block of rows.
    pub fn row_block(&self, start: usize, end: usize) -> Self {
        Matrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    pub fn to_rat(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    pub fn det(&self) -> Result<BigInt> {
        Ok(self.to_rat().det()?.to_integer())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().is_ok_and(|d| d.abs().is_one())
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let inv = self.to_rat().inverse()?;
        Ok(Matrix {
            rows: inv.rows,
            cols: inv.cols,
            data: inv.data.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

impl RatMatrix {
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if !m[(r, c)].is_zero() {
                    let f = -(m[(r, c)].clone() / &pivot);
                    m.add_row_multiple(r, c, &f);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !m[(r, c)].is_zero()).ok_or(Error::Singular)?;
            m.swap_rows(p, c);
            inv.swap_rows(p, c);
            let s = m[(c, c)].recip();
            m.scale_row(c, &s);
            inv.scale_row(c, &s);
            for r in 0..n {
                if r != c && !m[(r, c)].is_zero() {
                    let f = -m[(r, c)].clone();
                    m.add_row_multiple(r, c, &f);
                    inv.add_row_multiple(r, c, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Integer matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(Matrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a.clone() * rhs[(k, j)].clone();
                    let t: &mut T = &mut out[(i, j)];
                    *t = t.clone() + v;
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
