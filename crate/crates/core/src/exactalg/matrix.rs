//! Dense matrices over a [`Ring`] and exact linear algebra over Q.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::multipoly::MultiPoly;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type QMatrix = Matrix<Rational>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::ring_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::ring_one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::ring_zero(), |acc, k| {
                let a = &self[(i, k)];
                if a.ring_is_zero() {
                    acc
                } else {
                    acc.plus(&a.times(&other[(k, j)]))
                }
            })
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::ring_zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[R], v: &[R]) -> R {
        u.iter()
            .zip(self.mul_vec(v))
            .fold(R::ring_zero(), |acc, (a, b)| acc.plus(&a.times(&b)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn principal_minor(&self, idx: &[usize]) -> Self {
        self.submatrix(idx, idx)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::ring_is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].ring_is_zero()
                    && (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)].negated())
            })
    }

    /// Rank over the fraction field by fraction-free (Bareiss) elimination.
    ///
    /// Pivots are the first nonzero entry in column order, which keeps the
    /// elimination deterministic.
    pub fn rank_fraction_free(&self) -> usize {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut prev = R::ring_one();
        let mut r = 0;
        for col in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[(i, col)].ring_is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let piv = a[(r, col)].clone();
            for i in r + 1..m {
                let f = a[(i, col)].clone();
                for j in col + 1..n {
                    let num = piv.times(&a[(i, j)]).minus(&f.times(&a[(r, j)]));
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, col)] = R::ring_zero();
            }
            prev = piv;
            r += 1;
        }
        r
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> R {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::ring_one();
        }
        let mut a = self.clone();
        let mut prev = R::ring_one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].ring_is_zero()) else {
                return R::ring_zero();
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            let piv = a[(k, k)].clone();
            for i in k + 1..n {
                let f = a[(i, k)].clone();
                for j in k + 1..n {
                    let num = piv.times(&a[(i, j)]).minus(&f.times(&a[(k, j)]));
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[(i, k)] = R::ring_zero();
            }
            prev = piv;
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            d.negated()
        } else {
            d
        }
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
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&a[(i, col)])) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, col)].recip();
        for j in col..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || Zero::is_zero(&a[(i, col)]) {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in col..cols {
                let t = &f * &a[(r, j)];
                a[(i, j)] -= t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let n = m.cols();
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[(row, free)].clone();
        }
        basis.push(v);
    }
    Subspace::from_spanning(n, basis).expect("kernel vectors have the ambient length")
}

/// Exact inverse; `None` when singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Rank of a polynomial matrix over the field of rational functions.
pub fn rank_over_fractions(m: &Matrix<MultiPoly>) -> usize {
    m.rank_fraction_free()
}

/// Linear subspace of Qⁿ stored by a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_spanning(ambient, QMatrix::identity(ambient).to_rows()).expect("square")
    }

    /// Span of arbitrary vectors; the stored basis is the nonzero rows of the
    /// reduced row echelon form, so equal spans compare equal.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: vectors
                    .iter()
                    .map(Vec::len)
                    .find(|&l| l != ambient)
                    .unwrap_or(0),
            });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = Matrix::from_rows(vectors)?;
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::from_spanning(self.ambient, vs)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        rank(&Matrix::from_rows(vs).expect("rectangular")) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Largest `|uᵀ M v|` test: `true` iff every basis pairing is zero.
    pub fn is_isotropic_for(&self, form: &QMatrix) -> bool {
        self.basis.iter().all(|u| {
            self.basis
                .iter()
                .all(|v| Zero::is_zero(&form.bilinear(u, v)))
        })
    }
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}
