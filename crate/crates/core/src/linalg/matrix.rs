use std::fmt;

use crate::scalars::{AlgebraicScalar, Scalar};

use super::LinalgError;

/// Dense row-major matrix. Every entry shares the scalar context stored alongside.
#[derive(Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(ctx: &S::Ctx, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(ctx); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity(ctx: &S::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one(ctx);
        }
        m
    }

    pub fn from_fn(ctx: &S::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, ctx: ctx.clone() }
    }

    pub fn from_rows(ctx: &S::Ctx, rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect(), ctx: ctx.clone() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(ctx: &S::Ctx, rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(ctx, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(ctx: &S::Ctx, v: &[S]) -> Self {
        Self::from_fn(ctx, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn diagonal(ctx: &S::Ctx, diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(ctx, n, n, |i, j| if i == j { diag[i].clone() } else { S::zero(ctx) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Scalar>(&self, ctx: &T::Ctx, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: ctx.clone() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(&(), Scalar::to_f64)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Self { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Self { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(Scalar::neg).collect();
        Self { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn scale(&self, s: &S) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Self { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(S::zero(&self.ctx), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect()
    }

    /// `[X, Y] = XY − YX`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(&self.ctx), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Largest entrywise difference as a double.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in max_abs_diff");
        self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b).magnitude()).fold(0.0, f64::max)
    }

    /// Exact equality for exact scalars; entrywise within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        self.data.iter().zip(&other.data).all(|(a, b)| a.sub(b).near_zero(tol))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&Self::identity(&self.ctx, self.rows), tol)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.transpose(), tol)
    }

    pub fn vstack(ctx: &S::Ctx, cols: usize, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data, ctx: ctx.clone() }
    }

    pub fn hstack(ctx: &S::Ctx, rows: usize, blocks: &[Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ctx, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "row mismatch in hstack");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Row-major flattening as a single vector (length rows·cols).
    pub fn flatten(&self) -> Vec<S> {
        self.data.clone()
    }

    pub fn unflatten(ctx: &S::Ctx, rows: usize, cols: usize, v: Vec<S>) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self { rows, cols, data: v, ctx: ctx.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(&self.ctx, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn determinant(&self) -> Result<S, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = S::one(&self.ctx);
        for k in 0..n {
            let Some(p) = pick_pivot(&a, n, k, k) else {
                return Ok(S::zero(&self.ctx));
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = det.neg();
            }
            let pivot = a[k * n + k].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().map_err(LinalgError::Scalar)?;
            for i in k + 1..n {
                let f = a[i * n + k].mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a[i * n + j].sub(&f.mul(&a[k * n + j]));
                    a[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse; exact pivoting takes the first nonzero entry, float pivoting the
    /// largest magnitude.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let w = 2 * n;
        let floor = if S::EXACT { 0.0 } else { 1e-13 * self.max_abs() };
        let mut a = vec![S::zero(&self.ctx); n * w];
        for i in 0..n {
            for j in 0..n {
                a[i * w + j] = self.get(i, j).clone();
            }
            a[i * w + n + i] = S::one(&self.ctx);
        }
        for k in 0..n {
            let p = pick_pivot_strided(&a, w, n, k, k).ok_or(LinalgError::Singular)?;
            if !S::EXACT && a[p * w + k].magnitude() <= floor {
                return Err(LinalgError::Singular);
            }
            if p != k {
                for j in 0..w {
                    a.swap(p * w + j, k * w + j);
                }
            }
            let inv = a[k * w + k].inv().map_err(|_| LinalgError::Singular)?;
            for j in 0..w {
                a[k * w + j] = a[k * w + j].mul(&inv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * w + k].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let v = a[i * w + j].sub(&f.mul(&a[k * w + j]));
                    a[i * w + j] = v;
                }
            }
        }
        Ok(Self::from_fn(&self.ctx, n, n, |i, j| a[i * w + n + j].clone()))
    }
}

/// Row index of the pivot in column `col`, scanning rows `start..` of a square `n×n` buffer.
pub(crate) fn pick_pivot<S: Scalar>(a: &[S], n: usize, start: usize, col: usize) -> Option<usize> {
    pick_pivot_strided(a, n, n, start, col)
}

pub(crate) fn pick_pivot_strided<S: Scalar>(a: &[S], stride: usize, rows: usize, start: usize, col: usize) -> Option<usize> {
    if S::EXACT {
        (start..rows).find(|&i| !a[i * stride + col].is_zero())
    } else {
        let (best, mag) = (start..rows)
            .map(|i| (i, a[i * stride + col].magnitude()))
            .fold((start, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag > 0.0).then_some(best)
    }
}

impl Matrix<AlgebraicScalar> {
    /// Matrix of small integers in the given field.
    pub fn from_i64_rows(field: &crate::scalars::FieldRef, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| AlgebraicScalar::from_integer(field, v)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular input")
    }
}

impl Matrix<f64> {
    pub fn from_f64_rows(rows: &[&[f64]]) -> Self {
        Self::from_rows(&(), rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular input")
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
