//! Exact elimination over a field: rank, null space, inertia.

use crate::scalars::Scalar;

use super::{LinalgError, Matrix, RankMode, RankResult};

/// Rank by fraction-free (Bareiss) elimination. The pivot at each step is the first nonzero
/// entry of the remaining block in row-major order, moved into place by a row and a column
/// swap; every division by the previous pivot is exact.
pub fn rank_exact<S: Scalar>(m: &Matrix<S>) -> Result<RankResult, LinalgError> {
    if !S::EXACT {
        return Err(LinalgError::ModeMismatch("exact rank needs exact scalars"));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.flatten();
    let ctx = m.ctx();
    let mut prev_inv = S::one(ctx);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i * cols + j].is_zero())
        else {
            break;
        };
        if pi != k {
            for j in 0..cols {
                a.swap(pi * cols + j, k * cols + j);
            }
        }
        if pj != k {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + k);
            }
        }
        let pivot = a[k * cols + k].clone();
        for i in k + 1..rows {
            let lead = a[i * cols + k].clone();
            for j in k + 1..cols {
                let upper = &a[k * cols + j];
                let cur = &a[i * cols + j];
                let mut v = pivot.mul(cur);
                if !lead.is_zero() && !upper.is_zero() {
                    v = v.sub(&lead.mul(upper));
                }
                a[i * cols + j] = v.mul(&prev_inv);
            }
            a[i * cols + k] = S::zero(ctx);
        }
        prev_inv = pivot.inv().map_err(LinalgError::Scalar)?;
        rank += 1;
    }
    Ok(RankResult { rank, mode: RankMode::Exact, gap: None, certified: true })
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<S: Scalar>(a: &mut [S], rows: usize, cols: usize) -> Result<Vec<usize>, LinalgError> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[r * cols + c].inv().map_err(LinalgError::Scalar)?;
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j].mul(&inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let upper = &a[r * cols + j];
                if upper.is_zero() {
                    continue;
                }
                let v = a[i * cols + j].sub(&f.mul(upper));
                a[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(pivots)
}

/// Basis of `{ v : M v = 0 }`, one vector per free column, each checked exactly.
pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Result<Vec<Vec<S>>, LinalgError> {
    if !S::EXACT {
        return Err(LinalgError::ModeMismatch("exact kernel needs exact scalars"));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let ctx = m.ctx();
    let mut a = m.flatten();
    let pivots = rref(&mut a, rows, cols)?;
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(ctx); cols];
        v[free] = S::one(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r * cols + free].neg();
        }
        if !m.mul_vec(&v).iter().all(Scalar::is_zero) {
            return Err(LinalgError::Internal("kernel vector failed verification"));
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Indices of a maximal linearly independent subset of the given vectors, scanning in order.
pub fn independent_subset<S: Scalar>(ctx: &S::Ctx, len: usize, vectors: &[Vec<S>]) -> Result<Vec<usize>, LinalgError> {
    if !S::EXACT {
        return Err(LinalgError::ModeMismatch("exact independence test needs exact scalars"));
    }
    // Incremental echelon basis: each stored row has a leading 1 at a distinct column.
    let mut echelon: Vec<(usize, Vec<S>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (lead, row) in &echelon {
            let f = w[*lead].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..len {
                if !row[j].is_zero() {
                    w[j] = w[j].sub(&f.mul(&row[j]));
                }
            }
        }
        if let Some(lead) = (0..len).find(|&j| !w[j].is_zero()) {
            let inv = w[lead].inv().map_err(LinalgError::Scalar)?;
            let w: Vec<S> = w.iter().map(|x| x.mul(&inv)).collect();
            // keep the echelon rows reduced against the new one
            for (_, row) in echelon.iter_mut() {
                let f = row[lead].clone();
                if !f.is_zero() {
                    for j in 0..len {
                        if !w[j].is_zero() {
                            row[j] = row[j].sub(&f.mul(&w[j]));
                        }
                    }
                }
            }
            echelon.push((lead, w));
            kept.push(idx);
        }
    }
    let _ = ctx;
    Ok(kept)
}

/// Inertia `(p, q, z)` of a symmetric matrix via congruence to a diagonal form.
pub fn signature<S: Scalar>(q: &Matrix<S>) -> Result<(usize, usize, usize), LinalgError> {
    if !S::EXACT {
        return Err(LinalgError::ModeMismatch("exact signature needs exact scalars"));
    }
    if !q.is_square() {
        return Err(LinalgError::NotSquare(q.rows(), q.cols()));
    }
    if !q.is_symmetric(0.0) {
        return Err(LinalgError::NotSymmetric);
    }
    let n = q.rows();
    let mut a = q.flatten();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !a[i * n + i].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                // zero diagonal: combine rows/cols i and j with a_ij ≠ 0 to create a_ii = 2 a_ij
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i * n + j].is_zero());
                let Some((i, j)) = off else { break };
                for c in 0..n {
                    let v = a[i * n + c].add(&a[j * n + c]);
                    a[i * n + c] = v;
                }
                for r in 0..n {
                    let v = a[r * n + i].add(&a[r * n + j]);
                    a[r * n + i] = v;
                }
                i
            }
        };
        if p != k {
            for c in 0..n {
                a.swap(p * n + c, k * n + c);
            }
            for r in 0..n {
                a.swap(r * n + p, r * n + k);
            }
        }
        let pivot = a[k * n + k].clone();
        match pivot.sign() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => return Err(LinalgError::Internal("zero pivot in congruence elimination")),
        }
        let inv = pivot.inv().map_err(LinalgError::Scalar)?;
        for i in k + 1..n {
            let f = a[i * n + k].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = a[i * n + c].sub(&f.mul(&a[k * n + c]));
                a[i * n + c] = v;
            }
            for r in k..n {
                let v = a[r * n + i].sub(&f.mul(&a[r * n + k]));
                a[r * n + i] = v;
            }
        }
        k += 1;
    }
    Ok((pos, neg, n - pos - neg))
}
