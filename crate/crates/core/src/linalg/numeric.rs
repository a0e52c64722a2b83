//! Floating-point rank, null space and inertia through nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{LinalgError, Matrix, RankMode, RankResult};

fn to_dmatrix(m: &Matrix<f64>, min_rows: usize) -> Result<DMatrix<f64>, LinalgError> {
    if m.data().iter().any(|x| !x.is_finite()) {
        return Err(LinalgError::SvdFailure("non-finite entry"));
    }
    let rows = m.rows().max(min_rows);
    Ok(DMatrix::from_fn(rows, m.cols(), |i, j| if i < m.rows() { *m.get(i, j) } else { 0.0 }))
}

fn singular_values(m: &Matrix<f64>) -> Result<Vec<f64>, LinalgError> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(Vec::new());
    }
    let svd = to_dmatrix(m, 0)?.try_svd(false, false, f64::EPSILON, 0).ok_or(LinalgError::SvdFailure("no convergence"))?;
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Counts singular values `σ ≥ tol·σ_max`. The gap is the ratio of the smallest kept to the
/// largest dropped value (infinite when nothing is dropped).
pub fn rank_numeric(m: &Matrix<f64>, tol: f64, gap_threshold: f64) -> Result<RankResult, LinalgError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(LinalgError::BadTolerance(tol));
    }
    let s = singular_values(m)?;
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(RankResult { rank: 0, mode: RankMode::Numeric, gap: Some(f64::INFINITY), certified: true });
    }
    let rank = s.iter().take_while(|&&x| x >= tol * smax).count();
    let gap = match s.get(rank) {
        None | Some(0.0) => f64::INFINITY,
        Some(&dropped) => s[rank - 1] / dropped,
    };
    Ok(RankResult { rank, mode: RankMode::Numeric, gap: Some(gap), certified: gap >= gap_threshold })
}

/// Right singular vectors for the dropped singular values, plus the rank decision.
pub fn kernel_numeric(m: &Matrix<f64>, tol: f64, gap_threshold: f64) -> Result<(Vec<Vec<f64>>, RankResult), LinalgError> {
    let cols = m.cols();
    let rank = rank_numeric(m, tol, gap_threshold)?;
    if rank.rank == cols {
        return Ok((Vec::new(), rank));
    }
    if rank.rank == 0 {
        let basis = (0..cols).map(|i| (0..cols).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        return Ok((basis, rank));
    }
    // pad with zero rows so the thin SVD returns a full set of right singular vectors
    let a = to_dmatrix(m, cols)?;
    let svd = a.try_svd(false, true, f64::EPSILON, 0).ok_or(LinalgError::SvdFailure("no convergence"))?;
    let vt = svd.v_t.ok_or(LinalgError::SvdFailure("missing right singular vectors"))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let basis = order[rank.rank..].iter().map(|&r| vt.row(r).iter().copied().collect()).collect();
    Ok((basis, rank))
}

/// Inertia of a symmetric matrix from its eigenvalues; `|λ| ≤ tol·max|λ|` counts as zero.
pub fn signature_numeric(q: &Matrix<f64>, tol: f64) -> Result<(usize, usize, usize), LinalgError> {
    if !q.is_square() {
        return Err(LinalgError::NotSquare(q.rows(), q.cols()));
    }
    let scale = q.max_abs().max(f64::MIN_POSITIVE);
    if !q.is_symmetric(tol * scale) {
        return Err(LinalgError::NotSymmetric);
    }
    let n = q.rows();
    let a = to_dmatrix(q, 0)?;
    let sym = (&a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(LinalgError::SvdFailure("no convergence"))?;
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let pos = eig.eigenvalues.iter().filter(|&&x| x > tol * lmax).count();
    let neg = eig.eigenvalues.iter().filter(|&&x| x < -tol * lmax).count();
    Ok((pos, neg, n - pos - neg))
}
