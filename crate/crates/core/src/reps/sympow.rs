//! Symmetric powers of 2×2 matrices acting on binary forms.

use crate::linalg::{LinalgScalar, Matrix, RankOptions};
use crate::scalars::Scalar;

use super::{RepError, Representation};

/// Product of two binary forms stored by power of `y` (`p[i]` multiplies `x^{deg−i} y^i`).
fn mul_forms<S: Scalar>(ctx: &S::Ctx, p: &[S], q: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(ctx); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    out
}

/// Action of `g = [[a, b], [c, d]]` on degree-`m` forms in the basis `x^m, x^{m−1}y, …, y^m`,
/// where `x ↦ a x + c y` and `y ↦ b x + d y`.
pub fn sym_power<S: LinalgScalar>(g: &Matrix<S>, m: usize, opts: &RankOptions) -> Result<Matrix<S>, RepError> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(RepError::SizeMismatch { generator: 0, expected: 2, rows: g.rows(), cols: g.cols() });
    }
    if m == 0 {
        return Err(RepError::Spec("symmetric power must be at least 1".into()));
    }
    let ctx = g.ctx().clone();
    let det = g.determinant()?;
    let unimodular = if S::EXACT { det == S::one(&ctx) } else { (det.to_f64() - 1.0).abs() <= opts.tolerance };
    if !unimodular {
        return Err(RepError::NotUnimodular(det.to_f64()));
    }
    let xs = [g.get(0, 0).clone(), g.get(1, 0).clone()];
    let ys = [g.get(0, 1).clone(), g.get(1, 1).clone()];
    let mut columns = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut form = vec![S::one(&ctx)];
        for _ in 0..m - k {
            form = mul_forms(&ctx, &form, &xs);
        }
        for _ in 0..k {
            form = mul_forms(&ctx, &form, &ys);
        }
        columns.push(form);
    }
    Ok(Matrix::from_columns(&ctx, m + 1, &columns))
}

/// Every generator image replaced by its `m`-th symmetric power.
pub fn sym_power_rep<S: LinalgScalar>(rep: &Representation<S>, m: usize, opts: &RankOptions) -> Result<Representation<S>, RepError> {
    rep.map_images(opts, |g| sym_power(g, m, opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{AlgebraicScalar, NumberField};

    #[test]
    fn first_power_is_identity_map() {
        let q = NumberField::rationals();
        let g = Matrix::from_i64_rows(&q, &[&[2, 3], &[1, 2]]);
        assert_eq!(sym_power(&g, 1, &RankOptions::default()).unwrap(), g);
    }

    #[test]
    fn unipotent_square() {
        let q = NumberField::rationals();
        let g = Matrix::from_i64_rows(&q, &[&[1, 1], &[0, 1]]);
        let s = sym_power(&g, 2, &RankOptions::default()).unwrap();
        assert_eq!(s, Matrix::from_i64_rows(&q, &[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]]));
    }

    #[test]
    fn diagonal_square() {
        let q = NumberField::rationals();
        let two = AlgebraicScalar::from_integer(&q, 2);
        let half = two.inverse().unwrap();
        let g = Matrix::diagonal(&q, &[two.clone(), half.clone()]);
        let s = sym_power(&g, 2, &RankOptions::default()).unwrap();
        assert_eq!(s, Matrix::diagonal(&q, &[&two * &two, AlgebraicScalar::one(&q), &half * &half]));
    }

    #[test]
    fn rejects_non_unimodular() {
        let q = NumberField::rationals();
        let g = Matrix::from_i64_rows(&q, &[&[2, 0], &[0, 1]]);
        assert!(matches!(sym_power(&g, 2, &RankOptions::default()), Err(RepError::NotUnimodular(_))));
    }
}
