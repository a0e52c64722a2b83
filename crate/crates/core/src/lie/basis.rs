//! Ordered bases of the coefficient modules and the adjoint action in those coordinates.

use crate::linalg::{LinalgError, LinalgScalar, Matrix, RankOptions};
use crate::scalars::Scalar;

use super::{FormContext, LieError, ModuleLabel};

/// A linearly independent list of (n+1)×(n+1) matrices with a coordinate solver.
///
/// Coordinates are read off `dim` pivot entries chosen during construction; every solve is
/// checked against the full matrix, so a matrix outside the span is reported, not projected.
#[derive(Debug, Clone)]
pub struct SubspaceBasis<S: Scalar> {
    label: ModuleLabel,
    size: usize,
    elements: Vec<Matrix<S>>,
    pivots: Vec<usize>,
    solver: Matrix<S>,
    opts: RankOptions,
}

impl<S: LinalgScalar> SubspaceBasis<S> {
    pub fn new(label: ModuleLabel, size: usize, elements: Vec<Matrix<S>>, opts: RankOptions) -> Result<Self, LieError> {
        let ctx = elements.first().map(|e| e.ctx().clone()).ok_or(LinalgError::Internal("empty basis"))?;
        for e in &elements {
            if e.rows() != size || e.cols() != size {
                return Err(LieError::SizeMismatch { expected: size, rows: e.rows(), cols: e.cols() });
            }
        }
        let dim = elements.len();
        let ambient = size * size;
        // rows of `work` are the flattened elements; pick one pivot column per row
        let mut work: Vec<Vec<S>> = elements.iter().map(Matrix::flatten).collect();
        let scale = work.iter().flatten().fold(0.0f64, |m, x| m.max(x.magnitude()));
        let mut pivots = Vec::with_capacity(dim);
        for r in 0..dim {
            let c = if S::EXACT {
                (0..ambient).find(|&c| !work[r][c].is_zero())
            } else {
                (0..ambient)
                    .max_by(|&a, &b| work[r][a].magnitude().total_cmp(&work[r][b].magnitude()))
                    .filter(|&c| work[r][c].magnitude() > 1e-10 * scale)
            };
            let c = c.ok_or(LinalgError::Internal("basis elements are linearly dependent"))?;
            let inv = work[r][c].inv()?;
            for r2 in r + 1..dim {
                let f = work[r2][c].mul(&inv);
                if f.is_zero() {
                    continue;
                }
                let (top, bottom) = work.split_at_mut(r2);
                for (x, y) in bottom[0].iter_mut().zip(&top[r]) {
                    *x = x.sub(&f.mul(y));
                }
            }
            pivots.push(c);
        }
        let p = Matrix::from_fn(&ctx, dim, dim, |i, k| elements[k].data()[pivots[i]].clone());
        let solver = p.inverse()?;
        Ok(Self { label, size, elements, pivots, solver, opts })
    }

    pub fn label(&self) -> ModuleLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ambient_dim(&self) -> usize {
        self.size * self.size
    }

    pub fn elements(&self) -> &[Matrix<S>] {
        &self.elements
    }

    pub fn combine(&self, coords: &[S]) -> Matrix<S> {
        let ctx = self.elements[0].ctx();
        let mut out = Matrix::zeros(ctx, self.size, self.size);
        for (c, e) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                out = out.add(&e.scale(c));
            }
        }
        out
    }

    /// Coordinates of `y` in this basis, or `NotInvariant` when `y` lies outside the span.
    pub fn coordinates(&self, y: &Matrix<S>) -> Result<Vec<S>, LieError> {
        let flat = y.data();
        let rhs: Vec<S> = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        let coords = self.solver.mul_vec(&rhs);
        let back = self.combine(&coords);
        let residual = back.max_abs_diff(y);
        let tol = if S::EXACT { 0.0 } else { self.opts.tolerance.max(1e-8) * y.max_abs().max(1.0) };
        let ok = if S::EXACT { back == *y } else { residual <= tol };
        if !ok {
            return Err(LieError::NotInvariant { label: self.label, residual });
        }
        Ok(coords)
    }
}

/// `Q⁻¹(E_ij − E_ji)` for `i < j`, row-major.
pub fn so_basis<S: LinalgScalar>(ctx: &FormContext<S>) -> Result<SubspaceBasis<S>, LieError> {
    let n1 = ctx.size();
    let sc = ctx.q().ctx().clone();
    let mut out = Vec::with_capacity(n1 * (n1 - 1) / 2);
    for i in 0..n1 {
        for j in i + 1..n1 {
            let k = Matrix::from_fn(&sc, n1, n1, |r, c| match (r, c) {
                _ if (r, c) == (i, j) => S::one(&sc),
                _ if (r, c) == (j, i) => S::one(&sc).neg(),
                _ => S::zero(&sc),
            });
            let x = ctx.q_inv().mul(&k);
            if !ctx.is_in_so(&x) {
                return Err(LinalgError::Internal("so basis element fails XᵀQ = −QX").into());
            }
            out.push(x);
        }
    }
    SubspaceBasis::new(ModuleLabel::So, n1, out, *ctx.opts())
}

/// `Q⁻¹ S` for symmetric `S` with `tr(Q⁻¹S) = 0`: elementary symmetric matrices (row-major,
/// `i ≤ j`) corrected by a multiple of the first one with nonzero trace pairing, which is omitted.
pub fn sym0_basis<S: LinalgScalar>(ctx: &FormContext<S>) -> Result<SubspaceBasis<S>, LieError> {
    let n1 = ctx.size();
    let sc = ctx.q().ctx().clone();
    let elementary: Vec<Matrix<S>> = (0..n1)
        .flat_map(|i| (i..n1).map(move |j| (i, j)))
        .map(|(i, j)| {
            Matrix::from_fn(&sc, n1, n1, |r, c| {
                if (r, c) == (i, j) || (r, c) == (j, i) {
                    S::one(&sc)
                } else {
                    S::zero(&sc)
                }
            })
        })
        .collect();
    let images: Vec<Matrix<S>> = elementary.iter().map(|s| ctx.q_inv().mul(s)).collect();
    let traces: Vec<S> = images.iter().map(Matrix::trace).collect();
    let p = if S::EXACT {
        traces.iter().position(|t| !t.is_zero())
    } else {
        (0..traces.len()).max_by(|&a, &b| traces[a].magnitude().total_cmp(&traces[b].magnitude()))
    };
    let p = p.ok_or(LinalgError::Internal("Q⁻¹ has zero trace pairing with every symmetric matrix"))?;
    let tp_inv = traces[p].inv()?;
    let mut out = Vec::with_capacity(images.len() - 1);
    for (k, x) in images.iter().enumerate() {
        if k == p {
            continue;
        }
        let f = traces[k].mul(&tp_inv);
        let y = if f.is_zero() { x.clone() } else { x.sub(&images[p].scale(&f)) };
        if !ctx.is_in_sym0(&y) {
            return Err(LinalgError::Internal("sym0 basis element fails XᵀQ = QX, tr X = 0").into());
        }
        out.push(y);
    }
    SubspaceBasis::new(ModuleLabel::Sym0, n1, out, *ctx.opts())
}

/// `E_ij` for `i ≠ j` row-major, then `E_ii − E_nn`.
pub fn sl_basis<S: LinalgScalar>(sc: &S::Ctx, size: usize, opts: RankOptions) -> Result<SubspaceBasis<S>, LieError> {
    let unit = |i: usize, j: usize| Matrix::from_fn(sc, size, size, |r, c| if (r, c) == (i, j) { S::one(sc) } else { S::zero(sc) });
    let mut out = Vec::with_capacity(size * size - 1);
    for i in 0..size {
        for j in 0..size {
            if i != j {
                out.push(unit(i, j));
            }
        }
    }
    let last = size - 1;
    for i in 0..last {
        out.push(unit(i, i).sub(&unit(last, last)));
    }
    SubspaceBasis::new(ModuleLabel::Sl, size, out, opts)
}

/// The scalar matrices: a one-dimensional module on which conjugation acts trivially.
pub fn trivial_basis<S: LinalgScalar>(sc: &S::Ctx, size: usize, opts: RankOptions) -> Result<SubspaceBasis<S>, LieError> {
    SubspaceBasis::new(ModuleLabel::Trivial, size, vec![Matrix::identity(sc, size)], opts)
}

/// Matrix of `X ↦ g X g⁻¹` in the given basis (column k = coordinates of `g X_k g⁻¹`).
pub fn adjoint_action<S: LinalgScalar>(g: &Matrix<S>, basis: &SubspaceBasis<S>) -> Result<Matrix<S>, LieError> {
    let g_inv = g.inverse()?;
    adjoint_action_with_inverse(g, &g_inv, basis)
}

pub fn adjoint_action_with_inverse<S: LinalgScalar>(
    g: &Matrix<S>,
    g_inv: &Matrix<S>,
    basis: &SubspaceBasis<S>,
) -> Result<Matrix<S>, LieError> {
    if g.rows() != basis.size() || !g.is_square() {
        return Err(LieError::SizeMismatch { expected: basis.size(), rows: g.rows(), cols: g.cols() });
    }
    let columns = basis
        .elements()
        .iter()
        .map(|x| basis.coordinates(&g.mul(x).mul(g_inv)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(g.ctx(), basis.dim(), &columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_exact;
    use crate::scalars::{AlgebraicScalar, NumberField};
    use num_rational::BigRational;

    fn lorentz(n: usize) -> FormContext<AlgebraicScalar> {
        let q = NumberField::rationals();
        let mut d = vec![AlgebraicScalar::one(&q); n + 1];
        d[n] = AlgebraicScalar::from_integer(&q, -1);
        FormContext::new(Matrix::diagonal(&q, &d), RankOptions::default()).unwrap()
    }

    #[test]
    fn dimensions() {
        for (n, so, sym) in [(2, 3, 5), (3, 6, 9), (4, 10, 14)] {
            let ctx = lorentz(n);
            let a = so_basis(&ctx).unwrap();
            let b = sym0_basis(&ctx).unwrap();
            assert_eq!((a.dim(), b.dim()), (so, sym));
            let sc = ctx.q().ctx().clone();
            assert_eq!(sl_basis::<AlgebraicScalar>(&sc, n + 1, RankOptions::default()).unwrap().dim(), (n + 1) * (n + 1) - 1);
            // together they span sl(n+1)
            let rows: Vec<Vec<_>> = a.elements().iter().chain(b.elements()).map(Matrix::flatten).collect();
            let m = Matrix::from_rows(&sc, rows).unwrap();
            assert_eq!(rank_exact(&m).unwrap().rank, (n + 1) * (n + 1) - 1);
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let ctx = lorentz(3);
        let sc = ctx.q().ctx().clone();
        let b = so_basis(&ctx).unwrap();
        let act = adjoint_action(&Matrix::identity(&sc, 4), &b).unwrap();
        assert_eq!(act, Matrix::identity(&sc, 6));
        let t = trivial_basis::<AlgebraicScalar>(&sc, 4, RankOptions::default()).unwrap();
        let g = Matrix::from_i64_rows(&sc, &[&[2, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(adjoint_action(&g, &t).unwrap(), Matrix::identity(&sc, 1));
    }

    #[test]
    fn reflection_preserves_so() {
        let ctx = lorentz(3);
        let sc = ctx.q().ctx().clone();
        let r = Matrix::diagonal(&sc, &[-1, 1, 1, 1].map(|v| AlgebraicScalar::from_integer(&sc, v)));
        let act = adjoint_action(&r, &so_basis(&ctx).unwrap()).unwrap();
        let det = act.determinant().unwrap().to_f64();
        assert!(det == 1.0 || det == -1.0);
    }

    #[test]
    fn non_orthogonal_conjugation_rejected() {
        let ctx = lorentz(3);
        let sc = ctx.q().ctx().clone();
        let half = AlgebraicScalar::from_rational(&sc, BigRational::new(1.into(), 2.into()));
        let two = AlgebraicScalar::from_integer(&sc, 2);
        let one = AlgebraicScalar::one(&sc);
        let g = Matrix::diagonal(&sc, &[two, one.clone(), one, half]);
        assert!(ctx.conformal_factor(&g).is_none());
        assert!(matches!(adjoint_action(&g, &so_basis(&ctx).unwrap()), Err(LieError::NotInvariant { .. })));
    }
}
