//! Recovery of the symmetric bilinear form preserved by a representation.

use crate::linalg::{LinalgScalar, Matrix, RankOptions};

use super::{RepError, Representation};

/// The unique (up to scale) symmetric `S` with `gᵀ S g = S` for every generator, normalized so
/// its first nonzero entry in row-major order is 1.
pub fn invariant_form<S: LinalgScalar>(r: &Representation<S>, opts: &RankOptions) -> Result<Matrix<S>, RepError> {
    let n = r.size();
    let ctx = r.ctx().cloned().ok_or(RepError::NoInvariantForm)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let elementary = |&(i, j): &(usize, usize)| {
        Matrix::from_fn(&ctx, n, n, |a, b| if (a, b) == (i, j) || (a, b) == (j, i) { S::one(&ctx) } else { S::zero(&ctx) })
    };
    // column p: the upper triangles of gᵀ E_p g − E_p stacked over generators
    let mut columns = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let e = elementary(p);
        let mut col = Vec::with_capacity(r.images().len() * pairs.len());
        for g in r.images() {
            let d = g.transpose().mul(&e).mul(g).sub(&e);
            col.extend(pairs.iter().map(|&(a, b)| d.get(a, b).clone()));
        }
        columns.push(col);
    }
    let rows = r.images().len() * pairs.len();
    let system = Matrix::from_columns(&ctx, rows, &columns);
    let (kernel, _) = S::kernel(&system, opts)?;
    match kernel.len() {
        0 => return Err(RepError::NoInvariantForm),
        1 => {}
        k => return Err(RepError::NonUniqueForm(k)),
    }
    let v = &kernel[0];
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.magnitude()));
    let lead = v
        .iter()
        .find(|x| if S::EXACT { !x.is_zero() } else { x.magnitude() > 1e-8 * scale })
        .ok_or(RepError::NoInvariantForm)?
        .inv()?;
    let mut out = Matrix::zeros(&ctx, n, n);
    for (&(i, j), x) in pairs.iter().zip(v) {
        let y = x.mul(&lead);
        out.set(i, j, y.clone());
        out.set(j, i, y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::signature_numeric;
    use crate::reps::{coxeter_rep, fuchsian_genus2, sym_power_rep, CoxeterDiagram};
    use crate::scalars::{AlgebraicScalar, NumberField};
    use crate::words::Presentation;

    #[test]
    fn recovers_gram_up_to_scale() {
        let q = NumberField::rationals();
        let c = coxeter_rep(&CoxeterDiagram::linear(&[3, 3]).unwrap(), &q).unwrap();
        let s = invariant_form(&c.rep, &RankOptions::default()).unwrap();
        let g00 = c.gram.get(0, 0).clone();
        assert_eq!(c.gram, s.scale(&g00));
    }

    #[test]
    fn reducible_rep_has_many_forms() {
        let q = NumberField::rationals();
        let r = Representation::new(Presentation::free(1), vec![Matrix::<AlgebraicScalar>::identity(&q, 2)], &RankOptions::default())
            .unwrap();
        assert!(matches!(invariant_form(&r, &RankOptions::default()), Err(RepError::NonUniqueForm(3))));
    }

    #[test]
    fn fuchsian_square_form_is_lorentzian() {
        let opts = RankOptions::default();
        let r = sym_power_rep(&fuchsian_genus2(&opts).unwrap(), 2, &opts).unwrap();
        let s = invariant_form(&r, &opts).unwrap();
        let (p, n, z) = signature_numeric(&s, 1e-9).unwrap();
        assert_eq!(z, 0);
        assert!((p, n) == (2, 1) || (p, n) == (1, 2));
    }
}
