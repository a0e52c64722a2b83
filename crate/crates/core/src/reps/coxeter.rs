//! Geometric reflection representations of Coxeter groups.

use std::f64::consts::PI;

use crate::linalg::{signature, signature_numeric, LinalgScalar, Matrix, RankOptions};
use crate::scalars::{cos_pi_over, AlgebraicScalar, FieldRef, Scalar, SUPPORTED_ORDERS};
use crate::words::{Letter, Presentation, Word};

use super::{RepError, Representation};

/// Symmetric matrix of orders `m_ij` with `m_ii = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    orders: Vec<Vec<u32>>,
}

impl CoxeterDiagram {
    pub fn new(orders: Vec<Vec<u32>>) -> Result<Self, RepError> {
        let k = orders.len();
        if k == 0 {
            return Err(RepError::InvalidDiagram("empty diagram".into()));
        }
        for (i, row) in orders.iter().enumerate() {
            if row.len() != k {
                return Err(RepError::InvalidDiagram(format!("row {i} has length {}, expected {k}", row.len())));
            }
            if row[i] != 1 {
                return Err(RepError::InvalidDiagram(format!("m[{i}][{i}] must be 1")));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if m != orders[j][i] {
                    return Err(RepError::InvalidDiagram(format!("m[{i}][{j}] != m[{j}][{i}]")));
                }
                if !SUPPORTED_ORDERS.contains(&m) {
                    return Err(RepError::InvalidDiagram(format!("order {m} at ({i},{j}) is not supported")));
                }
            }
        }
        Ok(Self { orders })
    }

    /// Linear diagram: consecutive nodes joined with the given orders, all others commute.
    pub fn linear(edges: &[u32]) -> Result<Self, RepError> {
        let k = edges.len() + 1;
        let mut orders = vec![vec![2; k]; k];
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, &m) in edges.iter().enumerate() {
            orders[i][i + 1] = m;
            orders[i + 1][i] = m;
        }
        Self::new(orders)
    }

    /// Triangle group with `(s1 s2)^p = (s2 s3)^q = (s3 s1)^r = 1`.
    pub fn triangle(p: u32, q: u32, r: u32) -> Result<Self, RepError> {
        Self::new(vec![vec![1, p, r], vec![p, 1, q], vec![r, q, 1]])
    }

    pub fn size(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Vec<u32>] {
        &self.orders
    }

    /// Generators `s1..sk`; relators `s_i^2`, then `(s_i s_j)^{m_ij}` for `i < j`.
    pub fn presentation(&self) -> Presentation {
        let k = self.size();
        let names = (1..=k).map(|i| format!("s{i}")).collect();
        let mut relators = Vec::new();
        for i in 0..k {
            relators.push(Word::new(vec![Letter::new(i, 1), Letter::new(i, 1)]));
        }
        for i in 0..k {
            for j in i + 1..k {
                let pair = Word::new(vec![Letter::new(i, 1), Letter::new(j, 1)]);
                relators.push(pair.pow(self.orders[i][j] as usize));
            }
        }
        Presentation::new(names, relators).expect("generated Coxeter presentation is well formed")
    }
}

/// Reflection representation plus its Gram form and inertia.
#[derive(Debug, Clone)]
pub struct CoxeterRep<S: Scalar> {
    pub rep: Representation<S>,
    pub gram: Matrix<S>,
    pub signature: (usize, usize, usize),
}

impl<S: LinalgScalar> CoxeterRep<S> {
    /// Signature `(k−1, 1)`.
    pub fn is_hyperbolic(&self) -> bool {
        let k = self.gram.rows();
        (self.signature.0, self.signature.1, self.signature.2) == (k - 1, 1, 0)
    }
}

fn reflections<S: LinalgScalar>(gram: &Matrix<S>) -> Result<Vec<Matrix<S>>, RepError> {
    let k = gram.rows();
    let ctx = gram.ctx().clone();
    let two = S::from_i64(&ctx, 2);
    let tol = if S::EXACT { 0.0 } else { 1e-12 * gram.max_abs().max(1.0) };
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        // R_i = I − 2 e_i g_iᵀ: only row i differs from the identity
        let mut r = Matrix::<S>::identity(&ctx, k);
        for j in 0..k {
            let v = r.get(i, j).sub(&two.mul(gram.get(i, j)));
            r.set(i, j, v);
        }
        if !r.transpose().mul(gram).mul(&r).approx_eq(gram, tol) {
            return Err(RepError::InvalidDiagram(format!("reflection {i} does not preserve the Gram form")));
        }
        out.push(r);
    }
    Ok(out)
}

fn finish<S: LinalgScalar>(
    d: &CoxeterDiagram,
    gram: Matrix<S>,
    sig: (usize, usize, usize),
    opts: &RankOptions,
) -> Result<CoxeterRep<S>, RepError> {
    if sig.2 != 0 {
        return Err(crate::lie::LieError::DegenerateForm(sig).into());
    }
    if sig.1 != 1 {
        log::warn!("Gram form has signature {sig:?}; the diagram is not hyperbolic");
    }
    let images = reflections(&gram)?;
    let rep = Representation::new(d.presentation(), images, opts)?;
    Ok(CoxeterRep { rep, gram, signature: sig })
}

/// Exact reflection representation over `field`; every `cos(π/m_ij)` must lie in it.
pub fn coxeter_rep(d: &CoxeterDiagram, field: &FieldRef) -> Result<CoxeterRep<AlgebraicScalar>, RepError> {
    let k = d.size();
    let mut cos = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            cos.push(if i == j { AlgebraicScalar::one(field) } else { cos_pi_over(d.orders[i][j], field)?.neg() });
        }
    }
    let gram = Matrix::unflatten(field, k, k, cos);
    let sig = signature(&gram)?;
    finish(d, gram, sig, &RankOptions::default())
}

/// The same construction in double precision.
pub fn coxeter_rep_float(d: &CoxeterDiagram, opts: &RankOptions) -> Result<CoxeterRep<f64>, RepError> {
    let k = d.size();
    let gram = Matrix::from_fn(&(), k, k, |i, j| if i == j { 1.0 } else { -(PI / d.orders[i][j] as f64).cos() });
    let sig = signature_numeric(&gram, opts.tolerance.max(1e-12))?;
    finish(d, gram, sig, opts)
}
