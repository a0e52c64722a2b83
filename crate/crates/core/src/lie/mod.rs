//! 𝔰𝔩(n+1), the form Q, its orthogonal algebra 𝔰𝔬(Q) and the Q-symmetric traceless complement.

mod basis;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, LinalgScalar, Matrix, RankOptions};
use crate::scalars::{Scalar, ScalarError};

pub use basis::{adjoint_action, adjoint_action_with_inverse, sl_basis, so_basis, sym0_basis, trivial_basis, SubspaceBasis};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("invariant form is degenerate (signature {0:?})")]
    DegenerateForm((usize, usize, usize)),
    #[error("invariant form is not symmetric")]
    NotSymmetric,
    #[error("form of size {0} is too small; need n + 1 >= 3")]
    FormTooSmall(usize),
    #[error("matrix is not trace-free (trace {0})")]
    NotTraceFree(f64),
    #[error("conjugation leaves the {label} subspace (residual {residual:.3e})")]
    NotInvariant { label: ModuleLabel, residual: f64 },
    #[error("size mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    SizeMismatch { expected: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficient module names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleLabel {
    So,
    Sym0,
    Sl,
    Trivial,
}

impl ModuleLabel {
    pub const ALL: [ModuleLabel; 4] = [ModuleLabel::So, ModuleLabel::Sym0, ModuleLabel::Sl, ModuleLabel::Trivial];

    pub fn as_str(self) -> &'static str {
        match self {
            ModuleLabel::So => "so",
            ModuleLabel::Sym0 => "sym0",
            ModuleLabel::Sl => "sl",
            ModuleLabel::Trivial => "trivial",
        }
    }

    /// Whether the module is only defined relative to the form Q.
    pub fn needs_form(self) -> bool {
        matches!(self, ModuleLabel::So | ModuleLabel::Sym0)
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModuleLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModuleLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s.trim())
            .ok_or_else(|| format!("unknown module label {s:?} (expected so, sym0, sl or trivial)"))
    }
}

/// A nondegenerate symmetric form Q on ℝ^{n+1} together with its inverse and inertia.
#[derive(Debug, Clone)]
pub struct FormContext<S: Scalar> {
    q: Matrix<S>,
    q_inv: Matrix<S>,
    signature: (usize, usize, usize),
    opts: RankOptions,
}

impl<S: LinalgScalar> FormContext<S> {
    pub fn new(q: Matrix<S>, opts: RankOptions) -> Result<Self, LieError> {
        if !q.is_square() {
            return Err(LieError::SizeMismatch { expected: q.rows(), rows: q.rows(), cols: q.cols() });
        }
        if q.rows() < 3 {
            return Err(LieError::FormTooSmall(q.rows()));
        }
        let tol = if S::EXACT { 0.0 } else { opts.tolerance * q.max_abs() };
        if !q.is_symmetric(tol) {
            return Err(LieError::NotSymmetric);
        }
        let signature = S::inertia(&q, &opts)?;
        if signature.2 != 0 {
            return Err(LieError::DegenerateForm(signature));
        }
        let q_inv = q.inverse().map_err(|_| LieError::DegenerateForm(signature))?;
        Ok(Self { q, q_inv, signature, opts })
    }

    pub fn q(&self) -> &Matrix<S> {
        &self.q
    }

    pub fn q_inv(&self) -> &Matrix<S> {
        &self.q_inv
    }

    /// `n`, where the form lives on ℝ^{n+1}.
    pub fn n(&self) -> usize {
        self.q.rows() - 1
    }

    pub fn size(&self) -> usize {
        self.q.rows()
    }

    pub fn signature(&self) -> (usize, usize, usize) {
        self.signature
    }

    /// Signature `(n, 1)` up to an overall sign of Q.
    pub fn is_hyperbolic(&self) -> bool {
        let n = self.n();
        let (p, q, _) = self.signature;
        (p, q) == (n, 1) || (p, q) == (1, n)
    }

    pub fn opts(&self) -> &RankOptions {
        &self.opts
    }

    /// Absolute tolerance for entrywise comparisons at the scale of `m`; zero in exact mode.
    pub fn tol_for(&self, scale: f64) -> f64 {
        if S::EXACT {
            0.0
        } else {
            self.opts.tolerance.max(1e-12) * scale.max(1.0)
        }
    }

    /// `σ(X) = −Q⁻¹ Xᵀ Q`, the involution fixing 𝔰𝔬(Q).
    pub fn sigma(&self, x: &Matrix<S>) -> Matrix<S> {
        self.q_inv.mul(&x.transpose()).mul(&self.q).neg()
    }

    /// `λ` with `gᵀ Q g = λ Q`, if one exists.
    pub fn conformal_factor(&self, g: &Matrix<S>) -> Option<S> {
        let lhs = g.transpose().mul(&self.q).mul(g);
        let (i, j) = (0..self.size())
            .flat_map(|i| (0..self.size()).map(move |j| (i, j)))
            .max_by(|a, b| self.q.get(a.0, a.1).magnitude().total_cmp(&self.q.get(b.0, b.1).magnitude()))?;
        let lambda = lhs.get(i, j).div(self.q.get(i, j)).ok()?;
        let tol = self.tol_for(lhs.max_abs());
        lhs.approx_eq(&self.q.scale(&lambda), tol).then_some(lambda)
    }

    pub fn is_in_so(&self, x: &Matrix<S>) -> bool {
        let lhs = x.transpose().mul(&self.q);
        let rhs = self.q.mul(x).neg();
        lhs.approx_eq(&rhs, self.tol_for(lhs.max_abs()))
    }

    pub fn is_in_sym0(&self, x: &Matrix<S>) -> bool {
        let lhs = x.transpose().mul(&self.q);
        let rhs = self.q.mul(x);
        lhs.approx_eq(&rhs, self.tol_for(lhs.max_abs())) && x.trace().near_zero(self.tol_for(x.max_abs()))
    }

    /// `X = X_so + X_sym` with `X_so = (X + σX)/2 ∈ 𝔰𝔬(Q)` and `X_sym = (X − σX)/2`.
    pub fn cartan_split(&self, x: &Matrix<S>) -> Result<(Matrix<S>, Matrix<S>), LieError> {
        self.check_size(x)?;
        let tr = x.trace();
        if !tr.near_zero(self.tol_for(x.max_abs())) {
            return Err(LieError::NotTraceFree(tr.to_f64()));
        }
        let half = S::from_rational(self.q.ctx(), &BigRational::new(1.into(), 2.into()));
        let s = self.sigma(x);
        Ok((x.add(&s).scale(&half), x.sub(&s).scale(&half)))
    }

    fn check_size(&self, x: &Matrix<S>) -> Result<(), LieError> {
        let n1 = self.size();
        if x.rows() != n1 || x.cols() != n1 {
            return Err(LieError::SizeMismatch { expected: n1, rows: x.rows(), cols: x.cols() });
        }
        Ok(())
    }
}

/// `X = [A b; c d]` with A of size n×n.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSplit<S: Scalar> {
    pub a: Matrix<S>,
    pub b: Vec<S>,
    pub c: Vec<S>,
    pub d: S,
}

pub fn block_split<S: Scalar>(x: &Matrix<S>) -> Result<BlockSplit<S>, LieError> {
    if !x.is_square() || x.rows() < 2 {
        return Err(LieError::SizeMismatch { expected: x.rows().max(2), rows: x.rows(), cols: x.cols() });
    }
    let n = x.rows() - 1;
    Ok(BlockSplit {
        a: x.submatrix(0, 0, n, n),
        b: (0..n).map(|i| x.get(i, n).clone()).collect(),
        c: (0..n).map(|j| x.get(n, j).clone()).collect(),
        d: x.get(n, n).clone(),
    })
}
