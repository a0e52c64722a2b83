//! Representations of finitely presented groups into GL(n+1) and the builders that make them.

mod coxeter;
mod form;
mod fuchsian;
mod registry;
mod sympow;

use thiserror::Error;

use crate::lie::LieError;
use crate::linalg::{LinalgError, LinalgScalar, Matrix, RankOptions};
use crate::scalars::{AlgebraicScalar, Scalar, ScalarError};
use crate::words::{Presentation, Word, WordError};

pub use coxeter::{coxeter_rep, coxeter_rep_float, CoxeterDiagram, CoxeterRep};
pub use form::invariant_form;
pub use fuchsian::fuchsian_genus2;
pub use registry::{AnyRep, BuildContext, BuiltRep, Registry, RepBuilder};
pub use sympow::{sym_power, sym_power_rep};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("expected {expected} generator images, got {got}")]
    CountMismatch { expected: usize, got: usize },
    #[error("generator {generator}: expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    SizeMismatch { generator: usize, expected: usize, rows: usize, cols: usize },
    #[error("image of generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("relator {index} ({relator}) is violated: deviation {deviation:.3e}")]
    RelatorViolated { index: usize, relator: String, deviation: f64 },
    #[error("invalid Coxeter diagram: {0}")]
    InvalidDiagram(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(f64),
    #[error("no nonzero invariant symmetric form")]
    NoInvariantForm,
    #[error("invariant symmetric forms are not unique (dimension {0})")]
    NonUniqueForm(usize),
    #[error("invalid representation spec: {0}")]
    Spec(String),
    #[error("builder {builder:?} does not support {mode} scalars")]
    ModeUnsupported { builder: String, mode: &'static str },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Generator images of a presentation, validated against every relator.
#[derive(Debug, Clone)]
pub struct Representation<S: Scalar> {
    presentation: Presentation,
    images: Vec<Matrix<S>>,
    inverses: Vec<Matrix<S>>,
    tolerance: f64,
    max_deviation: f64,
}

impl<S: LinalgScalar> Representation<S> {
    /// Checks shapes, invertibility and all relators: exact identity in exact mode,
    /// max-norm deviation ≤ `opts.tolerance` in float mode.
    pub fn new(presentation: Presentation, images: Vec<Matrix<S>>, opts: &RankOptions) -> Result<Self, RepError> {
        let k = presentation.generator_count();
        if images.len() != k {
            return Err(RepError::CountMismatch { expected: k, got: images.len() });
        }
        let size = images.first().map_or(1, Matrix::rows);
        for (i, g) in images.iter().enumerate() {
            if g.rows() != size || g.cols() != size {
                return Err(RepError::SizeMismatch { generator: i, expected: size, rows: g.rows(), cols: g.cols() });
            }
        }
        let inverses = images
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().map_err(|_| RepError::NotInvertible(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rep = Self { presentation, images, inverses, tolerance: opts.tolerance, max_deviation: 0.0 };
        rep.check()?;
        Ok(rep)
    }

    fn check(&mut self) -> Result<(), RepError> {
        let mut worst = 0.0f64;
        for (j, r) in self.presentation.relators().iter().enumerate() {
            let m = self.eval_word(r);
            let deviation = m.max_abs_diff(&Matrix::identity(m.ctx(), m.rows()));
            let ok = if S::EXACT { m.is_identity(0.0) } else { deviation <= self.tolerance };
            if !ok {
                return Err(RepError::RelatorViolated { index: j, relator: self.presentation.word_text(r), deviation });
            }
            worst = worst.max(deviation);
        }
        self.max_deviation = worst;
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }

    pub fn inverses(&self) -> &[Matrix<S>] {
        &self.inverses
    }

    /// Matrix size n+1.
    pub fn size(&self) -> usize {
        self.images.first().map_or(1, Matrix::rows)
    }

    pub fn ctx(&self) -> Option<&S::Ctx> {
        self.images.first().map(Matrix::ctx)
    }

    /// Always true for a constructed value; relators are checked on construction.
    pub fn is_checked(&self) -> bool {
        true
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Largest relator deviation seen by the check (zero in exact mode).
    pub fn max_deviation(&self) -> f64 {
        self.max_deviation
    }

    pub fn eval_word(&self, w: &Word) -> Matrix<S> {
        let size = self.size();
        let ctx = self.images.first().map(|m| m.ctx().clone()).expect("representation with no generators has no words");
        let mut out = Matrix::identity(&ctx, size);
        for l in w.letters() {
            let g = if l.exponent > 0 { &self.images[l.generator] } else { &self.inverses[l.generator] };
            out = out.mul(g);
        }
        out
    }

    /// Images replaced by `f(image)`, re-checked against the relators.
    pub fn map_images(&self, opts: &RankOptions, f: impl Fn(&Matrix<S>) -> Result<Matrix<S>, RepError>) -> Result<Self, RepError> {
        let images = self.images.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.presentation.clone(), images, opts)
    }

    /// `g ↦ h g h⁻¹` for every generator.
    pub fn conjugate(&self, h: &Matrix<S>) -> Result<Self, RepError> {
        let h_inv = h.inverse()?;
        let opts = RankOptions { tolerance: self.tolerance, ..RankOptions::default() };
        self.map_images(&opts, |g| Ok(h.mul(g).mul(&h_inv)))
    }

    /// Same representation on a cyclically rotated presentation.
    pub fn with_presentation(&self, presentation: Presentation) -> Result<Self, RepError> {
        let opts = RankOptions { tolerance: self.tolerance, ..RankOptions::default() };
        Self::new(presentation, self.images.clone(), &opts)
    }

    pub fn to_f64(&self, tolerance: f64) -> Result<Representation<f64>, RepError> {
        let images = self.images.iter().map(Matrix::to_f64).collect();
        Representation::new(self.presentation.clone(), images, &RankOptions { tolerance, ..RankOptions::default() })
    }
}

impl Representation<AlgebraicScalar> {
    pub fn field(&self) -> Option<&crate::scalars::FieldRef> {
        self.ctx()
    }
}
