use crate::lie::{adjoint_action_with_inverse, sl_basis, so_basis, sym0_basis, trivial_basis, FormContext, ModuleLabel};
use crate::linalg::{LinalgScalar, Matrix, RankOptions};
use crate::reps::Representation;
use crate::scalars::Scalar;
use crate::words::Word;

use super::CohomologyError;

/// A finite-dimensional Γ-module: one invertible d×d matrix per generator.
#[derive(Debug, Clone)]
pub struct CoefficientModule<S: Scalar> {
    label: ModuleLabel,
    dim: usize,
    ctx: S::Ctx,
    actions: Vec<Matrix<S>>,
    inverses: Vec<Matrix<S>>,
}

impl<S: LinalgScalar> CoefficientModule<S> {
    pub fn new(label: ModuleLabel, ctx: S::Ctx, dim: usize, actions: Vec<Matrix<S>>) -> Result<Self, CohomologyError> {
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(CohomologyError::NotAttached(format!("action matrix is {}x{}, module dimension {dim}", a.rows(), a.cols())));
            }
        }
        let inverses = actions.iter().map(Matrix::inverse).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { label, dim, ctx, actions, inverses })
    }

    /// `d` copies of the trivial module for a group on `k` generators.
    pub fn trivial(ctx: &S::Ctx, k: usize, d: usize) -> Self {
        let id = Matrix::identity(ctx, d);
        Self { label: ModuleLabel::Trivial, dim: d, ctx: ctx.clone(), actions: vec![id.clone(); k], inverses: vec![id; k] }
    }

    pub fn label(&self) -> ModuleLabel {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn actions(&self) -> &[Matrix<S>] {
        &self.actions
    }

    pub fn generator_count(&self) -> usize {
        self.actions.len()
    }

    /// Action of a word: the product of generator actions along it.
    pub fn act(&self, w: &Word) -> Matrix<S> {
        let mut out = Matrix::identity(&self.ctx, self.dim);
        for l in w.letters() {
            let g = if l.exponent > 0 { &self.actions[l.generator] } else { &self.inverses[l.generator] };
            out = out.mul(g);
        }
        out
    }

    pub fn to_f64(&self) -> Result<CoefficientModule<f64>, CohomologyError> {
        CoefficientModule::new(self.label, (), self.dim, self.actions.iter().map(Matrix::to_f64).collect())
    }
}

/// The adjoint module of `label` for a representation; `form` is required for `so` and `sym0`.
pub fn coefficient_module<S: LinalgScalar>(
    r: &Representation<S>,
    form: Option<&FormContext<S>>,
    label: ModuleLabel,
    opts: &RankOptions,
) -> Result<CoefficientModule<S>, CohomologyError> {
    let ctx = r.ctx().cloned().ok_or_else(|| CohomologyError::NotAttached("representation has no generators".into()))?;
    let size = r.size();
    let basis = match label {
        ModuleLabel::So | ModuleLabel::Sym0 => {
            let f = form.ok_or(CohomologyError::FormRequired(label))?;
            if f.size() != size {
                return Err(CohomologyError::NotAttached(format!("form has size {}, representation {size}", f.size())));
            }
            if label == ModuleLabel::So {
                so_basis(f)?
            } else {
                sym0_basis(f)?
            }
        }
        ModuleLabel::Sl => sl_basis(&ctx, size, *opts)?,
        ModuleLabel::Trivial => trivial_basis(&ctx, size, *opts)?,
    };
    let actions = r
        .images()
        .iter()
        .zip(r.inverses())
        .map(|(g, gi)| adjoint_action_with_inverse(g, gi, &basis))
        .collect::<Result<Vec<_>, _>>()?;
    CoefficientModule::new(label, ctx, basis.dim(), actions)
}
