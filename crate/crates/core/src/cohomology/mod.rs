//! Twisted H⁰ and H¹ of a finitely presented group through Fox calculus.
//!
//! A 1-cocycle `u` is determined by its values on generators, `(u(g₁), …, u(g_k)) ∈ W^k`, and
//! must satisfy `Σᵢ (∂r_j/∂gᵢ)·u(gᵢ) = 0` for every relator. Coboundaries are
//! `u(gᵢ) = gᵢ·w − w`. Dimensions come from ranks of these two linear systems.

mod module;

use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{FormContext, LieError, ModuleLabel};
use crate::linalg::{independent_subset, kernel_basis, LinalgError, LinalgScalar, Matrix, RankMode, RankOptions, RankResult};
use crate::reps::{RepError, Representation};
use crate::scalars::Scalar;
use crate::words::{fox_derivative, Presentation};

pub use module::{coefficient_module, CoefficientModule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error("module does not fit the presentation: {0}")]
    NotAttached(String),
    #[error("the {0} module needs an invariant form")]
    FormRequired(ModuleLabel),
    #[error("Fox identity fails for relator {relator}: residual {residual:.3e}")]
    FoxIdentity { relator: usize, residual: f64 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("operation needs exact scalars")]
    ModeMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl CohomologyError {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            CohomologyError::FoxIdentity { .. } | CohomologyError::Invariant(_) | CohomologyError::Linalg(LinalgError::Internal(_))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportMode {
    Exact,
    Float,
}

impl ReportMode {
    pub fn of<S: Scalar>() -> Self {
        if S::EXACT {
            ReportMode::Exact
        } else {
            ReportMode::Float
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDiagnostics {
    pub cocycle: RankResult,
    pub coboundary: RankResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub k: usize,
    pub m: usize,
    pub d: usize,
    #[serde(rename = "dimZ1")]
    pub dim_z1: usize,
    #[serde(rename = "dimB1")]
    pub dim_b1: usize,
    #[serde(rename = "dimH0")]
    pub dim_h0: usize,
    #[serde(rename = "dimH1")]
    pub dim_h1: usize,
    pub mode: ReportMode,
    pub certified: bool,
    pub label: ModuleLabel,
    pub ranks: RankDiagnostics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn check_attached<S: LinalgScalar>(p: &Presentation, m: &CoefficientModule<S>) -> Result<(), CohomologyError> {
    if p.generator_count() != m.generator_count() {
        return Err(CohomologyError::NotAttached(format!(
            "presentation has {} generators, module {}",
            p.generator_count(),
            m.generator_count()
        )));
    }
    Ok(())
}

fn float_tol<S: Scalar>(scale: f64) -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-8 * scale.max(1.0)
    }
}

/// In float mode a system whose entries are all at roundoff level is the zero matrix.
fn rank_above_noise<S: LinalgScalar>(m: &Matrix<S>, floor: f64, opts: &RankOptions) -> Result<RankResult, CohomologyError> {
    if !S::EXACT && m.max_abs() <= floor {
        return Ok(RankResult { rank: 0, mode: RankMode::Numeric, gap: Some(f64::INFINITY), certified: true });
    }
    Ok(S::rank(m, opts)?)
}

/// The m·d × k·d matrix whose block (j, i) is `∂r_j/∂gᵢ` evaluated in the module.
///
/// Each relator block row is checked against `Σᵢ J_ji (A_i − I) = A(r_j) − I = 0`.
pub fn cocycle_system<S: LinalgScalar>(p: &Presentation, m: &CoefficientModule<S>) -> Result<Matrix<S>, CohomologyError> {
    check_attached(p, m)?;
    let (k, d) = (p.generator_count(), m.dim());
    let ctx = m.ctx().clone();
    let id = Matrix::identity(&ctx, d);
    let mut rows = Vec::with_capacity(p.relator_count());
    for (j, r) in p.relators().iter().enumerate() {
        let mut blocks = Vec::with_capacity(k);
        for i in 0..k {
            let mut block = Matrix::zeros(&ctx, d, d);
            for (w, c) in fox_derivative(r, i).terms() {
                let coeff = S::from_rational(&ctx, &num_rational::BigRational::from_integer(c.clone()));
                block = block.add(&m.act(w).scale(&coeff));
            }
            blocks.push(block);
        }
        let mut lhs = Matrix::zeros(&ctx, d, d);
        for (i, b) in blocks.iter().enumerate() {
            lhs = lhs.add(&b.mul(&m.actions()[i].sub(&id)));
        }
        let rhs = m.act(r).sub(&id);
        let scale = blocks.iter().map(Matrix::max_abs).fold(0.0, f64::max) * m.actions().iter().map(Matrix::max_abs).fold(1.0, f64::max);
        let residual = lhs.max_abs_diff(&rhs).max(rhs.max_abs());
        let ok = if S::EXACT { lhs == rhs && rhs.is_zero() } else { residual <= float_tol::<S>(scale) };
        if !ok {
            return Err(CohomologyError::FoxIdentity { relator: j, residual });
        }
        rows.push(Matrix::hstack(&ctx, d, &blocks));
    }
    Ok(Matrix::vstack(&ctx, k * d, &rows))
}

/// The k·d × d matrix of stacked blocks `A_i − I`; its image is B¹.
pub fn coboundary_system<S: LinalgScalar>(m: &CoefficientModule<S>) -> Matrix<S> {
    let ctx = m.ctx().clone();
    let id = Matrix::identity(&ctx, m.dim());
    let blocks: Vec<Matrix<S>> = m.actions().iter().map(|a| a.sub(&id)).collect();
    Matrix::vstack(&ctx, m.dim(), &blocks)
}

/// `dim Z¹ = k·d − rank J`, `dim H⁰ = d − rank C`, `dim B¹ = rank C`, `dim H¹ = dim Z¹ − dim B¹`.
pub fn h1_dims<S: LinalgScalar>(
    p: &Presentation,
    m: &CoefficientModule<S>,
    opts: &RankOptions,
) -> Result<CohomologyReport, CohomologyError> {
    let j = cocycle_system(p, m)?;
    let c = coboundary_system(m);
    let jc = j.mul(&c);
    let b_in_z = if S::EXACT { jc.is_zero() } else { jc.max_abs() <= float_tol::<S>(j.max_abs() * c.max_abs()) };
    if !b_in_z {
        return Err(CohomologyError::Invariant(format!("coboundaries are not cocycles (residual {:.3e})", jc.max_abs())));
    }
    let (k, d) = (p.generator_count(), m.dim());
    let amax = m.actions().iter().fold(1.0f64, |a, x| a.max(x.max_abs()));
    let longest = p.relators().iter().map(|r| r.len()).max().unwrap_or(1) as f64;
    let rj = rank_above_noise(&j, float_tol::<S>(amax * longest), opts)?;
    let rc = rank_above_noise(&c, float_tol::<S>(amax), opts)?;
    let certified = rj.certified && rc.certified;
    let dim_z1 = k * d - rj.rank;
    let dim_h0 = d - rc.rank;
    let dim_b1 = rc.rank;
    let mut notes = Vec::new();
    let dim_h1 = if dim_z1 >= dim_b1 {
        dim_z1 - dim_b1
    } else if certified {
        return Err(CohomologyError::Invariant(format!("dim Z1 = {dim_z1} < dim B1 = {dim_b1}")));
    } else {
        notes.push(format!("uncertified ranks give dim Z1 = {dim_z1} < dim B1 = {dim_b1}"));
        0
    };
    if !certified {
        log::warn!("{} module: numeric rank not certified (gaps {:?}, {:?})", m.label(), rj.gap, rc.gap);
        notes.push("numeric rank gap below threshold".into());
    }
    Ok(CohomologyReport {
        k,
        m: p.relator_count(),
        d,
        dim_z1,
        dim_b1,
        dim_h0,
        dim_h1,
        mode: ReportMode::of::<S>(),
        certified,
        label: m.label(),
        ranks: RankDiagnostics { cocycle: rj, coboundary: rc },
        notes,
    })
}

/// Cocycles (as stacked values on generators) whose classes form a basis of H¹.
pub fn h1_basis<S: LinalgScalar>(p: &Presentation, m: &CoefficientModule<S>) -> Result<Vec<Vec<S>>, CohomologyError> {
    if !S::EXACT {
        return Err(CohomologyError::ModeMismatch);
    }
    let j = cocycle_system(p, m)?;
    let c = coboundary_system(m);
    let z = kernel_basis(&j)?;
    let len = j.cols();
    let b: Vec<Vec<S>> = (0..c.cols()).map(|col| c.column(col)).collect();
    let b_idx = independent_subset(m.ctx(), len, &b)?;
    let mut stacked: Vec<Vec<S>> = b_idx.iter().map(|&i| b[i].clone()).collect();
    let nb = stacked.len();
    stacked.extend(z.iter().cloned());
    let keep = independent_subset(m.ctx(), len, &stacked)?;
    let reps: Vec<Vec<S>> = keep.into_iter().filter(|&i| i >= nb).map(|i| stacked[i].clone()).collect();
    for v in &reps {
        if !j.mul_vec(v).iter().all(Scalar::is_zero) {
            return Err(CohomologyError::Invariant("H1 representative is not a cocycle".into()));
        }
    }
    Ok(reps)
}

/// H¹ for several module labels of one representation, one thread per label.
pub fn reports_for_labels<S: LinalgScalar>(
    rep: &Representation<S>,
    form: Option<&FormContext<S>>,
    labels: &[ModuleLabel],
    opts: &RankOptions,
) -> Vec<Result<CohomologyReport, CohomologyError>> {
    thread::scope(|s| {
        let handles: Vec<_> = labels
            .iter()
            .map(|&label| {
                s.spawn(move || {
                    let module = coefficient_module(rep, form, label, opts)?;
                    h1_dims(rep.presentation(), &module, opts)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CohomologyError::Invariant("worker thread panicked".into()))))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub sl: CohomologyReport,
    pub so: CohomologyReport,
    pub sym0: CohomologyReport,
    /// `dim H¹(sl) = dim H¹(so) + dim H¹(sym0)`.
    pub additive: bool,
    pub certified: bool,
    /// Which summand carries H¹(sl): "so", "sym0", "both" or "none".
    pub carrier: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// H¹ with coefficients in 𝔰𝔩, 𝔰𝔬(Q) and the Q-symmetric complement, plus the additivity check.
/// A failed check on certified ranks is an internal error.
pub fn decompose_report<S: LinalgScalar>(
    rep: &Representation<S>,
    form: &FormContext<S>,
    opts: &RankOptions,
) -> Result<DecompositionReport, CohomologyError> {
    let labels = [ModuleLabel::Sl, ModuleLabel::So, ModuleLabel::Sym0];
    let mut results = reports_for_labels(rep, Some(form), &labels, opts).into_iter();
    let mut next = || results.next().expect("one result per label");
    let (sl, so, sym0) = (next()?, next()?, next()?);
    let additive = sl.dim_h1 == so.dim_h1 + sym0.dim_h1;
    let certified = sl.certified && so.certified && sym0.certified;
    if !additive && certified {
        return Err(CohomologyError::Invariant(format!(
            "H1(sl) = {} but H1(so) + H1(sym0) = {} + {}",
            sl.dim_h1, so.dim_h1, sym0.dim_h1
        )));
    }
    let carrier = match (so.dim_h1 > 0, sym0.dim_h1 > 0) {
        (true, true) => "both",
        (true, false) => "so",
        (false, true) => "sym0",
        (false, false) => "none",
    }
    .to_string();
    let mut notes = Vec::new();
    if !additive {
        notes.push("additivity fails on uncertified ranks".into());
    }
    Ok(DecompositionReport { sl, so, sym0, additive, certified, carrier, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{AlgebraicScalar, NumberField};
    use crate::words::PresentationSpec;

    fn torus() -> Presentation {
        Presentation::from_spec(&PresentationSpec { generators: vec!["a".into(), "b".into()], relators: vec!["a b A B".into()] })
            .unwrap()
    }

    #[test]
    fn torus_trivial_coefficients() {
        let q = NumberField::rationals();
        let m = CoefficientModule::<AlgebraicScalar>::trivial(&q, 2, 1);
        let j = cocycle_system(&torus(), &m).unwrap();
        assert_eq!((j.rows(), j.cols()), (1, 2));
        assert!(j.is_zero());
        let r = h1_dims(&torus(), &m, &RankOptions::default()).unwrap();
        assert_eq!((r.dim_z1, r.dim_b1, r.dim_h0, r.dim_h1), (2, 0, 1, 2));
        assert_eq!(h1_basis(&torus(), &m).unwrap().len(), 2);
    }

    #[test]
    fn free_group_has_empty_system() {
        let q = NumberField::rationals();
        let p = Presentation::free(2);
        let m = CoefficientModule::<AlgebraicScalar>::trivial(&q, 2, 3);
        assert_eq!(cocycle_system(&p, &m).unwrap().rows(), 0);
        let r = h1_dims(&p, &m, &RankOptions::default()).unwrap();
        assert_eq!((r.dim_z1, r.dim_h1), (6, 6));
        assert_eq!(h1_basis(&p, &CoefficientModule::<AlgebraicScalar>::trivial(&q, 2, 1)).unwrap().len(), 2);
    }

    #[test]
    fn genus_two_betti() {
        let q = NumberField::rationals();
        let p = Presentation::surface(2);
        let r = h1_dims(&p, &CoefficientModule::<AlgebraicScalar>::trivial(&q, 4, 1), &RankOptions::default()).unwrap();
        assert_eq!(r.dim_h1, 4);
    }

    #[test]
    fn attachment_checked() {
        let q = NumberField::rationals();
        let m = CoefficientModule::<AlgebraicScalar>::trivial(&q, 3, 1);
        assert!(matches!(cocycle_system(&torus(), &m), Err(CohomologyError::NotAttached(_))));
    }

    #[test]
    fn report_json_round_trip() {
        let q = NumberField::rationals();
        let r = h1_dims(&torus(), &CoefficientModule::<AlgebraicScalar>::trivial(&q, 2, 1), &RankOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"dimH1\":2"));
        assert_eq!(serde_json::from_str::<CohomologyReport>(&text).unwrap(), r);
    }

    #[test]
    fn roundoff_only_system_has_rank_zero() {
        let opts = RankOptions::default();
        let rep = crate::reps::fuchsian_genus2(&opts).unwrap();
        let m = coefficient_module(&rep, None, ModuleLabel::Trivial, &opts).unwrap();
        let r = h1_dims(rep.presentation(), &m, &opts).unwrap();
        assert_eq!((r.dim_h0, r.dim_z1, r.dim_b1, r.dim_h1), (1, 4, 0, 4));
        assert!(r.certified);
    }
}
