//! Dense matrices over [`Scalar`]: exact and numeric rank, kernels and form signatures.

mod exact;
mod matrix;
mod numeric;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::{AlgebraicScalar, Scalar, ScalarError};

pub use exact::{independent_subset, kernel_basis, rank_exact, signature};
pub use matrix::Matrix;
pub use numeric::{kernel_numeric, rank_numeric, signature_numeric};

pub const DEFAULT_GAP_THRESHOLD: f64 = 1e3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(&'static str),
    #[error("singular value decomposition failed: {0}")]
    SvdFailure(&'static str),
    #[error("relative tolerance {0} is outside (0, 1)")]
    BadTolerance(f64),
    #[error("internal check failed: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Numeric,
}

/// Outcome of a rank computation. `gap` is present only in numeric mode and may be infinite,
/// which serializes as the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub mode: RankMode,
    #[serde(serialize_with = "ser_gap", deserialize_with = "de_gap", default)]
    pub gap: Option<f64>,
    pub certified: bool,
}

fn ser_gap<S: Serializer>(gap: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match gap {
        None => s.serialize_none(),
        Some(g) if g.is_infinite() => s.serialize_str("inf"),
        Some(g) => s.serialize_f64(*g),
    }
}

fn de_gap<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }
    match Option::<Raw>::deserialize(d)? {
        None => Ok(None),
        Some(Raw::Num(x)) => Ok(Some(x)),
        Some(Raw::Text(t)) if t == "inf" => Ok(Some(f64::INFINITY)),
        Some(Raw::Text(t)) => Err(serde::de::Error::custom(format!("bad gap value {t:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOptions {
    /// Relative singular-value threshold, float mode only.
    pub tolerance: f64,
    pub gap_threshold: f64,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { tolerance: 1e-9, gap_threshold: DEFAULT_GAP_THRESHOLD }
    }
}

/// Mode-dispatched linear algebra: exact elimination or SVD.
pub trait LinalgScalar: Scalar {
    fn rank(m: &Matrix<Self>, opts: &RankOptions) -> Result<RankResult, LinalgError>;
    fn kernel(m: &Matrix<Self>, opts: &RankOptions) -> Result<(Vec<Vec<Self>>, RankResult), LinalgError>;
    fn inertia(q: &Matrix<Self>, opts: &RankOptions) -> Result<(usize, usize, usize), LinalgError>;
}

impl LinalgScalar for AlgebraicScalar {
    fn rank(m: &Matrix<Self>, _: &RankOptions) -> Result<RankResult, LinalgError> {
        rank_exact(m)
    }

    fn kernel(m: &Matrix<Self>, _: &RankOptions) -> Result<(Vec<Vec<Self>>, RankResult), LinalgError> {
        let basis = kernel_basis(m)?;
        let rank = RankResult { rank: m.cols() - basis.len(), mode: RankMode::Exact, gap: None, certified: true };
        Ok((basis, rank))
    }

    fn inertia(q: &Matrix<Self>, _: &RankOptions) -> Result<(usize, usize, usize), LinalgError> {
        signature(q)
    }
}

impl LinalgScalar for f64 {
    fn rank(m: &Matrix<Self>, opts: &RankOptions) -> Result<RankResult, LinalgError> {
        rank_numeric(m, opts.tolerance, opts.gap_threshold)
    }

    fn kernel(m: &Matrix<Self>, opts: &RankOptions) -> Result<(Vec<Vec<Self>>, RankResult), LinalgError> {
        kernel_numeric(m, opts.tolerance, opts.gap_threshold)
    }

    fn inertia(q: &Matrix<Self>, opts: &RankOptions) -> Result<(usize, usize, usize), LinalgError> {
        signature_numeric(q, opts.tolerance.max(1e-12))
    }
}
