//! Scalars shared by all linear algebra: exact elements of a number field `ℚ(θ)`
//! (ℚ itself being the degree-one case) and IEEE doubles.

mod algebraic;
mod field;
mod poly;
mod rational;
mod trig;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use algebraic::AlgebraicScalar;
pub use field::{FieldRef, FieldSpec, NumberField};
pub use poly::QPoly;
pub use rational::{approximate_rational, f64_to_rational, format_rational, parse_rational, rational_to_f64};
pub use trig::{cos_pi_over, SUPPORTED_ORDERS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("minimal polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("isolating interval ({0}, {1}) must satisfy lo < hi")]
    BadInterval(String, String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("polynomial has no sign change on the interval")]
    NoSignChange,
    #[error("interval brackets more than one root")]
    AmbiguousRoot,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different number fields")]
    FieldMismatch,
    #[error("residue is a zero divisor modulo the minimal polynomial")]
    NotInvertible,
    #[error("unsupported Coxeter order {0}; supported orders are 2..=7")]
    UnsupportedOrder(u32),
    #[error("cos(pi/{0}) is not expressible in the field: {1}")]
    FieldTooSmall(u32, String),
}

/// Arithmetic contract used by matrices. Exact types compare with `==`; floating types are
/// compared against a tolerance by callers.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Data needed to create constants (the number field, or nothing for doubles).
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;
    const EXACT: bool;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_rational(ctx, &BigRational::from_integer(v.into()))
    }
    fn context(&self) -> Self::Ctx;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    fn is_zero(&self) -> bool;
    /// -1, 0 or +1; exact for exact types.
    fn sign(&self) -> i8;
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;

    /// Zero test used by tolerance-aware checks: exact equality for exact types.
    fn near_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl Scalar for AlgebraicScalar {
    type Ctx = FieldRef;
    const EXACT: bool = true;

    fn zero(ctx: &FieldRef) -> Self {
        AlgebraicScalar::zero(ctx)
    }
    fn one(ctx: &FieldRef) -> Self {
        AlgebraicScalar::one(ctx)
    }
    fn from_rational(ctx: &FieldRef, q: &BigRational) -> Self {
        AlgebraicScalar::from_rational(ctx, q.clone())
    }
    fn context(&self) -> FieldRef {
        self.field().clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        self.inverse()
    }
    fn is_zero(&self) -> bool {
        AlgebraicScalar::is_zero(self)
    }
    fn sign(&self) -> i8 {
        AlgebraicScalar::sign(self)
    }
    fn magnitude(&self) -> f64 {
        AlgebraicScalar::to_f64(self).abs()
    }
    fn to_f64(&self) -> f64 {
        AlgebraicScalar::to_f64(self)
    }
}

impl Scalar for f64 {
    type Ctx = ();
    const EXACT: bool = false;

    fn zero(_: &()) -> Self {
        0.0
    }
    fn one(_: &()) -> Self {
        1.0
    }
    fn from_rational(_: &(), q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn from_i64(_: &(), v: i64) -> Self {
        v as f64
    }
    fn context(&self) {}
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if *self == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// How a job's scalars are realized.
#[derive(Debug, Clone)]
pub enum ScalarMode {
    Exact(FieldRef),
    Rational,
    Float { tolerance: f64 },
}

impl ScalarMode {
    pub fn float(tolerance: f64) -> Result<Self, String> {
        if tolerance > 0.0 && tolerance.is_finite() {
            Ok(Self::Float { tolerance })
        } else {
            Err(format!("float tolerance must be positive, got {tolerance}"))
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Self::Float { .. })
    }

    /// The field exact scalars live in (ℚ for rational mode).
    pub fn field(&self) -> Option<FieldRef> {
        match self {
            Self::Exact(k) => Some(k.clone()),
            Self::Rational => Some(NumberField::rationals()),
            Self::Float { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Exact(_) => "exact",
            Self::Rational => "rational",
            Self::Float { .. } => "float",
        }
    }
}
