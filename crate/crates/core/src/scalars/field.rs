//! Number fields ℚ[x]/(m(x)) with a designated real root θ.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::QPoly;
use super::rational::{format_rational, parse_rational, rational_to_f64};
use super::ScalarError;

/// `ℚ(θ)` presented as `ℚ[x]/(m)` with `θ` the unique root of `m` in an isolating interval.
///
/// The bracket around `θ` is refined lazily; refinement happens behind a lock and only ever
/// shrinks the interval, so handles remain valid while shared across threads.
pub struct NumberField {
    min_poly: QPoly,
    /// Monic copy of `min_poly` used for reduction.
    modulus: QPoly,
    original: (BigRational, BigRational),
    bracket: RwLock<(BigRational, BigRational)>,
    /// `θ^(d+i)` reduced to degree < d, for `i = 0..d-1`.
    reduction: Vec<Vec<BigRational>>,
}

pub type FieldRef = Arc<NumberField>;

impl NumberField {
    /// Validates squarefreeness and the sign change, then narrows the interval until it
    /// isolates exactly one root.
    pub fn new(min_poly: QPoly, lo: BigRational, hi: BigRational) -> Result<FieldRef, ScalarError> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ScalarError::ConstantPolynomial),
        };
        if lo >= hi {
            return Err(ScalarError::BadInterval(format_rational(&lo), format_rational(&hi)));
        }
        if !min_poly.is_squarefree() {
            return Err(ScalarError::NotSquarefree(min_poly.to_string()));
        }
        let s_lo = min_poly.sign_at(&lo);
        let s_hi = min_poly.sign_at(&hi);
        if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
            return Err(ScalarError::NoSignChange);
        }
        if min_poly.count_roots(&lo, &hi) != 1 {
            return Err(ScalarError::AmbiguousRoot);
        }

        let modulus = min_poly.monic();
        let reduction = reduction_table(&modulus, degree);
        Ok(Arc::new(Self {
            min_poly,
            modulus,
            original: (lo.clone(), hi.clone()),
            bracket: RwLock::new((lo, hi)),
            reduction,
        }))
    }

    /// ℚ as the degree-one field `x = 0`.
    pub fn rationals() -> FieldRef {
        Self::new(QPoly::x(), BigRational::from_integer((-1).into()), BigRational::one())
            .expect("x has a simple root at 0")
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<FieldRef, ScalarError> {
        let coeffs = spec.min_poly.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        let lo = parse_rational(&spec.interval[0])?;
        let hi = parse_rational(&spec.interval[1])?;
        Self::new(QPoly::new(coeffs), lo, hi)
    }

    pub fn to_spec(&self) -> FieldSpec {
        FieldSpec {
            min_poly: self.min_poly.coeffs().iter().map(format_rational).collect(),
            interval: [format_rational(&self.original.0), format_rational(&self.original.1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn original_interval(&self) -> (BigRational, BigRational) {
        self.original.clone()
    }

    pub fn bracket(&self) -> (BigRational, BigRational) {
        self.bracket.read().expect("bracket lock poisoned").clone()
    }

    pub(crate) fn reduction_row(&self, power_offset: usize) -> &[BigRational] {
        &self.reduction[power_offset]
    }

    /// Halves the isolating interval once, keeping the half that holds θ.
    pub fn refine(&self) {
        let mut guard = self.bracket.write().expect("bracket lock poisoned");
        let (lo, hi) = guard.clone();
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let s_mid = self.modulus.sign_at(&mid);
        if s_mid == 0 {
            // θ is rational and equal to mid; collapse to a tiny bracket around it.
            let eps = (&hi - &lo) / BigRational::from_integer(1024.into());
            *guard = (&mid - &eps, &mid + &eps);
            return;
        }
        if s_mid == self.modulus.sign_at(&lo) {
            *guard = (mid, hi);
        } else {
            *guard = (lo, mid);
        }
    }

    /// Refines until the bracket width is at most `width`.
    pub fn refine_to(&self, width: &BigRational) {
        loop {
            let (lo, hi) = self.bracket();
            if &(&hi - &lo) <= width {
                return;
            }
            self.refine();
        }
    }

    /// θ as a double, accurate to roughly machine precision.
    pub fn theta_f64(&self) -> f64 {
        self.refine_to(&BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), 60)));
        let (lo, hi) = self.bracket();
        rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into())))
    }

    /// Same polynomial and same designated root.
    pub fn same_as(&self, other: &NumberField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.modulus != other.modulus {
            return false;
        }
        let (a_lo, a_hi) = self.bracket();
        let (b_lo, b_hi) = other.bracket();
        let lo = if a_lo > b_lo { a_lo } else { b_lo };
        let hi = if a_hi < b_hi { a_hi } else { b_hi };
        lo < hi && self.modulus.count_roots(&lo, &hi) == 1
    }
}

fn reduction_table(modulus: &QPoly, d: usize) -> Vec<Vec<BigRational>> {
    // θ^d = -(c_0 + c_1 θ + … + c_{d-1} θ^{d-1}) for monic modulus.
    let mut current: Vec<BigRational> = (0..d).map(|i| -modulus.coeff(i)).collect();
    let mut rows = Vec::with_capacity(d);
    for _ in 0..d.max(1) {
        rows.push(current.clone());
        // multiply by θ
        let top = current[d - 1].clone();
        let mut next = vec![BigRational::zero(); d];
        for i in (1..d).rev() {
            next[i] = current[i - 1].clone();
        }
        for (i, x) in next.iter_mut().enumerate() {
            *x += &top * -modulus.coeff(i);
        }
        current = next;
    }
    rows
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = &self.original;
        write!(f, "NumberField({}, ({}, {}))", self.min_poly, format_rational(lo), format_rational(hi))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// Serialized field: `{"min_poly": [rationals, low degree first], "interval": ["lo","hi"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub min_poly: Vec<String>,
    pub interval: [String; 2],
}
