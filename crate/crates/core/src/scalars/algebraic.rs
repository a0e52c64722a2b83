//! Exact elements of a [`NumberField`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldRef;
#[cfg(test)]
use super::field::NumberField;
use super::poly::QPoly;
use super::rational::{format_rational, parse_rational, rational_to_f64};
use super::ScalarError;

/// Reduced residue `c_0 + c_1 θ + … + c_{d-1} θ^{d-1}` in `ℚ(θ)`.
#[derive(Clone)]
pub struct AlgebraicScalar {
    field: FieldRef,
    coeffs: Vec<BigRational>,
}

impl AlgebraicScalar {
    pub fn zero(field: &FieldRef) -> Self {
        Self { field: Arc::clone(field), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &FieldRef) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &FieldRef, q: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = q;
        s
    }

    pub fn from_integer(field: &FieldRef, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    /// θ itself (reduced, so in a degree-one field this is the rational root).
    pub fn theta(field: &FieldRef) -> Self {
        Self::from_poly(field, &QPoly::x())
    }

    /// Residue of an arbitrary polynomial in θ.
    pub fn from_poly(field: &FieldRef, p: &QPoly) -> Self {
        let r = p.rem(field.modulus());
        let d = field.degree();
        let coeffs = (0..d).map(|i| r.coeff(i)).collect();
        Self { field: Arc::clone(field), coeffs }
    }

    /// Parses a coefficient array of `"p/q"` strings, low degree first.
    pub fn parse_coeffs(field: &FieldRef, coeffs: &[String]) -> Result<Self, ScalarError> {
        let cs = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_poly(field, &QPoly::new(cs)))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value if it lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn check_field(&self, other: &Self) -> Result<(), ScalarError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { field: Arc::clone(&self.field), coeffs }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { field: Arc::clone(&self.field), coeffs }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.coeffs.len();
        if d == 1 {
            return Self { field: Arc::clone(&self.field), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..d].to_vec();
        for (offset, high) in prod[d..].iter().enumerate() {
            if high.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(self.field.reduction_row(offset)) {
                if !r.is_zero() {
                    *c += high * r;
                }
            }
        }
        Self { field: Arc::clone(&self.field), coeffs }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Inverse via the extended gcd of the residue with the modulus.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let (g, s, _) = self.as_poly().xgcd(self.field.modulus());
        if !g.is_constant() {
            return Err(ScalarError::NotInvertible);
        }
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Enclosure of the value at θ using the current bracket.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let (lo, hi) = self.field.bracket();
        self.as_poly().eval_interval(&lo, &hi)
    }

    /// Exact sign, refining the root bracket until the enclosure excludes zero.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        // With a reducible modulus a nonzero residue can still vanish at θ.
        let g = self.as_poly().gcd(self.field.modulus());
        if !g.is_constant() {
            let (lo, hi) = self.field.bracket();
            if g.count_roots(&lo, &hi) == 1 {
                return 0;
            }
        }
        loop {
            let (lo, hi) = self.enclosure();
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            self.field.refine();
        }
    }

    /// Value within `10^-digits` of the true real number.
    pub fn to_float(&self, digits: u32) -> f64 {
        if let Some(q) = self.as_rational() {
            return rational_to_f64(q);
        }
        let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits.max(1) as usize));
        loop {
            let (lo, hi) = self.enclosure();
            if &hi - &lo <= tol {
                return rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into())));
            }
            self.field.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(17)
    }

    /// Rough size for diagnostics: sum of coefficient bit lengths.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.numer().bits() + c.denom().bits()).sum()
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field))
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(q));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})θ", format_rational(c))?,
                _ => write!(f, "({})θ^{i}", format_rational(c))?,
            }
        }
        Ok(())
    }
}

// Operators panic on mismatched fields; use the `checked_*` methods to get an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&AlgebraicScalar> for &AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $method(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
                self.check_field(rhs).expect("scalars from different number fields");
                self.$inner(rhs)
            }
        }
        impl $tr for AlgebraicScalar {
            type Output = AlgebraicScalar;
            fn $method(self, rhs: AlgebraicScalar) -> AlgebraicScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(coeffs: &[i64], lo: i64, hi: i64) -> FieldRef {
        NumberField::new(QPoly::from_i64(coeffs), BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))
            .unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn theta_squared_is_two() {
        let k = field(&[-2, 0, 1], 1, 2);
        let t = AlgebraicScalar::theta(&k);
        assert_eq!(&t * &t, AlgebraicScalar::from_integer(&k, 2));
    }

    #[test]
    fn rational_sum() {
        let k = NumberField::rationals();
        let a = AlgebraicScalar::from_rational(&k, rat(1, 3));
        let b = AlgebraicScalar::from_rational(&k, rat(1, 6));
        assert_eq!(a + b, AlgebraicScalar::from_rational(&k, rat(1, 2)));
    }

    #[test]
    fn inverse_in_quartic_field() {
        // θ^4 = 14θ^2 - 9  ⇒  θ^{-1} = (14θ - θ^3)/9
        let k = field(&[9, 0, -14, 0, 1], 3, 4);
        let t = AlgebraicScalar::theta(&k);
        let inv = t.inverse().unwrap();
        let expect = AlgebraicScalar::from_poly(&k, &QPoly::new(vec![rat(0, 1), rat(14, 9), rat(0, 1), rat(-1, 9)]));
        assert_eq!(inv, expect);
        assert!((&inv * &t).is_one());
    }

    #[test]
    fn signs() {
        let k = field(&[-2, 0, 1], 1, 2);
        let t = AlgebraicScalar::theta(&k);
        let one = AlgebraicScalar::one(&k);
        assert_eq!(AlgebraicScalar::zero(&k).sign(), 0);
        assert_eq!((&t - &one).sign(), 1);
        let three = AlgebraicScalar::from_integer(&k, 3);
        let two = AlgebraicScalar::from_integer(&k, 2);
        assert_eq!((&three - &(&two * &t)).sign(), 1);
        assert_eq!((&(&two * &t) - &three).sign(), -1);
    }

    #[test]
    fn float_conversion() {
        let k = field(&[-2, 0, 1], 1, 2);
        let t = AlgebraicScalar::theta(&k);
        assert!((t.to_float(6) - std::f64::consts::SQRT_2).abs() < 1e-6);
        let third = AlgebraicScalar::from_rational(&k, rat(1, 3));
        assert!((third.to_float(6) - 0.333333).abs() < 1e-6);
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let k = field(&[-2, 0, 1], 1, 2);
        let l = field(&[-3, 0, 1], 1, 2);
        let z = AlgebraicScalar::zero(&k);
        assert!(matches!(z.inverse(), Err(ScalarError::DivisionByZero)));
        let a = AlgebraicScalar::one(&k);
        let b = AlgebraicScalar::one(&l);
        assert!(matches!(a.checked_add(&b), Err(ScalarError::FieldMismatch)));
    }

    #[test]
    fn zero_divisor_in_reducible_modulus() {
        // (x^2 - 1) is squarefree but reducible; θ - 1 at the root θ = 1 is zero in the
        // embedding yet nonzero as a residue, so inversion reports NotInvertible.
        let k = NumberField::new(QPoly::from_i64(&[-1, 0, 1]), rat(1, 2), rat(2, 1)).unwrap();
        let t = AlgebraicScalar::theta(&k);
        let x = &t - &AlgebraicScalar::one(&k);
        assert!(matches!(x.inverse(), Err(ScalarError::NotInvertible)));
        assert_eq!(x.sign(), 0);
    }
}
