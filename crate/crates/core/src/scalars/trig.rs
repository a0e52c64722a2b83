//! Exact values of `cos(π/m)` for the Coxeter orders used by reflection groups.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;

use super::algebraic::AlgebraicScalar;
use super::field::FieldRef;
use super::poly::QPoly;
use super::rational::{approximate_rational, rational_to_f64};
use super::ScalarError;

pub const SUPPORTED_ORDERS: [u32; 6] = [2, 3, 4, 5, 6, 7];

const MAX_ASSIGNMENTS: usize = 200_000;

/// Minimal polynomial of `2cos(π/m)` over ℚ.
fn double_cos_min_poly(m: u32) -> QPoly {
    match m {
        2 => QPoly::from_i64(&[0, 1]),
        3 => QPoly::from_i64(&[-1, 1]),
        4 => QPoly::from_i64(&[-2, 0, 1]),
        5 => QPoly::from_i64(&[-1, -1, 1]),
        6 => QPoly::from_i64(&[-3, 0, 1]),
        7 => QPoly::from_i64(&[1, -2, -1, 1]),
        _ => unreachable!("order checked by caller"),
    }
}

/// `cos(π/m)` as an element of `field`.
///
/// Orders 2 and 3 are rational. For the others the value is located by matching each real
/// conjugate of θ to a conjugate of `2cos(π/m)`, interpolating, rounding the coefficients to
/// nearby rationals, and keeping the first candidate that satisfies the minimal relation
/// exactly and agrees numerically at θ.
pub fn cos_pi_over(m: u32, field: &FieldRef) -> Result<AlgebraicScalar, ScalarError> {
    if !SUPPORTED_ORDERS.contains(&m) {
        return Err(ScalarError::UnsupportedOrder(m));
    }
    let half = BigRational::new(1.into(), 2.into());
    match m {
        2 => return Ok(AlgebraicScalar::zero(field)),
        3 => return Ok(AlgebraicScalar::from_rational(field, half)),
        _ => {}
    }

    let psi = double_cos_min_poly(m);
    let psi_deg = psi.degree().unwrap_or(0);
    let d = field.degree();
    if psi_deg > d || !d.is_multiple_of(psi_deg) {
        return Err(ScalarError::FieldTooSmall(m, format!("degree {d} is not a multiple of {psi_deg}")));
    }

    let modulus = field.modulus();
    let roots = modulus.isolate_real_roots();
    if roots.len() != d {
        return Err(ScalarError::FieldTooSmall(m, "field is not totally real".into()));
    }
    let conjugates: Vec<f64> = roots.iter().map(|(lo, hi)| refine_root(modulus, lo, hi)).collect();
    let theta = field.theta_f64();
    let designated = conjugates
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - theta).abs().total_cmp(&(b.1 - theta).abs()))
        .map(|(i, _)| i)
        .expect("at least one root");

    let psi_roots: Vec<f64> = psi.isolate_real_roots().iter().map(|(lo, hi)| refine_root(&psi, lo, hi)).collect();
    let target = 2.0 * (std::f64::consts::PI / m as f64).cos();

    let others = d - 1;
    let total = psi_deg.checked_pow(others as u32).unwrap_or(usize::MAX);
    if total > MAX_ASSIGNMENTS {
        return Err(ScalarError::FieldTooSmall(m, format!("field degree {d} too large to search")));
    }

    let vandermonde = DMatrix::from_fn(d, d, |i, j| conjugates[i].powi(j as i32));
    let lu = vandermonde.lu();
    for code in 0..total {
        let mut c = code;
        let values = DVector::from_fn(d, |i, _| {
            if i == designated {
                target
            } else {
                let pick = c % psi_deg;
                c /= psi_deg;
                psi_roots[pick]
            }
        });
        let Some(h) = lu.solve(&values) else { continue };
        for max_den in [1_000u64, 1_000_000, 1_000_000_000] {
            let Some(coeffs) = h.iter().map(|&x| approximate_rational(x, max_den)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let candidate = AlgebraicScalar::from_poly(field, &QPoly::new(coeffs));
            if psi_vanishes(&psi, &candidate) && (candidate.to_f64() - target).abs() < 1e-9 {
                return Ok(candidate.scale(&BigRational::new(1.into(), 2.into())));
            }
        }
    }
    Err(ScalarError::FieldTooSmall(m, "no element of the field satisfies the minimal relation".into()))
}

fn psi_vanishes(psi: &QPoly, x: &AlgebraicScalar) -> bool {
    let mut acc = AlgebraicScalar::zero(x.field());
    for c in psi.coeffs().iter().rev() {
        acc = &(&acc * x) + &AlgebraicScalar::from_rational(x.field(), c.clone());
    }
    acc.is_zero()
}

fn refine_root(p: &QPoly, lo: &BigRational, hi: &BigRational) -> f64 {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = p.sign_at(&lo);
    let two = BigRational::from_integer(2.into());
    for _ in 0..80 {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return rational_to_f64(&mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    rational_to_f64(&((lo + hi) / two))
}
