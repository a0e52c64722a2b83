//! String form `"p/q"` for exact rationals and conversions to and from `f64`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let t = text.trim();
    let bad = || ScalarError::Parse(text.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_val: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            s => s.parse().map_err(|_| bad())?,
        };
        let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = int_val.abs() * &scale + frac_val;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Canonical `"p/q"` with `q > 0` and `gcd(|p|, q) = 1`; integers keep the `/1`.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Large numerators or denominators: shift both down to a common scale.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb.max(db) - 1000).max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
    if d == 0.0 {
        return if n.is_sign_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    n / d
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Best rational approximation with denominator at most `max_den`, by continued fractions.
pub fn approximate_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let max_den = BigInt::from(max_den);
    for _ in 0..64 {
        let a = rest.floor();
        let a_int = BigInt::from(a as u64);
        let p2 = &a_int * &p1 + &p0;
        let q2 = &a_int * &q1 + &q0;
        if q2 > max_den {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
        if rest > 1e15 {
            break;
        }
    }
    if q1.is_zero() {
        return None;
    }
    let r = BigRational::new(p1, q1);
    Some(if negative { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-4").unwrap(), BigRational::from_integer((-4).into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("2/-4").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn canonical_format() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&BigRational::from_integer(5.into())), "5/1");
    }

    #[test]
    fn continued_fraction_recovers_small_fractions() {
        let r = approximate_rational(-11.0 / 12.0, 1000).unwrap();
        assert_eq!(r, BigRational::new((-11).into(), 12.into()));
        assert_eq!(approximate_rational(0.0, 10).unwrap(), BigRational::zero());
    }
}
