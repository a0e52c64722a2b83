//! Dense univariate polynomials over ℚ, low degree first.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::format_rational;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                let shift = top - dd;
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &c * d;
                }
                quot[shift] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::rational::rational_to_f64(c);
        }
        acc
    }

    /// Composition `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Enclosure of `{ p(t) : lo ≤ t ≤ hi }` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc_lo = BigRational::zero();
        let mut acc_hi = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            let products = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
            let mut mn = products[0].clone();
            let mut mx = products[0].clone();
            for p in &products[1..] {
                if *p < mn {
                    mn = p.clone();
                }
                if *p > mx {
                    mx = p.clone();
                }
            }
            acc_lo = mn + c;
            acc_hi = mx + c;
        }
        (acc_lo, acc_hi)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Sturm chain `p, p', -rem(p, p'), …`.
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = self.sturm_chain();
        let v_lo = sign_variations(&chain, lo);
        let v_hi = sign_variations(&chain, hi);
        v_lo.saturating_sub(v_hi)
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> BigRational {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return BigRational::one(),
        };
        let max_ratio = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        max_ratio + BigRational::from_integer(2.into())
    }

    /// Disjoint rational intervals `(lo, hi)` each containing exactly one real root,
    /// sorted ascending. `self` must be squarefree.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        if self.is_constant() {
            return Vec::new();
        }
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        let two = BigRational::from_integer(2.into());
        while let Some((lo, hi)) = stack.pop() {
            let n = self.count_roots(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if !self.eval(&hi).is_zero() {
                    out.push((lo, hi));
                } else {
                    out.push(self.open_bracket_around(&hi, &(&hi - &lo)));
                }
                continue;
            }
            let mid = (&lo + &hi) / &two;
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Bracket `(r - δ, r + δ)` around a rational root `r` containing no other root
    /// and with nonzero endpoint values.
    fn open_bracket_around(&self, r: &BigRational, width: &BigRational) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(2.into());
        let mut delta = width / &two;
        loop {
            let lo = r - &delta;
            let hi = r + &delta;
            if self.count_roots(&lo, &hi) == 1 && !self.eval(&lo).is_zero() && !self.eval(&hi).is_zero() {
                return (lo, hi);
            }
            delta /= &two;
        }
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})x", format_rational(c))?,
                _ => write!(f, "({})x^{i}", format_rational(c))?,
            }
        }
        Ok(())
    }
}
