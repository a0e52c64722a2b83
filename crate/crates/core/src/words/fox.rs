//! Integral group ring of a free group and Fox free differential calculus.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::Word;

/// Finite ℤ-linear combination of reduced words, kept canonical: equal words merged,
/// zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// `w · self`.
    pub fn left_mul(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(w.concat(v), c.clone());
        }
        out
    }

    /// `self · w`.
    pub fn right_mul(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (v, c) in &self.terms {
            out.add_term(v.concat(w), c.clone());
        }
        out
    }

    /// Human-readable form such as `1 - a b a^-1`.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}·"));
            }
            out.push_str(&w.display(names).to_string());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

/// `∂w/∂g`, from the product rule applied letter by letter:
/// a letter `g` at position i contributes `+prefix_i`, a letter `g⁻¹` contributes
/// `-prefix_i · g⁻¹ = -prefix_{i+1}`.
pub fn fox_derivative(w: &Word, g: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (i, l) in w.letters().iter().enumerate() {
        if l.generator != g {
            continue;
        }
        if l.exponent > 0 {
            out.add_term(w.prefix(i), BigInt::one());
        } else {
            out.add_term(w.prefix(i + 1), -BigInt::one());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[(usize, i8)]) -> Word {
        Word::from_pairs(p)
    }

    #[test]
    fn square() {
        // ∂(a²)/∂a = 1 + a
        let d = fox_derivative(&w(&[(0, 1), (0, 1)]), 0);
        let expect = GroupRingElement::one().add(&GroupRingElement::from_word(w(&[(0, 1)])));
        assert_eq!(d, expect);
    }

    #[test]
    fn commutator_derivatives() {
        let r = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        // ∂/∂a = 1 - abA
        let da = GroupRingElement::one().sub(&GroupRingElement::from_word(w(&[(0, 1), (1, 1), (0, -1)])));
        assert_eq!(fox_derivative(&r, 0), da);
        // ∂/∂b = a - abAB
        let db = GroupRingElement::from_word(w(&[(0, 1)])).sub(&GroupRingElement::from_word(r.clone()));
        assert_eq!(fox_derivative(&r, 1), db);
    }

    #[test]
    fn inverse_generator_and_unrelated() {
        let inv = w(&[(0, -1)]);
        assert_eq!(fox_derivative(&inv, 0), GroupRingElement::zero().sub(&GroupRingElement::from_word(inv.clone())));
        assert!(fox_derivative(&inv, 1).is_zero());
        assert_eq!(fox_derivative(&w(&[(2, 1)]), 2), GroupRingElement::one());
    }

    #[test]
    fn canonical_merge() {
        let mut e = GroupRingElement::zero();
        e.add_term(w(&[(0, 1)]), BigInt::from(2));
        e.add_term(w(&[(0, 1)]), BigInt::from(-2));
        assert!(e.is_zero());
    }
}
