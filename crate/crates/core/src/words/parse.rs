//! Text form of words.
//!
//! Tokens are whitespace separated. A token is a generator name, `name^k` for a nonzero
//! integer `k`, or the case-swapped name for the inverse (`A` for `a^-1`, `A1` for `a1^-1`).
//! When every generator name is a single character, compact tokens such as `abAB` are
//! split into characters.

use super::word::{Letter, Word};
use super::WordError;

pub fn word_parse(text: &str, names: &[String]) -> Result<Word, WordError> {
    let compact = names.iter().all(|n| n.chars().count() == 1);
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        parse_token(token, names, compact, &mut letters)?;
    }
    Ok(Word::new(letters))
}

fn parse_token(token: &str, names: &[String], compact: bool, out: &mut Vec<Letter>) -> Result<(), WordError> {
    if let Some((base, exp)) = token.split_once('^') {
        if base.is_empty() {
            return Err(WordError::MalformedToken(token.to_string()));
        }
        let k: i64 = exp.trim().parse().map_err(|_| WordError::MalformedToken(token.to_string()))?;
        if k == 0 {
            return Err(WordError::MalformedToken(token.to_string()));
        }
        let letter = lookup(base, names).ok_or_else(|| WordError::UnknownGenerator(base.to_string()))?;
        let letter = if k < 0 { letter.inverse() } else { letter };
        for _ in 0..k.unsigned_abs() {
            out.push(letter);
        }
        return Ok(());
    }
    if let Some(letter) = lookup(token, names) {
        out.push(letter);
        return Ok(());
    }
    if compact && token.chars().count() > 1 {
        for c in token.chars() {
            let s = c.to_string();
            out.push(lookup(&s, names).ok_or(WordError::UnknownGenerator(s))?);
        }
        return Ok(());
    }
    Err(WordError::UnknownGenerator(token.to_string()))
}

fn lookup(token: &str, names: &[String]) -> Option<Letter> {
    if let Some(i) = names.iter().position(|n| n == token) {
        return Some(Letter::new(i, 1));
    }
    let swapped = swap_case(token);
    if swapped == token {
        return None;
    }
    names.iter().position(|n| *n == swapped).map(|i| Letter::new(i, -1))
}

fn swap_case(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_uppercase() {
                c.to_lowercase().next().unwrap_or(c)
            } else if c.is_lowercase() {
                c.to_uppercase().next().unwrap_or(c)
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cancelling_pair_is_empty() {
        assert!(word_parse("a A", &names(&["a", "b"])).unwrap().is_empty());
    }

    #[test]
    fn commutator() {
        let w = word_parse("a b A B", &names(&["a", "b"])).unwrap();
        assert_eq!(w, Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)]));
        assert_eq!(word_parse("abAB", &names(&["a", "b"])).unwrap(), w);
    }

    #[test]
    fn explicit_inverse_powers() {
        let w = word_parse("a^-1 a^-1 a", &names(&["a"])).unwrap();
        assert_eq!(w, Word::from_pairs(&[(0, -1)]));
        let w = word_parse("s1^3", &names(&["s1", "s2"])).unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn multi_letter_case_swap() {
        let ns = names(&["a1", "b1"]);
        let w = word_parse("a1 b1 A1 B1", &ns).unwrap();
        assert_eq!(w, Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)]));
    }

    #[test]
    fn errors() {
        let ns = names(&["a", "b"]);
        assert_eq!(word_parse("a c", &ns), Err(WordError::UnknownGenerator("c".into())));
        assert!(matches!(word_parse("a^x", &ns), Err(WordError::MalformedToken(_))));
        assert!(matches!(word_parse("^2", &ns), Err(WordError::MalformedToken(_))));
        assert!(matches!(word_parse("a^0", &ns), Err(WordError::MalformedToken(_))));
    }
}
