//! Free-group words, finite presentations and Fox derivatives.

mod fox;
mod parse;
mod word;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fox::{fox_derivative, GroupRingElement};
pub use parse::word_parse;
pub use word::{Letter, Word, WordDisplay};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {0} references generator index {1} outside the presentation")]
    IndexOutOfRange(usize, usize),
}

/// Serialized presentation: `{"generators": ["a","b"], "relators": ["a b A B"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

/// `⟨generators | relators⟩`. Relators are stored freely reduced but not cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDiagnostics {
    pub generators: usize,
    pub relators: usize,
    pub relator_lengths: Vec<usize>,
}

impl Presentation {
    /// Empty relators are dropped with a warning.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, WordError> {
        for (i, name) in generator_names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('^') {
                return Err(WordError::MalformedToken(name.clone()));
            }
            if generator_names[..i].contains(name) {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        let k = generator_names.len();
        let mut kept = Vec::with_capacity(relators.len());
        for (j, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator().filter(|&g| g >= k) {
                return Err(WordError::IndexOutOfRange(j, g));
            }
            if r.is_empty() {
                log::warn!("relator {j} reduces to the empty word and is dropped");
                continue;
            }
            kept.push(r);
        }
        Ok(Self { generator_names, relators: kept })
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Self, WordError> {
        let relators = spec
            .relators
            .iter()
            .map(|t| word_parse(t, &spec.generators))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(spec.generators.clone(), relators)
    }

    pub fn to_spec(&self) -> PresentationSpec {
        PresentationSpec {
            generators: self.generator_names.clone(),
            relators: self.relators.iter().map(|r| self.word_text(r)).collect(),
        }
    }

    /// Free group of the given rank, generators `x1, x2, …`.
    pub fn free(rank: usize) -> Self {
        Self { generator_names: (1..=rank).map(|i| format!("x{i}")).collect(), relators: Vec::new() }
    }

    /// `⟨a1, b1, …, ag, bg | [a1,b1]⋯[ag,bg]⟩`.
    pub fn surface(genus: usize) -> Self {
        let mut names = Vec::new();
        let mut letters = Vec::new();
        for i in 0..genus {
            names.push(format!("a{}", i + 1));
            names.push(format!("b{}", i + 1));
            let (a, b) = (2 * i, 2 * i + 1);
            letters.extend([Letter::new(a, 1), Letter::new(b, 1), Letter::new(a, -1), Letter::new(b, -1)]);
        }
        Self { generator_names: names, relators: vec![Word::new(letters)] }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.display(&self.generator_names).to_string()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        word_parse(text, &self.generator_names)
    }

    /// Same generators, each relator replaced by a cyclic rotation.
    pub fn with_rotated_relators(&self, shifts: &[usize]) -> Self {
        let relators =
            self.relators.iter().enumerate().map(|(j, r)| r.rotate(shifts.get(j).copied().unwrap_or(0))).collect();
        Self { generator_names: self.generator_names.clone(), relators }
    }

    pub fn validate(&self) -> Result<PresentationDiagnostics, WordError> {
        let k = self.generator_count();
        for (j, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.max_generator().filter(|&g| g >= k) {
                return Err(WordError::IndexOutOfRange(j, g));
            }
        }
        Ok(PresentationDiagnostics {
            generators: k,
            relators: self.relators.len(),
            relator_lengths: self.relators.iter().map(Word::len).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(gens: &[&str], rels: &[&str]) -> PresentationSpec {
        PresentationSpec {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            relators: rels.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn torus_diagnostics() {
        let p = Presentation::from_spec(&spec(&["a", "b"], &["a b A B"])).unwrap();
        let d = p.validate().unwrap();
        assert_eq!((d.generators, d.relators, d.relator_lengths.clone()), (2, 1, vec![4]));
    }

    #[test]
    fn genus_two_diagnostics() {
        let p = Presentation::surface(2);
        let d = p.validate().unwrap();
        assert_eq!((d.generators, d.relators, d.relator_lengths), (4, 1, vec![8]));
        let again = Presentation::from_spec(&p.to_spec()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn empty_relators_dropped() {
        let p = Presentation::from_spec(&spec(&["a", "b"], &["a A", "b b"])).unwrap();
        assert_eq!(p.relator_count(), 1);
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        assert!(matches!(Presentation::from_spec(&spec(&["a", "a"], &[])), Err(WordError::DuplicateGenerator(_))));
        assert!(matches!(Presentation::from_spec(&spec(&["a"], &["a b"])), Err(WordError::UnknownGenerator(_))));
        let bad = Presentation::new(vec!["a".into()], vec![Word::from_pairs(&[(3, 1)])]);
        assert!(matches!(bad, Err(WordError::IndexOutOfRange(0, 3))));
    }
}
