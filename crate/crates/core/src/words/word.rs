use std::fmt;

/// One letter `g^±1` of a free-group word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    /// +1 or -1.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Self { generator: self.generator, exponent: -self.exponent }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.exponent == -other.exponent
    }
}

/// Freely reduced word in a free group on indexed generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Self { letters: stack }
    }

    pub fn generator(g: usize) -> Self {
        Self { letters: vec![Letter::new(g, 1)] }
    }

    /// Builds a word from `(generator, ±1)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Self::new(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, n: usize) -> Self {
        Self::new(std::iter::repeat_n(self.letters.iter().copied(), n).flatten())
    }

    /// The first `n` letters. Prefixes of reduced words are reduced.
    pub fn prefix(&self, n: usize) -> Self {
        Self { letters: self.letters[..n].to_vec() }
    }

    /// Rotation by `shift` letters, reduced.
    pub fn rotate(&self, shift: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let s = shift % self.letters.len();
        Self::new(self.letters[s..].iter().chain(self.letters[..s].iter()).copied())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(l.generator).map(String::as_str).unwrap_or("?");
            if l.exponent > 0 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^-1")?;
            }
        }
        Ok(())
    }
}
