use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Alphabet, Symbol};
use crate::Error;

/// A finite word; serialises as a string of digit characters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    /// Least `p` with `w[i] = w[i + p]` and `p | len`.
    pub fn primitive_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(n)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&[Symbol]> for Word {
    fn from(s: &[Symbol]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", char::from(b'0' + s))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::Argument(format!("word character {c:?} is not a digit")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of words sharing one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSet {
    length: usize,
    words: BTreeSet<Word>,
}

impl WordSet {
    pub fn empty(length: usize) -> Self {
        WordSet {
            length,
            words: BTreeSet::new(),
        }
    }

    /// Panics if a word has the wrong length.
    pub fn from_words(length: usize, words: impl IntoIterator<Item = Word>) -> Self {
        let mut set = WordSet::empty(length);
        for w in words {
            set.insert(w);
        }
        set
    }

    pub fn insert(&mut self, w: Word) -> bool {
        assert_eq!(w.len(), self.length, "word length mismatch in WordSet");
        self.words.insert(w)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn difference(&self, other: &WordSet) -> WordSet {
        WordSet {
            length: self.length,
            words: self.words.difference(&other.words).cloned().collect(),
        }
    }

    /// Words as digit strings, in lexicographic order.
    pub fn to_strings(&self) -> Vec<String> {
        self.words.iter().map(ToString::to_string).collect()
    }
}

/// Every word of length `n` over `alphabet`.
pub fn all_words(alphabet: Alphabet, n: usize) -> WordSet {
    let k = alphabet.size() as usize;
    let total = k.pow(n as u32);
    WordSet::from_words(
        n,
        (0..total).map(|mut idx| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().rev() {
                *slot = (idx % k) as Symbol;
                idx /= k;
            }
            Word(w)
        }),
    )
}
