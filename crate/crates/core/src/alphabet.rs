//! Alphabets and words.
//!
//! Symbols are opaque strings. An [`Alphabet`] stores them sorted and
//! deduplicated, so symbol indices are stable across equal alphabets and all
//! iteration orders derived from them are deterministic. A [`Word`] is a
//! sequence of symbol indices validated against some alphabet.

use crate::error::{Error, Result};

/// A nonempty, sorted set of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from symbol strings.
    ///
    /// Rejects an empty set, empty-string symbols, and duplicates. The symbols
    /// are kept in lexicographic order.
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.iter().any(String::is_empty) {
            return Err(Error::EmptySymbol);
        }
        symbols.sort();
        for pair in symbols.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateSymbol(pair[0].clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.binary_search_by(|s| s.as_str().cmp(symbol)).ok()
    }

    /// Encodes a sequence of symbol strings as a word.
    pub fn word<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        let mut ids = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            match self.index_of(s) {
                Some(id) => ids.push(id),
                None => return Err(Error::UnknownSymbol(s.to_string())),
            }
        }
        Ok(Word(ids))
    }

    /// Builds a word from raw symbol indices. Panics on an out-of-range index.
    pub fn word_from_ids(&self, ids: Vec<usize>) -> Word {
        assert!(
            ids.iter().all(|&id| id < self.len()),
            "symbol index out of range"
        );
        Word(ids)
    }

    /// Renders a word back to its symbol strings.
    pub fn decode<'a>(&'a self, word: &Word) -> Vec<&'a str> {
        word.0.iter().map(|&id| self.symbol(id)).collect()
    }

    /// Renders a word as the concatenation of its symbols; the empty word
    /// renders as the empty string.
    pub fn render(&self, word: &Word) -> String {
        self.decode(word).concat()
    }

    /// All words of length at most `max_len`, ordered by length then
    /// lexicographically by symbol index.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut words = vec![Word(Vec::new())];
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(level.len() * self.len());
            for w in &level {
                for id in 0..self.len() {
                    let mut longer = w.clone();
                    longer.push(id);
                    next.push(longer);
                }
            }
            words.extend(next.iter().cloned().map(Word));
            level = next;
        }
        words
    }
}

/// A word over some alphabet, stored as symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, id: usize) {
        self.0.push(id);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        Word(ids)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_alphabet() {
        assert!(matches!(
            Alphabet::new(Vec::<String>::new()),
            Err(Error::EmptyAlphabet)
        ));
    }

    #[test]
    fn sorts_and_rejects_duplicates() {
        let ab = Alphabet::new(["b", "a"]).unwrap();
        assert_eq!(ab.symbol(0), "a");
        assert_eq!(ab.symbol(1), "b");
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn word_roundtrip_and_unknown_symbol() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let w = ab.word(&["b", "a", "b"]).unwrap();
        assert_eq!(ab.decode(&w), vec!["b", "a", "b"]);
        assert!(matches!(ab.word(&["c"]), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn words_up_to_is_length_then_lex() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let words = ab.words_up_to(2);
        assert_eq!(words.len(), 1 + 2 + 4);
        assert_eq!(words[0], Word::empty());
        assert_eq!(words[1].ids(), &[0]);
        assert_eq!(words[2].ids(), &[1]);
        assert_eq!(words[3].ids(), &[0, 0]);
        assert_eq!(words[6].ids(), &[1, 1]);
    }
}
