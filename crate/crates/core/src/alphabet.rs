use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::structure::SymbolId;

/// An ordered, duplicate-free list of symbol tokens. The position of a
/// token is its canonical symbol index.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty()
                || s.chars()
                    .any(|c| c.is_whitespace() || matches!(c, '.' | ':' | ';' | '#'))
            {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols, index })
    }

    /// Alphabet of single characters, e.g. `Alphabet::chars("abc")`.
    pub fn chars(symbols: &str) -> Result<Self> {
        Self::new(symbols.chars().map(String::from))
    }

    /// The first `k` lowercase letters.
    pub fn letters(k: usize) -> Result<Self> {
        if k > 26 {
            return Self::new((0..k).map(|i| format!("s{i}")));
        }
        Self::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn id(&self, token: &str) -> Option<SymbolId> {
        self.index.get(token).copied()
    }

    pub fn require(&self, token: &str) -> Result<SymbolId> {
        self.id(token)
            .ok_or_else(|| Error::UnknownSymbol(token.to_string()))
    }

    pub fn all_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word: `.`-separated tokens, or one symbol per character when
    /// the alphabet only has single-character symbols.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SymbolId>> {
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains('.') {
            return text.split('.').map(|t| self.require(t)).collect();
        }
        if self.all_single_char() {
            return text
                .chars()
                .map(|c| self.require(c.encode_utf8(&mut [0; 4])))
                .collect();
        }
        Ok(vec![self.require(text)?])
    }

    pub fn format_word(&self, word: &[SymbolId]) -> String {
        let sep = if self.all_single_char() { "" } else { "." };
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert_eq!(
            Alphabet::new(Vec::<String>::new()),
            Err(Error::EmptyAlphabet)
        );
        assert!(matches!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Alphabet::new(["a b"]),
            Err(Error::InvalidSymbol(_))
        ));
    }

    #[test]
    fn words_round_trip() {
        let ab = Alphabet::chars("ab").unwrap();
        assert_eq!(ab.parse_word("abba").unwrap(), vec![0, 1, 1, 0]);
        assert_eq!(ab.format_word(&[0, 1]), "ab");
        let long = Alphabet::new(["go", "stop"]).unwrap();
        assert_eq!(long.parse_word("go.stop.go").unwrap(), vec![0, 1, 0]);
        assert_eq!(long.parse_word("stop").unwrap(), vec![1]);
        assert_eq!(long.format_word(&[1, 0]), "stop.go");
        assert!(ab.parse_word("abc").is_err());
    }
}
