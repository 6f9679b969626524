//! Symbols, alphabets and words.
//!
//! A symbol is a single printable character. Characters with a meaning in the
//! DFA text format or the regex surface syntax are reserved.

use std::fmt;

use crate::error::{Error, Result};

/// Characters that can never be symbols.
pub const RESERVED: &[char] = &['#', ':', ',', '-', '>', '|', '(', ')', '*', '+', '_', '~'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(char);

impl Symbol {
    pub fn new(c: char) -> Result<Self> {
        if c.is_whitespace() || c.is_control() || RESERVED.contains(&c) {
            return Err(Error::InvalidSymbol(c));
        }
        Ok(Symbol(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty ordered set of symbols. Order is significant: it fixes the
/// column order of transition tables and the breadth-first numbering of
/// canonical automata.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Builds an alphabet from the characters of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(Symbol::new).collect::<Result<_>>()?)
    }

    /// Parses a comma-separated symbol list such as `a,b`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for item in text.split(',') {
            let item = item.trim();
            let mut chars = item.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(Symbol::new(c)?),
                _ => {
                    return Err(Error::InvalidAlphabet(format!(
                        "expected a single character, found {item:?}"
                    )))
                }
            }
        }
        Self::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Symbol {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.index_of(symbol).is_some()
    }

    /// Index of the character `c`, or an error if it is not a member.
    pub fn index_of_char(&self, c: char) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s.0 == c)
            .ok_or(Error::UnknownSymbol(c))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|&s| other.contains(s))
    }

    /// Converts a string into a word over this alphabet.
    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| self.index_of_char(c).map(|i| self.symbols[i]))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub(crate) fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A finite sequence of symbols; the empty word is λ and is displayed as `_`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("_");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
