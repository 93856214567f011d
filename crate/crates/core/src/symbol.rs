use std::fmt;

use crate::error::{Error, Result};

/// A single character of the text.
///
/// User symbols are unicode scalar values. One extra value outside the
/// unicode range is reserved for the boundary sentinel; it never appears in
/// user input or in any emitted word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol(u32);

impl Symbol {
    /// The boundary sentinel. Orders after every user symbol.
    pub const SENTINEL: Symbol = Symbol(u32::MAX);

    pub fn new(code: u32) -> Result<Symbol> {
        if char::from_u32(code).is_none() {
            return Err(Error::InvalidInput(format!(
                "{code:#x} is not a unicode scalar value"
            )));
        }
        Ok(Symbol(code))
    }

    pub const fn from_char(c: char) -> Symbol {
        Symbol(c as u32)
    }

    pub const fn from_byte(b: u8) -> Symbol {
        Symbol(b as u32)
    }

    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_sentinel(self) -> bool {
        self.0 == u32::MAX
    }

    /// `None` for the sentinel.
    pub fn to_char(self) -> Option<char> {
        char::from_u32(self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c:?}"),
            None => f.write_str("$"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None => f.write_str("$"),
        }
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Symbol {
        Symbol::from_char(c)
    }
}

pub fn symbols(s: &str) -> Vec<Symbol> {
    s.chars().map(Symbol::from_char).collect()
}

pub fn symbols_from_bytes(b: &[u8]) -> Vec<Symbol> {
    b.iter().copied().map(Symbol::from_byte).collect()
}

/// Renders symbols as a `String`. The sentinel is shown as `$`.
pub fn to_string(text: &[Symbol]) -> String {
    text.iter().map(|s| s.to_char().unwrap_or('$')).collect()
}

/// An ordered set of user symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    /// Sorts and deduplicates. Rejects the sentinel.
    pub fn new(mut symbols: Vec<Symbol>) -> Result<Alphabet> {
        if symbols.iter().any(|s| s.is_sentinel()) {
            return Err(Error::InvalidInput(
                "the sentinel cannot be an alphabet symbol".into(),
            ));
        }
        symbols.sort_unstable();
        symbols.dedup();
        Ok(Alphabet { symbols })
    }

    /// The symbols occurring in `text`.
    pub fn of_text(text: &[Symbol]) -> Alphabet {
        let mut symbols: Vec<Symbol> = text.to_vec();
        symbols.sort_unstable();
        symbols.dedup();
        Alphabet { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.symbols.binary_search(&s).is_ok()
    }

    /// Fails if some symbol of `text` is missing from the alphabet.
    pub fn check_covers(&self, text: &[Symbol]) -> Result<()> {
        match text.iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(Error::InvalidInput(format!(
                "symbol {s:?} occurs in the text but not in the alphabet"
            ))),
            None => Ok(()),
        }
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Alphabet> {
        Alphabet::new(symbols(s))
    }
}
