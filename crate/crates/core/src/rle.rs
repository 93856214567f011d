//! Run-length encoding, the interior operator and bridge extraction.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A maximal block `symbol^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub symbol: Symbol,
    pub exponent: usize,
}

impl Run {
    pub const fn new(symbol: Symbol, exponent: usize) -> Run {
        Run { symbol, exponent }
    }
}

/// A run-length encoded string in canonical form: adjacent runs carry
/// distinct symbols and every exponent is at least one.
///
/// Texts handed in by callers never contain the sentinel. Internally the
/// text is read as if one sentinel flanked each end; [`RleString::extended`]
/// materializes those runs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RleString {
    runs: Vec<Run>,
}

impl RleString {
    pub fn empty() -> RleString {
        RleString { runs: Vec::new() }
    }

    /// Validates canonical form.
    pub fn from_runs(runs: Vec<Run>) -> Result<RleString> {
        for (i, r) in runs.iter().enumerate() {
            if r.exponent == 0 {
                return Err(Error::InvalidInput(format!("run {i} has exponent 0")));
            }
            if i > 0 && runs[i - 1].symbol == r.symbol {
                return Err(Error::InvalidInput(format!(
                    "runs {} and {i} share symbol {:?}",
                    i - 1,
                    r.symbol
                )));
            }
        }
        Ok(RleString { runs })
    }

    /// Builds from runs, merging equal neighbours and dropping empty runs.
    pub fn from_runs_lossy(runs: impl IntoIterator<Item = Run>) -> RleString {
        let mut out: Vec<Run> = Vec::new();
        for r in runs {
            if r.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.symbol == r.symbol => last.exponent += r.exponent,
                _ => out.push(r),
            }
        }
        RleString { runs: out }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn into_runs(self) -> Vec<Run> {
        self.runs
    }

    /// Number of runs, `R(T)`.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Decoded length.
    pub fn text_len(&self) -> usize {
        self.runs.iter().map(|r| r.exponent).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn contains_sentinel(&self) -> bool {
        self.runs.iter().any(|r| r.symbol.is_sentinel())
    }

    /// `$ runs $` with explicit unit sentinel runs.
    pub fn extended(&self) -> RleString {
        let mut runs = Vec::with_capacity(self.runs.len() + 2);
        runs.push(Run::new(Symbol::SENTINEL, 1));
        runs.extend_from_slice(&self.runs);
        runs.push(Run::new(Symbol::SENTINEL, 1));
        RleString { runs }
    }

    /// Reversed string.
    pub fn reversed(&self) -> RleString {
        RleString {
            runs: self.runs.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Debug for RleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rle[")?;
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}^{}", r.symbol, r.exponent)?;
        }
        write!(f, "]")
    }
}

/// Run-length encodes `text`. Rejects the sentinel.
pub fn encode(text: &[Symbol]) -> Result<RleString> {
    let mut runs: Vec<Run> = Vec::new();
    for (i, &s) in text.iter().enumerate() {
        if s.is_sentinel() {
            return Err(Error::InvalidInput(format!(
                "sentinel symbol at position {i}"
            )));
        }
        match runs.last_mut() {
            Some(last) if last.symbol == s => last.exponent += 1,
            _ => runs.push(Run::new(s, 1)),
        }
    }
    Ok(RleString { runs })
}

pub fn decode(rle: &RleString) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(rle.text_len());
    for r in &rle.runs {
        out.extend(std::iter::repeat_n(r.symbol, r.exponent));
    }
    out
}

/// `w^(1)`: drop the first and last runs, then cut the new end runs down to
/// exponent one. Empty when `R(w) <= 2`.
pub fn interior(w: &RleString) -> RleString {
    let r = w.runs.len();
    if r <= 2 {
        return RleString::empty();
    }
    let mut runs = w.runs[1..r - 1].to_vec();
    runs[0].exponent = 1;
    let last = runs.len() - 1;
    runs[last].exponent = 1;
    RleString { runs }
}

/// `w^(t)`, the `t`-fold interior.
pub fn interior_power(w: &RleString, t: usize) -> RleString {
    assert!(t >= 1, "interior_power needs t >= 1");
    let mut cur = interior(w);
    for _ in 1..t {
        if cur.is_empty() {
            break;
        }
        cur = interior(&cur);
    }
    cur
}

/// A string with at least two runs whose first and last runs have
/// exponent one. May carry the sentinel at either end.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bridge(RleString);

impl Bridge {
    pub fn new(rle: RleString) -> Result<Bridge> {
        let runs = rle.runs();
        if runs.len() < 2 {
            return Err(Error::InvalidInput("a bridge needs two runs".into()));
        }
        if runs[0].exponent != 1 || runs[runs.len() - 1].exponent != 1 {
            return Err(Error::InvalidInput(
                "bridge end runs must have exponent 1".into(),
            ));
        }
        Ok(Bridge(rle))
    }

    pub fn rle(&self) -> &RleString {
        &self.0
    }

    pub fn run_count(&self) -> usize {
        self.0.run_count()
    }
}

impl fmt::Debug for Bridge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bridge({:?})", self.0)
    }
}

/// One window of the sentinel-extended run sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeOccurrence {
    pub bridge: Bridge,
    /// Start of the window in the extended run sequence, where index 0 is
    /// the leading sentinel. Equivalently, the index in `rle(T)` of the
    /// window's second run.
    pub run_index: usize,
    /// Occurrences merged into this entry (1 unless aggregated).
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMode {
    PerOccurrence,
    /// Equal bridges merged; `run_index` is the first occurrence.
    Aggregated,
}

/// The bridge substrings of `$T$` with exactly `len` runs.
pub fn bridge_windows(rle: &RleString, len: usize, mode: WindowMode) -> Vec<BridgeOccurrence> {
    assert!(len >= 2, "bridge windows need at least two runs");
    if rle.is_empty() {
        return Vec::new();
    }
    let ext = rle.extended();
    let runs = ext.runs();
    if runs.len() < len {
        return Vec::new();
    }
    let windows = (0..=runs.len() - len).map(|s| {
        let mut w = runs[s..s + len].to_vec();
        w[0].exponent = 1;
        w[len - 1].exponent = 1;
        BridgeOccurrence {
            bridge: Bridge(RleString { runs: w }),
            run_index: s,
            count: 1,
        }
    });
    match mode {
        WindowMode::PerOccurrence => windows.collect(),
        WindowMode::Aggregated => {
            let mut out: Vec<BridgeOccurrence> = Vec::new();
            let mut seen: HashMap<Bridge, usize> = HashMap::new();
            for occ in windows {
                match seen.get(&occ.bridge) {
                    Some(&k) => out[k].count += 1,
                    None => {
                        seen.insert(occ.bridge.clone(), out.len());
                        out.push(occ);
                    }
                }
            }
            out
        }
    }
}

fn needs_escape(c: char) -> bool {
    c.is_whitespace() || c == '^' || c == '\\'
}

/// Writes the `a^2 c^7 b^2` token format. Fails on the sentinel.
pub fn to_rle_text(rle: &RleString) -> Result<String> {
    let mut out = String::new();
    for (i, r) in rle.runs.iter().enumerate() {
        let c = r
            .symbol
            .to_char()
            .ok_or_else(|| Error::InvalidInput("the sentinel is never serialized".into()))?;
        if i > 0 {
            out.push(' ');
        }
        if needs_escape(c) {
            out.push('\\');
        }
        out.push(c);
        out.push('^');
        out.push_str(&r.exponent.to_string());
    }
    Ok(out)
}

/// Parses the token format written by [`to_rle_text`].
pub fn parse_rle_text(src: &str) -> Result<RleString> {
    let mut runs: Vec<Run> = Vec::new();
    let mut it = src.char_indices().peekable();
    let err = |offset: usize, message: &str| Error::Parse {
        offset,
        message: message.to_string(),
    };
    loop {
        while matches!(it.peek(), Some((_, c)) if c.is_whitespace()) {
            it.next();
        }
        let Some((start, c)) = it.next() else { break };
        let symbol = if c == '\\' {
            match it.next() {
                Some((_, e)) => e,
                None => return Err(err(start, "dangling escape")),
            }
        } else {
            c
        };
        match it.next() {
            Some((_, '^')) => {}
            _ => return Err(err(start, "expected '^' after the symbol")),
        }
        let mut exponent: usize = 0;
        let mut digits = 0;
        while let Some(&(pos, d)) = it.peek() {
            if d.is_whitespace() {
                break;
            }
            let v = d
                .to_digit(10)
                .ok_or_else(|| err(pos, "exponent must be decimal"))?;
            exponent = exponent
                .checked_mul(10)
                .and_then(|e| e.checked_add(v as usize))
                .ok_or_else(|| err(pos, "exponent overflow"))?;
            digits += 1;
            it.next();
        }
        if digits == 0 || exponent == 0 {
            return Err(err(start, "exponent must be a positive integer"));
        }
        let symbol = Symbol::from_char(symbol);
        if runs.last().is_some_and(|r| r.symbol == symbol) {
            return Err(err(start, "adjacent runs share a symbol"));
        }
        runs.push(Run::new(symbol, exponent));
    }
    Ok(RleString { runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, to_string};

    fn rle(s: &str) -> RleString {
        encode(&symbols(s)).unwrap()
    }

    fn ext(s: &str) -> RleString {
        rle(s).extended()
    }

    fn show(r: &RleString) -> String {
        to_string(&decode(r))
    }

    #[test]
    fn encode_examples() {
        let r = rle("aacccccccbbabbbb");
        let got: Vec<(char, usize)> = r
            .runs()
            .iter()
            .map(|r| (r.symbol.to_char().unwrap(), r.exponent))
            .collect();
        assert_eq!(got, vec![('a', 2), ('c', 7), ('b', 2), ('a', 1), ('b', 4)]);
        assert_eq!(r.run_count(), 5);
        assert_eq!(rle("").run_count(), 0);
        assert_eq!(
            rle("abc").runs().iter().map(|r| r.exponent).sum::<usize>(),
            3
        );
        assert_eq!(rle("abc").run_count(), 3);
        assert!(encode(&[Symbol::from_char('a'), Symbol::SENTINEL]).is_err());
    }

    #[test]
    fn decode_examples() {
        let a = Symbol::from_char('a');
        let b = Symbol::from_char('b');
        let r = RleString::from_runs(vec![Run::new(a, 2), Run::new(b, 1)]).unwrap();
        assert_eq!(to_string(&decode(&r)), "aab");
        assert!(decode(&RleString::empty()).is_empty());
        let r = RleString::from_runs(vec![Run::new(a, 1), Run::new(b, 4)]).unwrap();
        assert_eq!(to_string(&decode(&r)), "abbbb");
        assert!(RleString::from_runs(vec![Run::new(a, 1), Run::new(a, 4)]).is_err());
        assert!(RleString::from_runs(vec![Run::new(a, 0)]).is_err());
    }

    #[test]
    fn interior_examples() {
        let t = ext("aacccccccbbabbbb");
        assert_eq!(show(&interior(&t)), "acccccccbbab");
        assert_eq!(show(&interior(&rle("acccccccbbab"))), "cbba");
        assert!(interior(&rle("ab")).is_empty());
        assert!(interior(&rle("a")).is_empty());
        assert_eq!(show(&interior_power(&t, 3)), "b");
        assert!(interior_power(&t, 4).is_empty());
        assert!(interior_power(&t, 9).is_empty());
        assert_eq!(interior_power(&t, 1), interior(&t));
        assert_eq!(show(&interior_power(&t, 2)), "cbba");
    }

    #[test]
    fn bridge_windows_b4_example() {
        let got: Vec<String> =
            bridge_windows(&rle("aacccccccbbabbbb"), 4, WindowMode::PerOccurrence)
                .iter()
                .map(|o| show(o.bridge.rle()))
                .collect();
        assert_eq!(got, vec!["$aacccccccb", "acccccccbba", "cbbab", "babbbb$"]);
    }

    #[test]
    fn bridge_windows_small() {
        let got: Vec<String> = bridge_windows(&rle("ab"), 2, WindowMode::PerOccurrence)
            .iter()
            .map(|o| show(o.bridge.rle()))
            .collect();
        assert_eq!(got, vec!["$a", "ab", "b$"]);
        let got: Vec<String> = bridge_windows(&rle("acccb"), 3, WindowMode::PerOccurrence)
            .iter()
            .map(|o| show(o.bridge.rle()))
            .collect();
        assert_eq!(got, vec!["$ac", "acccb", "cb$"]);
        assert!(bridge_windows(&rle(""), 3, WindowMode::PerOccurrence).is_empty());
    }

    #[test]
    fn aggregated_windows_count() {
        let agg = bridge_windows(&rle("abab"), 2, WindowMode::Aggregated);
        let got: Vec<(String, usize, usize)> = agg
            .iter()
            .map(|o| (show(o.bridge.rle()), o.count, o.run_index))
            .collect();
        assert_eq!(
            got,
            vec![
                ("$a".into(), 1, 0),
                ("ab".into(), 2, 1),
                ("ba".into(), 1, 2),
                ("b$".into(), 1, 4)
            ]
        );
    }

    #[test]
    fn rle_text_round_trip_with_escapes() {
        let r = rle("aa  ^^\\\\x\n");
        let txt = to_rle_text(&r).unwrap();
        assert_eq!(txt, "a^2 \\ ^2 \\^^2 \\\\^2 x^1 \\\n^1");
        assert_eq!(parse_rle_text(&txt).unwrap(), r);
        assert_eq!(
            to_rle_text(&rle("aacccccccbbabbbb")).unwrap(),
            "a^2 c^7 b^2 a^1 b^4"
        );
        assert!(parse_rle_text("a^0").is_err());
        assert!(parse_rle_text("a^1 a^2").is_err());
        assert!(parse_rle_text("a2").is_err());
        assert!(parse_rle_text("a^").is_err());
        assert!(parse_rle_text("  ").unwrap().is_empty());
        assert!(to_rle_text(&ext("a")).is_err());
    }
}
