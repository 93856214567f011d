//! Constant-size references to MAWs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rle::{decode, RleString, Run};
use crate::symbol::Symbol;

/// A MAW stored as six words against `rle(T)`.
///
/// Expansion rules, with `B = rle(T)[run_index .. run_index + run_span]`:
///
/// * type 1: `lead_symbol^lead_count`.
/// * types 2, 3, 4 (bridges): `lead_symbol^1`, then `B` with the exponent of
///   its first run replaced by `adjust_exponent` and the exponent of its last
///   run cut to 1. With a single-run block the run becomes `symbol^1`.
/// * type 5: `lead_symbol^lead_count`, then `B` with the exponent of its last
///   run replaced by `adjust_exponent`.
///
/// Interior runs of `B` are always copied verbatim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MawHandle {
    pub type_id: u8,
    pub lead_symbol: Symbol,
    pub lead_count: usize,
    pub run_index: usize,
    pub run_span: usize,
    pub adjust_exponent: usize,
}

impl MawHandle {
    pub fn single_run(symbol: Symbol, count: usize) -> MawHandle {
        MawHandle {
            type_id: 1,
            lead_symbol: symbol,
            lead_count: count,
            run_index: 0,
            run_span: 0,
            adjust_exponent: 0,
        }
    }

    /// A bridge MAW `a · B'` of type 2, 3 or 4.
    pub fn bridge(
        type_id: u8,
        lead: Symbol,
        run_index: usize,
        run_span: usize,
        first_exponent: usize,
    ) -> MawHandle {
        MawHandle {
            type_id,
            lead_symbol: lead,
            lead_count: 1,
            run_index,
            run_span,
            adjust_exponent: first_exponent,
        }
    }

    pub fn fields(&self) -> [u64; 6] {
        [
            self.type_id as u64,
            self.lead_symbol.code() as u64,
            self.lead_count as u64,
            self.run_index as u64,
            self.run_span as u64,
            self.adjust_exponent as u64,
        ]
    }

    fn check(&self, rle: &RleString) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidHandle(format!("{self}: {why}")));
        if self.lead_symbol.is_sentinel() {
            return bad("sentinel lead symbol");
        }
        if self.lead_count == 0 {
            return bad("zero lead count");
        }
        match self.type_id {
            1 => {
                if self.run_span != 0 {
                    return bad("type 1 handles carry no run block");
                }
            }
            2..=5 => {
                if self.run_span == 0 || self.adjust_exponent == 0 {
                    return bad("empty run block");
                }
                let end = self.run_index.checked_add(self.run_span);
                if end.is_none_or(|e| e > rle.run_count()) {
                    return bad("run block out of range");
                }
                if self.type_id != 5 && self.lead_count != 1 {
                    return bad("bridge lead must have exponent 1");
                }
            }
            _ => return bad("type id out of range"),
        }
        Ok(())
    }

    /// Appends the MAW's runs to `out` in `O(R(w))` time.
    pub fn expand_into(&self, rle: &RleString, out: &mut Vec<Run>) -> Result<()> {
        self.check(rle)?;
        let start = out.len();
        out.push(Run::new(self.lead_symbol, self.lead_count));
        if self.type_id == 1 {
            return Ok(());
        }
        let block = &rle.runs()[self.run_index..self.run_index + self.run_span];
        out.extend_from_slice(block);
        let first = start + 1;
        let last = out.len() - 1;
        if self.type_id == 5 {
            out[last].exponent = self.adjust_exponent;
        } else {
            out[first].exponent = self.adjust_exponent;
            out[last].exponent = 1;
        }
        if out[first].symbol == self.lead_symbol {
            out.truncate(start);
            return Err(Error::InvalidHandle(format!(
                "{self}: lead run merges with block"
            )));
        }
        Ok(())
    }

    /// The MAW's run-length form.
    pub fn expand(&self, rle: &RleString) -> Result<RleString> {
        let mut runs = Vec::with_capacity(self.run_span + 1);
        self.expand_into(rle, &mut runs)?;
        RleString::from_runs(runs).map_err(|e| Error::InvalidHandle(format!("{self}: {e}")))
    }

    pub fn expand_symbols(&self, rle: &RleString) -> Result<Vec<Symbol>> {
        Ok(decode(&self.expand(rle)?))
    }

    /// Decoded length of the MAW.
    pub fn word_len(&self, rle: &RleString) -> Result<usize> {
        self.check(rle)?;
        if self.type_id == 1 {
            return Ok(self.lead_count);
        }
        let block = &rle.runs()[self.run_index..self.run_index + self.run_span];
        let inner: usize = if block.len() >= 2 {
            block[1..block.len() - 1].iter().map(|r| r.exponent).sum()
        } else {
            0
        };
        let ends = if self.type_id == 5 {
            if block.len() >= 2 {
                block[0].exponent + self.adjust_exponent
            } else {
                self.adjust_exponent
            }
        } else if block.len() >= 2 {
            self.adjust_exponent + 1
        } else {
            1
        };
        Ok(self.lead_count + inner + ends)
    }
}

impl fmt::Display for MawHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e, g] = self.fields();
        write!(f, "{a} {b} {c} {d} {e} {g}")
    }
}

impl FromStr for MawHandle {
    type Err = Error;

    fn from_str(s: &str) -> Result<MawHandle> {
        let fields: Vec<u64> = s
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidHandle(format!("{s:?}: {e}")))?;
        let [t, sym, lead, idx, span, adj] = fields[..] else {
            return Err(Error::InvalidHandle(format!("{s:?}: expected six fields")));
        };
        let code =
            u32::try_from(sym).map_err(|_| Error::InvalidHandle("symbol out of range".into()))?;
        Ok(MawHandle {
            type_id: u8::try_from(t)
                .map_err(|_| Error::InvalidHandle("type out of range".into()))?,
            lead_symbol: Symbol::new(code)?,
            lead_count: lead as usize,
            run_index: idx as usize,
            run_span: span as usize,
            adjust_exponent: adj as usize,
        })
    }
}
