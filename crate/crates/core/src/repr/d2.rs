use crate::handle::MawHandle;
use crate::rle::RleString;
use crate::symbol::Symbol;

use super::{EnumStats, MawSink};

/// Type-2 MAWs: either listed, or implied by the set of adjacent symbol
/// pairs of `T` (every other ordered pair of distinct occurring symbols is
/// a MAW).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D2Rep {
    Explicit(Vec<MawHandle>),
    Pairs(PairSet),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    /// Occurring symbols, sorted, each with the index of one of its runs.
    pub symbols: Vec<(Symbol, usize)>,
    /// Distinct adjacent pairs `(a, b)`, sorted.
    pub pairs: Vec<(Symbol, Symbol)>,
}

impl PairSet {
    pub fn build(rle: &RleString) -> PairSet {
        let runs = rle.runs();
        let mut symbols: Vec<(Symbol, usize)> = runs
            .iter()
            .enumerate()
            .map(|(i, r)| (r.symbol, i))
            .collect();
        symbols.sort_unstable();
        symbols.dedup_by_key(|e| e.0);
        let mut pairs: Vec<(Symbol, Symbol)> = runs
            .windows(2)
            .map(|w| (w[0].symbol, w[1].symbol))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        PairSet { symbols, pairs }
    }

    /// `sigma'(sigma'-1) - |pairs|`.
    pub fn maw_count(&self) -> usize {
        let s = self.symbols.len();
        (s * s.saturating_sub(1)) - self.pairs.len()
    }

    pub fn words(&self) -> usize {
        2 * self.symbols.len() + 2 * self.pairs.len()
    }

    /// Lexicographic merge of all candidate pairs against the pair set.
    pub fn enumerate<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        let mut stats = EnumStats::default();
        let mut pairs = self.pairs.iter().peekable();
        for &(a, _) in &self.symbols {
            for &(b, b_run) in &self.symbols {
                if a == b {
                    continue;
                }
                stats.ops += 1;
                if pairs.next_if(|p| **p == (a, b)).is_some() {
                    continue;
                }
                sink.emit(MawHandle::bridge(2, a, b_run, 1, 1));
                stats.emitted += 1;
            }
        }
        stats
    }
}
