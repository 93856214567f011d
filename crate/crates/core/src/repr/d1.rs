use crate::handle::MawHandle;
use crate::rle::RleString;
use crate::symbol::{Alphabet, Symbol};

use super::{EnumStats, MawSink};

/// Longest run exponent per occurring symbol, sorted by symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Rep {
    pub longest: Vec<(Symbol, usize)>,
}

impl D1Rep {
    pub fn build(rle: &RleString) -> D1Rep {
        let mut longest: Vec<(Symbol, usize)> =
            rle.runs().iter().map(|r| (r.symbol, r.exponent)).collect();
        // Longest first within each symbol, so dedup keeps the maximum.
        longest.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        longest.dedup_by_key(|e| e.0);
        D1Rep { longest }
    }

    pub fn words(&self) -> usize {
        2 * self.longest.len()
    }

    /// One emission per alphabet symbol, merged against the sorted list.
    pub fn enumerate<S: MawSink + ?Sized>(&self, alphabet: &Alphabet, sink: &mut S) -> EnumStats {
        let mut stats = EnumStats::default();
        let mut it = self.longest.iter().peekable();
        for &c in alphabet.symbols() {
            stats.ops += 1;
            while it.next_if(|e| e.0 < c).is_some() {
                stats.ops += 1;
            }
            let count = match it.next_if(|e| e.0 == c) {
                Some(&(_, p)) => p + 1,
                None => 1,
            };
            sink.emit(MawHandle::single_run(c, count));
            stats.emitted += 1;
        }
        stats
    }
}
