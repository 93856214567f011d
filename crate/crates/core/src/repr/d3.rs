//! Type-3 MAWs `a c^k b`, enumerated per middle symbol `c` from the three-run
//! bridges around every `c`-run.

use std::collections::HashMap;

use crate::handle::MawHandle;
use crate::rle::RleString;
use crate::symbol::Symbol;

use super::{EnumStats, MawSink};

/// `a c^exponent b` around the `c`-run at `run`; `a`/`b` may be the sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BridgeEntry {
    pub left: Symbol,
    pub exponent: usize,
    pub right: Symbol,
    pub run: usize,
}

/// Largest `j` such that `c^j b` occurs, with a `c`-run followed by `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightComponent {
    pub symbol: Symbol,
    pub exponent: usize,
    pub run: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleGroup {
    pub middle: Symbol,
    /// Sorted by exponent.
    pub bridges: Vec<BridgeEntry>,
    /// `(a, i)`: largest `i` with `a c^i` occurring. Sentinel-free, sorted.
    pub left: Vec<(Symbol, usize)>,
    /// Sentinel-free, sorted by symbol.
    pub right: Vec<RightComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D3Rep {
    Explicit(Vec<MawHandle>),
    Groups(Vec<MiddleGroup>),
}

pub fn build_groups(rle: &RleString) -> Vec<MiddleGroup> {
    let runs = rle.runs();
    let m = runs.len();
    let sym = |i: Option<usize>| match i {
        Some(i) if i < m => runs[i].symbol,
        _ => Symbol::SENTINEL,
    };
    let mut entries: Vec<(Symbol, BridgeEntry)> = (0..m)
        .map(|p| {
            (
                runs[p].symbol,
                BridgeEntry {
                    left: sym(p.checked_sub(1)),
                    exponent: runs[p].exponent,
                    right: sym(Some(p + 1)),
                    run: p,
                },
            )
        })
        .collect();
    entries.sort_by_key(|(c, e)| (*c, e.exponent, e.run));

    let mut groups = Vec::new();
    for chunk in entries.chunk_by(|x, y| x.0 == y.0) {
        let middle = chunk[0].0;
        let bridges: Vec<BridgeEntry> = chunk.iter().map(|(_, e)| *e).collect();
        let mut left: HashMap<Symbol, usize> = HashMap::new();
        let mut right: HashMap<Symbol, RightComponent> = HashMap::new();
        for e in &bridges {
            if !e.left.is_sentinel() {
                let v = left.entry(e.left).or_insert(0);
                *v = (*v).max(e.exponent);
            }
            if !e.right.is_sentinel() {
                let v = right.entry(e.right).or_insert(RightComponent {
                    symbol: e.right,
                    exponent: 0,
                    run: e.run,
                });
                if e.exponent > v.exponent {
                    v.exponent = e.exponent;
                    v.run = e.run;
                }
            }
        }
        let mut left: Vec<(Symbol, usize)> = left.into_iter().collect();
        left.sort_unstable();
        let mut right: Vec<RightComponent> = right.into_values().collect();
        right.sort_unstable_by_key(|r| r.symbol);
        groups.push(MiddleGroup {
            middle,
            bridges,
            left,
            right,
        });
    }
    groups
}

impl MiddleGroup {
    pub fn words(&self) -> usize {
        1 + 4 * self.bridges.len() + 2 * self.left.len() + 3 * self.right.len()
    }

    /// `|M_3|` restricted to this middle symbol, without enumerating.
    pub fn maw_count(&self) -> usize {
        let mut distinct: Vec<(Symbol, usize, Symbol)> = self
            .bridges
            .iter()
            .filter(|e| !e.left.is_sentinel() && !e.right.is_sentinel())
            .map(|e| (e.left, e.exponent, e.right))
            .collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mut total = 0usize;
        for &(_, i) in &self.left {
            for r in &self.right {
                total += i.min(r.exponent);
            }
        }
        total - distinct.len()
    }

    /// Two passes: gaps below each bridge exponent, then the combined bridges
    /// `a c^min(i,j) b` above the largest bridge exponent of `(a, b)`.
    pub fn enumerate<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        let mut stats = EnumStats::default();
        let mut emit = |a: Symbol, k: usize, run: usize, stats: &mut EnumStats| {
            sink.emit(MawHandle::bridge(3, a, run, 2, k));
            stats.emitted += 1;
            stats.ops += 1;
        };

        let mut last: HashMap<(Symbol, Symbol), usize> = HashMap::new();
        for e in &self.bridges {
            stats.ops += 1;
            if e.left.is_sentinel() || e.right.is_sentinel() {
                continue;
            }
            let key = (e.left, e.right);
            let from = match last.get(&key) {
                Some(&prev) if prev >= e.exponent => continue,
                Some(&prev) => prev + 1,
                None => 1,
            };
            for k in from..e.exponent {
                emit(e.left, k, e.run, &mut stats);
            }
            last.insert(key, e.exponent);
        }

        for &(a, i) in &self.left {
            for r in &self.right {
                stats.ops += 1;
                let ell = i.min(r.exponent);
                let from = match last.get(&(a, r.symbol)) {
                    Some(&prev) if prev >= ell => continue,
                    Some(&prev) => prev + 1,
                    None => 1,
                };
                for k in from..=ell {
                    emit(a, k, r.run, &mut stats);
                }
            }
        }
        stats
    }
}
