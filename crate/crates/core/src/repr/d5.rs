//! Type-5 MAWs: the first letter repeats `u[1]` or the last letter repeats
//! `u[|u|]`.

use std::collections::{HashMap, HashSet};

use crate::handle::MawHandle;
use crate::rle::{RleString, Run};
use crate::symbol::Symbol;

use super::{EnumStats, MawSink};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D5Rep {
    pub handles: Vec<MawHandle>,
}

/// A type-5 MAW `a^(i+1) v b` read off the run sequence it was found in.
#[derive(Clone, Copy, Debug)]
struct Found {
    /// Run `a^i` whose suffix text holds `v b`.
    run: usize,
    lead: usize,
    /// Runs after `run` covering `v b`.
    span: usize,
    /// Letters of the last covered run used by `v b`.
    used: usize,
}

/// Longest common prefix, in letters, of the texts starting at runs `p` and `q`.
fn lcp(runs: &[Run], mut p: usize, mut q: usize) -> usize {
    let mut len = 0;
    while p < runs.len() && q < runs.len() {
        let (x, y) = (runs[p], runs[q]);
        if x.symbol != y.symbol {
            break;
        }
        len += x.exponent.min(y.exponent);
        if x.exponent != y.exponent {
            break;
        }
        p += 1;
        q += 1;
    }
    len
}

/// Runs from `start` covering `len` letters, and the letters used in the last.
fn cover(runs: &[Run], start: usize, len: usize) -> Option<(usize, usize)> {
    let mut left = len;
    let mut k = start;
    while k < runs.len() {
        if left <= runs[k].exponent {
            return Some((k - start + 1, left));
        }
        left -= runs[k].exponent;
        k += 1;
    }
    None
}

/// Every MAW `a^(i+1) v b` with an `a^i` run followed by `v b`, `a^(i+1) v`
/// present and `a^(i+1) v b` absent.
fn left_pass(runs: &[Run]) -> Vec<Found> {
    let mut by_symbol: HashMap<Symbol, Vec<usize>> = HashMap::new();
    for (k, r) in runs.iter().enumerate() {
        by_symbol.entry(r.symbol).or_default().push(k);
    }
    let mut out = Vec::new();
    for group in by_symbol.values() {
        for &p in group {
            let i = runs[p].exponent;
            let mut best: Option<usize> = None;
            for &q in group {
                if runs[q].exponent > i {
                    let l = lcp(runs, p + 1, q + 1);
                    best = Some(best.map_or(l, |b| b.max(l)));
                }
            }
            let Some(v) = best else { continue };
            if let Some((span, used)) = cover(runs, p + 1, v + 1) {
                out.push(Found {
                    run: p,
                    lead: i + 1,
                    span,
                    used,
                });
            }
        }
    }
    out
}

pub fn build_m5(rle: &RleString) -> Vec<MawHandle> {
    let runs = rle.runs();
    let m = runs.len();
    let mut seen: HashSet<Vec<Run>> = HashSet::new();
    let mut handles = Vec::new();
    let mut scratch = Vec::new();

    let mut push = |h: MawHandle, handles: &mut Vec<MawHandle>| {
        scratch.clear();
        h.expand_into(rle, &mut scratch)
            .expect("type-5 handle in range");
        if seen.insert(scratch.clone()) {
            handles.push(h);
        }
    };

    for f in left_pass(runs) {
        let h = MawHandle {
            type_id: 5,
            lead_symbol: runs[f.run].symbol,
            lead_count: f.lead,
            run_index: f.run + 1,
            run_span: f.span,
            adjust_exponent: f.used,
        };
        push(h, &mut handles);
    }

    let rev = rle.reversed();
    for f in left_pass(rev.runs()) {
        // b^used with used >= 2 starts with u[1]; the left pass has it
        if f.used != 1 {
            continue;
        }
        let last_rev = f.run + f.span;
        let h = MawHandle {
            type_id: 5,
            lead_symbol: rev.runs()[last_rev].symbol,
            lead_count: 1,
            run_index: m - f.run - f.span,
            run_span: f.span,
            adjust_exponent: f.lead,
        };
        push(h, &mut handles);
    }
    handles.sort_unstable();
    handles
}

impl D5Rep {
    pub fn build(rle: &RleString) -> D5Rep {
        D5Rep {
            handles: build_m5(rle),
        }
    }

    pub fn words(&self) -> usize {
        6 * self.handles.len()
    }

    pub fn enumerate<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        for &h in &self.handles {
            sink.emit(h);
        }
        EnumStats {
            emitted: self.handles.len(),
            ops: self.handles.len(),
        }
    }
}
