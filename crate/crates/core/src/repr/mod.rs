//! The five structures `D1`..`D5` and their enumerators.
//!
//! A [`ReprBundle`] stores every MAW of `T` in space linear in the number of
//! runs and reports each one as a [`MawHandle`].

pub mod d1;
pub mod d2;
pub mod d3;
pub mod d4;
pub mod d5;
pub mod ktree;

use std::ops::AddAssign;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::handle::MawHandle;
use crate::rle::RleString;
use crate::symbol::{Alphabet, Symbol};

pub use d1::D1Rep;
pub use d2::{D2Rep, PairSet};
pub use d3::{D3Rep, MiddleGroup};
pub use d4::{D4Rep, MawGraph};
pub use d5::{build_m5, D5Rep};
pub use ktree::{ChildKey, KNode, KTree};

/// Receives enumerated handles.
pub trait MawSink {
    fn emit(&mut self, handle: MawHandle);
}

impl MawSink for Vec<MawHandle> {
    fn emit(&mut self, handle: MawHandle) {
        self.push(handle);
    }
}

/// Counts handles per type without keeping them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountSink {
    pub per_type: [usize; 5],
}

impl CountSink {
    pub fn total(&self) -> usize {
        self.per_type.iter().sum()
    }
}

impl MawSink for CountSink {
    fn emit(&mut self, handle: MawHandle) {
        self.per_type[handle.type_id as usize - 1] += 1;
    }
}

/// Adapts a closure into a sink.
pub struct FnSink<F>(pub F);

impl<F: FnMut(MawHandle)> MawSink for FnSink<F> {
    fn emit(&mut self, handle: MawHandle) {
        (self.0)(handle)
    }
}

/// Emissions and basic operations performed by an enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub emitted: usize,
    pub ops: usize,
}

impl AddAssign for EnumStats {
    fn add_assign(&mut self, rhs: EnumStats) {
        self.emitted += rhs.emitted;
        self.ops += rhs.ops;
    }
}

/// A subset of the MAW types `1..=5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeFilter(u8);

impl TypeFilter {
    pub const ALL: TypeFilter = TypeFilter(0b11111);

    pub fn only(types: &[u8]) -> Result<TypeFilter> {
        let mut bits = 0u8;
        for &t in types {
            if !(1..=5).contains(&t) {
                return Err(Error::InvalidInput(format!(
                    "MAW type {t} out of range 1..5"
                )));
            }
            bits |= 1 << (t - 1);
        }
        Ok(TypeFilter(bits))
    }

    pub fn contains(&self, type_id: u8) -> bool {
        (1..=5).contains(&type_id) && self.0 & (1 << (type_id - 1)) != 0
    }
}

impl Default for TypeFilter {
    fn default() -> Self {
        TypeFilter::ALL
    }
}

/// Parses `all` or a comma-separated list such as `1,3,5`.
impl FromStr for TypeFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeFilter> {
        if s.trim() == "all" {
            return Ok(TypeFilter::ALL);
        }
        let types = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidInput(format!("bad MAW type {t:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        TypeFilter::only(&types)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BuildOptions {
    /// `M2`, `M3` and `M4` are listed explicitly when their size is at most
    /// `fallback_factor * m`.
    pub fallback_factor: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { fallback_factor: 1 }
    }
}

/// Machine words held by each structure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub d4: usize,
    pub d5: usize,
    pub total: usize,
}

#[derive(Clone, Debug)]
pub struct ReprBundle {
    pub rle: RleString,
    pub alphabet: Alphabet,
    pub d1: D1Rep,
    pub d2: D2Rep,
    pub d3: D3Rep,
    pub d4: D4Rep,
    pub d5: D5Rep,
    /// Total `|K(w)|` over the `W` set.
    pub x: usize,
    pub w_size: usize,
}

fn collect(f: impl FnOnce(&mut Vec<MawHandle>)) -> Vec<MawHandle> {
    let mut out = Vec::new();
    f(&mut out);
    out
}

impl ReprBundle {
    pub fn build(rle: &RleString, alphabet: &Alphabet) -> Result<ReprBundle> {
        ReprBundle::build_with(rle, alphabet, BuildOptions::default())
    }

    pub fn build_with(
        rle: &RleString,
        alphabet: &Alphabet,
        opts: BuildOptions,
    ) -> Result<ReprBundle> {
        alphabet.check_covers(&run_symbols(rle))?;
        let limit = opts.fallback_factor.saturating_mul(rle.run_count());

        let pairs = PairSet::build(rle);
        let d2 = if pairs.maw_count() <= limit {
            D2Rep::Explicit(collect(|v| {
                pairs.enumerate(v);
            }))
        } else {
            D2Rep::Pairs(pairs)
        };

        let groups = d3::build_groups(rle);
        let m3: usize = groups.iter().map(MiddleGroup::maw_count).sum();
        let d3 = if m3 <= limit {
            D3Rep::Explicit(collect(|v| {
                for g in &groups {
                    g.enumerate(v);
                }
            }))
        } else {
            D3Rep::Groups(groups)
        };

        let tree = KTree::build_with(rle, false);
        let graphs = d4::build_graphs(&tree);
        let mut m4 = 0usize;
        for g in &graphs {
            m4 += g.scan(|_, _| {}).emitted;
            if m4 > limit {
                break;
            }
        }
        let d4 = if m4 <= limit {
            D4Rep::Explicit(collect(|v| {
                for g in &graphs {
                    g.enumerate(v);
                }
            }))
        } else {
            D4Rep::Graphs(graphs)
        };

        Ok(ReprBundle {
            rle: rle.clone(),
            alphabet: alphabet.clone(),
            d1: D1Rep::build(rle),
            d2,
            d3,
            d4,
            d5: D5Rep::build(rle),
            x: tree.x_value(),
            w_size: tree.w_set().len(),
        })
    }

    /// Builds over the symbols occurring in `rle`.
    pub fn from_rle(rle: &RleString) -> ReprBundle {
        let alphabet = Alphabet::of_text(&run_symbols(rle));
        ReprBundle::build(rle, &alphabet).expect("alphabet covers its own text")
    }

    pub fn enum_m1<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        self.d1.enumerate(&self.alphabet, sink)
    }

    pub fn enum_m2<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        match &self.d2 {
            D2Rep::Explicit(list) => emit_list(list, sink),
            D2Rep::Pairs(p) => p.enumerate(sink),
        }
    }

    pub fn enum_m3<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        match &self.d3 {
            D3Rep::Explicit(list) => emit_list(list, sink),
            D3Rep::Groups(groups) => {
                let mut stats = EnumStats::default();
                for g in groups {
                    stats += g.enumerate(sink);
                }
                stats
            }
        }
    }

    pub fn enum_m4<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        match &self.d4 {
            D4Rep::Explicit(list) => emit_list(list, sink),
            D4Rep::Graphs(graphs) => {
                let mut stats = EnumStats::default();
                for g in graphs {
                    stats += g.enumerate(sink);
                }
                stats
            }
        }
    }

    pub fn enum_m5<S: MawSink + ?Sized>(&self, sink: &mut S) -> EnumStats {
        self.d5.enumerate(sink)
    }

    /// Types in ascending order, each through its own enumerator.
    pub fn enumerate_all<S: MawSink + ?Sized>(
        &self,
        filter: TypeFilter,
        sink: &mut S,
    ) -> EnumStats {
        let mut stats = EnumStats::default();
        if filter.contains(1) {
            stats += self.enum_m1(sink);
        }
        if filter.contains(2) {
            stats += self.enum_m2(sink);
        }
        if filter.contains(3) {
            stats += self.enum_m3(sink);
        }
        if filter.contains(4) {
            stats += self.enum_m4(sink);
        }
        if filter.contains(5) {
            stats += self.enum_m5(sink);
        }
        stats
    }

    pub fn handles(&self) -> Vec<MawHandle> {
        let mut out = Vec::new();
        self.enumerate_all(TypeFilter::ALL, &mut out);
        out
    }

    pub fn counts(&self) -> [usize; 5] {
        let mut sink = CountSink::default();
        self.enumerate_all(TypeFilter::ALL, &mut sink);
        sink.per_type
    }

    pub fn expand(&self, handle: &MawHandle) -> Result<RleString> {
        handle.expand(&self.rle)
    }

    pub fn space_words(&self) -> SpaceReport {
        let list = |l: &Vec<MawHandle>| 1 + 6 * l.len();
        let d1 = 1 + self.d1.words();
        let d2 = match &self.d2 {
            D2Rep::Explicit(l) => list(l),
            D2Rep::Pairs(p) => 1 + p.words(),
        };
        let d3 = match &self.d3 {
            D3Rep::Explicit(l) => list(l),
            D3Rep::Groups(g) => 1 + g.iter().map(MiddleGroup::words).sum::<usize>(),
        };
        let d4 = match &self.d4 {
            D4Rep::Explicit(l) => list(l),
            D4Rep::Graphs(g) => 1 + g.iter().map(MawGraph::words).sum::<usize>(),
        };
        let d5 = 1 + self.d5.words();
        SpaceReport {
            d1,
            d2,
            d3,
            d4,
            d5,
            total: d1 + d2 + d3 + d4 + d5,
        }
    }

    /// Corrupts `D1` so that verification has something to catch.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) {
        if let Some(first) = self.d1.longest.first_mut() {
            first.1 += 1;
        }
    }
}

fn run_symbols(rle: &RleString) -> Vec<Symbol> {
    rle.runs().iter().map(|r| r.symbol).collect()
}

fn emit_list<S: MawSink + ?Sized>(list: &[MawHandle], sink: &mut S) -> EnumStats {
    for &h in list {
        sink.emit(h);
    }
    EnumStats {
        emitted: list.len(),
        ops: list.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::maws_bruteforce;
    use crate::rle::{decode, encode};
    use crate::symbol::{symbols, to_string};

    fn bundle(s: &str) -> ReprBundle {
        ReprBundle::from_rle(&encode(&symbols(s)).unwrap())
    }

    fn words_of(b: &ReprBundle, filter: TypeFilter) -> Vec<(u8, String)> {
        let mut hs = Vec::new();
        b.enumerate_all(filter, &mut hs);
        let mut out: Vec<(u8, String)> = hs
            .iter()
            .map(|h| (h.type_id, to_string(&decode(&b.expand(h).unwrap()))))
            .collect();
        out.sort();
        out
    }

    fn oracle_words(s: &str, alphabet: &Alphabet) -> Vec<(u8, String)> {
        let mut out: Vec<(u8, String)> = maws_bruteforce(&symbols(s), alphabet)
            .unwrap()
            .into_iter()
            .map(|r| (r.type_id, to_string(&r.word)))
            .collect();
        out.sort();
        out
    }

    fn check(s: &str, opts: BuildOptions) {
        let text = symbols(s);
        let alphabet = Alphabet::of_text(&text);
        let b = ReprBundle::build_with(&encode(&text).unwrap(), &alphabet, opts).unwrap();
        assert_eq!(
            words_of(&b, TypeFilter::ALL),
            oracle_words(s, &alphabet),
            "T = {s}"
        );
    }

    #[test]
    fn example_one() {
        let b = bundle("bbacccbaa");
        let got = words_of(&b, TypeFilter::ALL);
        let want: Vec<(u8, String)> = [
            (1, "aaa"),
            (1, "bbb"),
            (1, "cccc"),
            (2, "ab"),
            (2, "bc"),
            (2, "ca"),
            (3, "acb"),
            (3, "accb"),
            (4, "cbac"),
            (5, "aac"),
            (5, "bbaa"),
            (5, "cbb"),
        ]
        .iter()
        .map(|&(t, w)| (t, w.to_string()))
        .collect();
        assert_eq!(got, want);
        assert_eq!(
            words_of(&b, TypeFilter::only(&[4]).unwrap()),
            vec![(4, "cbac".to_string())]
        );
    }

    #[test]
    fn long_middle_run() {
        let text = format!("a{}b", "c".repeat(998));
        let b = bundle(&text);
        assert_eq!(b.counts()[2], 997);
        let longer = bundle(&format!("a{}b", "c".repeat(99998)));
        assert_eq!(b.space_words(), longer.space_words());
        check(&text, BuildOptions::default());
    }

    #[test]
    fn single_symbol_and_empty() {
        assert_eq!(
            words_of(&bundle("a"), TypeFilter::ALL),
            vec![(1, "aa".to_string())]
        );
        let empty = ReprBundle::from_rle(&RleString::empty());
        assert!(empty.handles().is_empty());
        let ab = "ab".parse::<Alphabet>().unwrap();
        let b = ReprBundle::build(&encode(&symbols("a")).unwrap(), &ab).unwrap();
        let w: Vec<String> = words_of(&b, TypeFilter::ALL)
            .into_iter()
            .map(|x| x.1)
            .collect();
        assert_eq!(w, ["aa", "b"]);
    }

    #[test]
    fn alphabet_must_cover_text() {
        let ab = "ab".parse::<Alphabet>().unwrap();
        assert!(ReprBundle::build(&encode(&symbols("abc")).unwrap(), &ab).is_err());
    }

    #[test]
    fn d1_longest_runs() {
        let w: Vec<String> = words_of(&bundle("aacccccccbbabbbb"), TypeFilter::only(&[1]).unwrap())
            .into_iter()
            .map(|x| x.1)
            .collect();
        assert_eq!(w, ["aaa", "bbbbb", "cccccccc"]);
    }

    #[test]
    fn d2_examples() {
        let w: Vec<String> = words_of(
            &bundle("abbbcdaaaaaaaaacde"),
            TypeFilter::only(&[2]).unwrap(),
        )
        .into_iter()
        .map(|x| x.1)
        .collect();
        assert!(w.contains(&"ae".to_string()) && w.contains(&"db".to_string()));
        assert_eq!(bundle("12345").counts()[1], 16);
    }

    #[test]
    fn d3_stage_one_subset() {
        let s = "acccbacccccccccbacccccbcccce";
        let w: Vec<String> = words_of(&bundle(s), TypeFilter::only(&[3]).unwrap())
            .into_iter()
            .map(|x| x.1)
            .collect();
        for k in [1, 2, 4, 6, 7, 8] {
            assert!(w.contains(&format!("a{}b", "c".repeat(k))));
        }
        for k in 1..=4 {
            assert!(w.contains(&format!("a{}e", "c".repeat(k))));
            assert!(w.contains(&format!("b{}b", "c".repeat(k))));
        }
        check(s, BuildOptions::default());
    }

    #[test]
    fn fallback_factor_does_not_change_output() {
        for s in [
            "bbacccbaa",
            "abbccabbcbbbbcccccebbbbcccccaaaabcccccabbccccccdddddabbcbb",
            "abccccabbcccabbbccabbbbca",
        ] {
            for f in [0, 1, 4] {
                check(s, BuildOptions { fallback_factor: f });
            }
        }
    }

    #[test]
    fn exhaustive_small() {
        fn rec(prefix: &mut String, alpha: &[char], left: usize) {
            check(prefix, BuildOptions { fallback_factor: 0 });
            if left == 0 {
                return;
            }
            for &c in alpha {
                prefix.push(c);
                rec(prefix, alpha, left - 1);
                prefix.pop();
            }
        }
        rec(&mut String::new(), &['a', 'b'], 10);
        rec(&mut String::new(), &['a', 'b', 'c'], 6);
    }

    #[test]
    fn enumerators_are_shareable() {
        fn assert_sync<T: Send + Sync>() {}
        assert_sync::<ReprBundle>();
    }

    #[test]
    fn type_filter_parsing() {
        let f: TypeFilter = "1, 5".parse().unwrap();
        assert!(f.contains(1) && f.contains(5) && !f.contains(3));
        assert_eq!("all".parse::<TypeFilter>().unwrap(), TypeFilter::ALL);
        assert!("6".parse::<TypeFilter>().is_err());
        assert!("x".parse::<TypeFilter>().is_err());
    }
}
