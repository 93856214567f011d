//! Brute-force reference for `MAW(T)` computed on the plain text.
//!
//! Substrings are interned level by level: the id of a length-`L` substring
//! is looked up from the pair (id of its length-`L-1` prefix, last symbol).
//! Lookups are exact; nothing here touches the run-length machinery.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::rle::{encode, RleString};
use crate::symbol::{Alphabet, Symbol};

/// Naive occurrence count. The empty word occurs `|T| + 1` times.
pub fn occurs(w: &[Symbol], text: &[Symbol]) -> usize {
    if w.is_empty() {
        return text.len() + 1;
    }
    if w.len() > text.len() {
        return 0;
    }
    text.windows(w.len()).filter(|win| *win == w).count()
}

/// The MAW type of `maw` by its run shape: 1..=5.
pub fn classify(maw: &[Symbol]) -> u8 {
    let n = maw.len();
    let runs = maw.windows(2).filter(|p| p[0] != p[1]).count() + usize::from(n > 0);
    if runs <= 1 {
        return 1;
    }
    if n == 2 {
        return 2;
    }
    let (a, b) = (maw[0], maw[n - 1]);
    let (u_first, u_last) = (maw[1], maw[n - 2]);
    if a == u_first || b == u_last {
        5
    } else if runs == 3 {
        3
    } else {
        4
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MawRecord {
    pub word: Vec<Symbol>,
    pub type_id: u8,
}

impl MawRecord {
    pub fn new(word: Vec<Symbol>) -> MawRecord {
        let type_id = classify(&word);
        MawRecord { word, type_id }
    }

    pub fn rle_form(&self) -> RleString {
        encode(&self.word).expect("MAWs never contain the sentinel")
    }
}

/// One length level of the substring index.
#[derive(Default)]
struct Level {
    /// (id of prefix, last symbol) -> id
    ids: HashMap<(u32, Symbol), u32>,
    /// id of the substring starting at each position
    at: Vec<u32>,
    /// occurrence count per id
    counts: Vec<usize>,
}

impl Level {
    fn root(n: usize) -> Level {
        Level {
            ids: HashMap::new(),
            at: vec![0; n + 1],
            counts: vec![n + 1],
        }
    }

    fn next(&self, text: &[Symbol], len: usize) -> Level {
        let n = text.len();
        let mut lvl = Level::default();
        if len > n {
            return lvl;
        }
        lvl.at.reserve(n + 1 - len);
        for i in 0..=n - len {
            let key = (self.at[i], text[i + len - 1]);
            let next_id = lvl.counts.len() as u32;
            let id = *lvl.ids.entry(key).or_insert(next_id);
            if id == next_id {
                lvl.counts.push(0);
            }
            lvl.counts[id as usize] += 1;
            lvl.at.push(id);
        }
        lvl
    }

    fn lookup(&self, prefix: u32, last: Symbol) -> Option<u32> {
        self.ids.get(&(prefix, last)).copied()
    }
}

/// All distinct substrings of a text with their occurrence counts.
pub struct SubstringIndex {
    levels: Vec<Level>,
    max_len: usize,
}

impl SubstringIndex {
    /// Indexes every substring of length at most `max_len`. Memory is
    /// `O(n * max_len)`.
    pub fn build(text: &[Symbol], max_len: usize) -> SubstringIndex {
        let mut levels = vec![Level::root(text.len())];
        for len in 1..=max_len.min(text.len()) {
            let next = levels[len - 1].next(text, len);
            levels.push(next);
        }
        SubstringIndex { levels, max_len }
    }

    /// `#w`; `None` when `|w|` exceeds the indexed length.
    pub fn count(&self, w: &[Symbol]) -> Option<usize> {
        if w.len() > self.max_len {
            return None;
        }
        if w.len() >= self.levels.len() {
            return Some(0);
        }
        let mut id = 0u32;
        for (len, &s) in w.iter().enumerate() {
            match self.levels[len + 1].lookup(id, s) {
                Some(next) => id = next,
                None => return Some(0),
            }
        }
        Some(self.levels[w.len()].counts[id as usize])
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of distinct substrings of each length `0..=max_len`.
    pub fn distinct_per_length(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.counts.len()).collect()
    }
}

/// Every MAW of `text` over `alphabet`, sorted by (length, word).
///
/// `O(n^2 * sigma)` hash lookups and `O(n)` memory per level.
pub fn maws_bruteforce(text: &[Symbol], alphabet: &Alphabet) -> Result<Vec<MawRecord>> {
    alphabet.check_covers(text)?;
    let n = text.len();
    let mut out: Vec<MawRecord> = alphabet
        .symbols()
        .iter()
        .filter(|s| !text.contains(s))
        .map(|&s| MawRecord::new(vec![s]))
        .collect();

    // prev: substrings of length L, cur: length L+1, next: length L+2.
    let mut prev = Level::root(n);
    let mut cur = prev.next(text, 1);
    for len in 1..=n {
        let next = cur.next(text, len + 1);
        let mut seen = vec![false; cur.counts.len()];
        for i in 0..=n - len {
            let id = cur.at[i];
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            // x = text[i..i+len] = a u, candidate x b
            let u_id = if len == 1 { 0 } else { prev.at[i + 1] };
            for &b in alphabet.symbols() {
                if cur.lookup(u_id, b).is_none() {
                    continue;
                }
                if next.lookup(id, b).is_some() {
                    continue;
                }
                let mut word = text[i..i + len].to_vec();
                word.push(b);
                out.push(MawRecord::new(word));
            }
        }
        prev = cur;
        cur = next;
    }
    out.sort_by(|x, y| {
        x.word
            .len()
            .cmp(&y.word.len())
            .then_with(|| x.word.cmp(&y.word))
    });
    Ok(out)
}

/// `|M_1| ..= |M_5|` as a map keyed by type id.
pub fn count_by_type(text: &[Symbol], alphabet: &Alphabet) -> Result<BTreeMap<u8, usize>> {
    let mut counts: BTreeMap<u8, usize> = (1..=5).map(|t| (t, 0)).collect();
    for rec in maws_bruteforce(text, alphabet)? {
        *counts.get_mut(&rec.type_id).unwrap() += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, to_string};

    fn words(t: &str, alpha: &str) -> Vec<String> {
        let mut v: Vec<String> = maws_bruteforce(&symbols(t), &alpha.parse::<Alphabet>().unwrap())
            .unwrap()
            .iter()
            .map(|r| to_string(&r.word))
            .collect();
        v.sort();
        v
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn occurs_examples() {
        let t = symbols("bbacccbaa");
        assert_eq!(occurs(&symbols("c"), &t), 3);
        assert_eq!(occurs(&symbols("acb"), &t), 0);
        assert_eq!(occurs(&symbols("ba"), &t), 2);
        assert_eq!(occurs(&[], &t), 10);
    }

    #[test]
    fn example_one() {
        assert_eq!(
            words("bbacccbaa", "abc"),
            sorted(&[
                "aaa", "bbb", "cccc", "ab", "ca", "bc", "acb", "accb", "cbac", "aac", "bbaa", "cbb"
            ])
        );
    }

    #[test]
    fn tiny_texts() {
        assert_eq!(words("ab", "ab"), sorted(&["aa", "bb", "ba"]));
        assert_eq!(words("a", "ab"), sorted(&["aa", "b"]));
        assert_eq!(words("", "ab"), sorted(&["a", "b"]));
        assert!(words("", "").is_empty());
        assert!(maws_bruteforce(&symbols("abc"), &"ab".parse::<Alphabet>().unwrap()).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&symbols("cccc")), 1);
        assert_eq!(classify(&symbols("b")), 1);
        assert_eq!(classify(&symbols("ca")), 2);
        assert_eq!(classify(&symbols("accb")), 3);
        assert_eq!(classify(&symbols("cbac")), 4);
        assert_eq!(classify(&symbols("bbaa")), 5);
        assert_eq!(classify(&symbols("aab")), 5);
    }

    #[test]
    fn counts_by_type() {
        let c = count_by_type(&symbols("bbacccbaa"), &"abc".parse::<Alphabet>().unwrap()).unwrap();
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![3, 3, 2, 1, 3]);
        let c = count_by_type(&symbols("accccb"), &"abc".parse::<Alphabet>().unwrap()).unwrap();
        assert_eq!(c[&3], 3);
        let c = count_by_type(&symbols("a"), &"a".parse::<Alphabet>().unwrap()).unwrap();
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn substring_index_counts() {
        let t = symbols("bbacccbaa");
        let idx = SubstringIndex::build(&t, t.len());
        for w in ["", "c", "cc", "ba", "acb", "bbacccbaa", "z"] {
            let w = symbols(w);
            assert_eq!(idx.count(&w), Some(occurs(&w, &t)), "{}", to_string(&w));
        }
        assert_eq!(idx.count(&symbols("bbacccbaab")), None);
        let short = SubstringIndex::build(&t, 2);
        assert_eq!(short.count(&symbols("bba")), None);
    }

    /// Exhaustive definition check over all words up to length n+1.
    #[test]
    fn definition_equivalence_small() {
        let alpha = "ab".parse::<Alphabet>().unwrap();
        for t in ["", "a", "ab", "aab", "abba", "babaa"] {
            let text = symbols(t);
            let maws: std::collections::HashSet<Vec<Symbol>> = maws_bruteforce(&text, &alpha)
                .unwrap()
                .into_iter()
                .map(|r| r.word)
                .collect();
            let mut frontier: Vec<Vec<Symbol>> = vec![vec![]];
            for _ in 0..=text.len() + 1 {
                let mut next = Vec::new();
                for w in &frontier {
                    for &s in alpha.symbols() {
                        let mut x = w.clone();
                        x.push(s);
                        let is_maw = occurs(&x, &text) == 0
                            && occurs(&x[..x.len() - 1], &text) >= 1
                            && occurs(&x[1..], &text) >= 1;
                        assert_eq!(is_maw, maws.contains(&x), "{t}: {}", to_string(&x));
                        next.push(x);
                    }
                }
                frontier = next;
            }
        }
    }
}
