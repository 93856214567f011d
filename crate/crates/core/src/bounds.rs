//! Lower-bound text families, bound audits and scaling probes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::maws_bruteforce;
use crate::repr::{CountSink, ReprBundle, TypeFilter};
use crate::rle::{decode, RleString, Run};
use crate::symbol::{Alphabet, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `1 2 3 ... sigma'`, all symbols distinct.
    M2Perm,
    /// `a c^(n-2) b`.
    M3Run,
    /// `a b c^p · a b^2 c^(p-1) ··· a b^p c · a`.
    M4Grid,
    /// `a b c · a b^2 c^2 ··· a b^p c^p · a`.
    M5Stairs,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::M2Perm,
        FamilyKind::M3Run,
        FamilyKind::M4Grid,
        FamilyKind::M5Stairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::M2Perm => "m2-perm",
            FamilyKind::M3Run => "m3-run",
            FamilyKind::M4Grid => "m4-grid",
            FamilyKind::M5Stairs => "m5-stairs",
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            FamilyKind::M2Perm => 3,
            FamilyKind::M3Run => 4,
            FamilyKind::M4Grid | FamilyKind::M5Stairs => 2,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyKind> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

/// A family member: `sigma'` for m2-perm, `n` for m3-run, `p` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub size: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, size: usize) -> Result<FamilySpec> {
        if size < kind.min_size() {
            return Err(Error::InvalidSpec(format!(
                "{kind} needs size >= {}, got {size}",
                kind.min_size()
            )));
        }
        if kind == FamilyKind::M2Perm && perm_symbol(size - 1).is_none() {
            return Err(Error::InvalidSpec(format!(
                "{kind} size {size} runs out of symbols"
            )));
        }
        Ok(FamilySpec { kind, size })
    }
}

/// Digits for small alphabets, consecutive code points from `a` otherwise.
fn perm_symbol(i: usize) -> Option<Symbol> {
    let code = 0x61u32.checked_add(u32::try_from(i).ok()?)?;
    Symbol::new(code).ok()
}

fn perm_symbols(sigma: usize) -> Vec<Symbol> {
    if sigma <= 9 {
        (0..sigma)
            .map(|i| Symbol::from_char(char::from(b'1' + i as u8)))
            .collect()
    } else {
        (0..sigma)
            .map(|i| perm_symbol(i).expect("checked by FamilySpec::new"))
            .collect()
    }
}

/// The family member in run-length form, built without expanding it.
pub fn gen_family_rle(spec: &FamilySpec) -> RleString {
    let (a, b, c) = (
        Symbol::from_char('a'),
        Symbol::from_char('b'),
        Symbol::from_char('c'),
    );
    let p = spec.size;
    let mut runs = Vec::new();
    match spec.kind {
        FamilyKind::M2Perm => runs.extend(perm_symbols(p).into_iter().map(|s| Run::new(s, 1))),
        FamilyKind::M3Run => runs.extend([Run::new(a, 1), Run::new(c, p - 2), Run::new(b, 1)]),
        FamilyKind::M4Grid => {
            for i in 1..=p {
                runs.extend([Run::new(a, 1), Run::new(b, i), Run::new(c, p + 1 - i)]);
            }
            runs.push(Run::new(a, 1));
        }
        FamilyKind::M5Stairs => {
            for i in 1..=p {
                runs.extend([Run::new(a, 1), Run::new(b, i), Run::new(c, i)]);
            }
            runs.push(Run::new(a, 1));
        }
    }
    RleString::from_runs(runs).expect("family runs are canonical")
}

pub fn gen_family(spec: &FamilySpec) -> Vec<Symbol> {
    decode(&gen_family_rle(spec))
}

/// Count-to-bound ratios; at most 1 whenever the bound holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Slacks {
    pub m2: f64,
    pub m4: f64,
    pub m5: f64,
    #[serde(rename = "X")]
    pub x: f64,
}

impl Slacks {
    pub fn max_with(&self, other: &Slacks) -> Slacks {
        Slacks {
            m2: self.m2.max(other.m2),
            m4: self.m4.max(other.m4),
            m5: self.m5.max(other.m5),
            x: self.x.max(other.x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub sigma_prime: usize,
    pub counts: [usize; 5],
    #[serde(rename = "X")]
    pub x: usize,
    #[serde(rename = "W_size")]
    pub w_size: usize,
    pub space_words: usize,
    pub slacks: Slacks,
    /// Whether the counts were confirmed by the brute-force oracle.
    pub oracle_checked: bool,
}

fn ratio(count: usize, bound: usize) -> f64 {
    if bound == 0 {
        if count == 0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        count as f64 / bound as f64
    }
}

/// Per-type words of the bundle against the oracle, compared as multisets.
pub fn compare_with_oracle(bundle: &ReprBundle) -> Result<[usize; 5]> {
    let text = decode(&bundle.rle);
    let mut ours: BTreeMap<(u8, Vec<Symbol>), usize> = BTreeMap::new();
    let mut handles = Vec::new();
    bundle.enumerate_all(TypeFilter::ALL, &mut handles);
    for h in &handles {
        let w = decode(&bundle.expand(h)?);
        *ours.entry((h.type_id, w)).or_default() += 1;
    }
    let mut theirs: BTreeMap<(u8, Vec<Symbol>), usize> = BTreeMap::new();
    let mut counts = [0usize; 5];
    for r in maws_bruteforce(&text, &bundle.alphabet)? {
        counts[r.type_id as usize - 1] += 1;
        *theirs.entry((r.type_id, r.word)).or_default() += 1;
    }
    if ours != theirs {
        let show = |k: &(u8, Vec<Symbol>)| format!("{}:{}", k.0, crate::symbol::to_string(&k.1));
        let extra: Vec<String> = ours
            .keys()
            .filter(|k| !theirs.contains_key(*k))
            .map(show)
            .take(5)
            .collect();
        let missing: Vec<String> = theirs
            .keys()
            .filter(|k| !ours.contains_key(*k))
            .map(show)
            .take(5)
            .collect();
        let dup = ours.values().any(|&c| c > 1);
        return Err(Error::Mismatch(format!(
            "extra [{}], missing [{}]{}",
            extra.join(" "),
            missing.join(" "),
            if dup { ", duplicates emitted" } else { "" }
        )));
    }
    Ok(counts)
}

/// Checks the counting bounds on `bundle`, and the full MAW set against the
/// oracle when the text has at most `oracle_limit` symbols.
pub fn audit_bundle(bundle: &ReprBundle, oracle_limit: usize) -> Result<BoundReport> {
    let rle = &bundle.rle;
    let (n, m) = (rle.text_len(), rle.run_count());
    let sigma_prime = bundle.d1.longest.len();
    let mut sink = CountSink::default();
    bundle.enumerate_all(TypeFilter::ALL, &mut sink);
    let counts = sink.per_type;
    let x = bundle.x;

    let violation =
        |bound: &'static str, detail: String| Err(Error::BoundViolation { bound, detail });
    if counts[0] != bundle.alphabet.len() {
        return violation(
            "m1-count",
            format!(
                "|M1| = {} but |alphabet| = {}",
                counts[0],
                bundle.alphabet.len()
            ),
        );
    }
    let m2_bound = sigma_prime * sigma_prime.saturating_sub(1);
    if counts[1] > m2_bound {
        return violation("m2-pairs", format!("|M2| = {} > {m2_bound}", counts[1]));
    }
    let m5_bound = 2 * (m + 1);
    if counts[4] > m5_bound {
        return violation(
            "m5-boundaries",
            format!("|M5| = {} > {m5_bound}", counts[4]),
        );
    }
    let x_bound = 2 * (2 * m + 1);
    if x > x_bound {
        return violation("x-linear", format!("X = {x} > {x_bound}"));
    }
    if counts[3] > x * x {
        return violation(
            "m4-square",
            format!("|M4| = {} > X^2 = {}", counts[3], x * x),
        );
    }

    let oracle_checked = n <= oracle_limit;
    if oracle_checked {
        compare_with_oracle(bundle)?;
    }
    Ok(BoundReport {
        n,
        m,
        sigma: bundle.alphabet.len(),
        sigma_prime,
        counts,
        x,
        w_size: bundle.w_size,
        space_words: bundle.space_words().total,
        slacks: Slacks {
            m2: ratio(counts[1], m2_bound),
            m4: ratio(counts[3], x * x),
            m5: ratio(counts[4], m5_bound),
            x: ratio(x, x_bound),
        },
        oracle_checked,
    })
}

pub fn audit_bounds(
    rle: &RleString,
    alphabet: &Alphabet,
    oracle_limit: usize,
) -> Result<BoundReport> {
    audit_bundle(&ReprBundle::build(rle, alphabet)?, oracle_limit)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub param: usize,
    pub n: usize,
    pub m: usize,
    pub sigma_prime: usize,
    pub counts: [usize; 5],
    pub x: usize,
    pub space_words: usize,
    /// Best enumeration time over the repeats.
    pub time_ns: u128,
}

pub const PROBE_HEADER: &str =
    "param,n,m,sigma_prime,count_m1,count_m2,count_m3,count_m4,count_m5,X,space_words,time_ns";

impl ProbeRow {
    pub fn csv(&self) -> String {
        let c = self.counts;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.param,
            self.n,
            self.m,
            self.sigma_prime,
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            self.x,
            self.space_words,
            self.time_ns
        )
    }
}

/// Builds and enumerates each family member, in the given order.
pub fn scaling_probe(specs: &[FamilySpec], repeat: usize) -> Vec<ProbeRow> {
    specs
        .iter()
        .map(|spec| {
            let rle = gen_family_rle(spec);
            let bundle = ReprBundle::from_rle(&rle);
            let mut counts = [0; 5];
            let mut best = u128::MAX;
            for _ in 0..repeat.max(1) {
                let mut sink = CountSink::default();
                let start = Instant::now();
                bundle.enumerate_all(TypeFilter::ALL, &mut sink);
                best = best.min(start.elapsed().as_nanos());
                counts = sink.per_type;
            }
            ProbeRow {
                param: spec.size,
                n: rle.text_len(),
                m: rle.run_count(),
                sigma_prime: bundle.d1.longest.len(),
                counts,
                x: bundle.x,
                space_words: bundle.space_words().total,
                time_ns: best,
            }
        })
        .collect()
}

pub fn probe_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from(PROBE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv());
        out.push('\n');
    }
    out
}

/// A random text: 2 to 6 symbols drawn uniformly, run exponents geometric
/// with mean 3, at most `max_len` symbols.
pub fn random_text<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Vec<Symbol> {
    let sigma = rng.gen_range(2..=6u8);
    let mut text = Vec::new();
    while text.len() < max_len {
        let s = Symbol::from_char(char::from(b'a' + rng.gen_range(0..sigma)));
        let mut e = 1;
        while rng.gen_bool(2.0 / 3.0) {
            e += 1;
        }
        text.extend(std::iter::repeat_n(s, e));
        if rng.gen_bool(0.1) {
            break;
        }
    }
    text.truncate(max_len);
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, to_string};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn spec(kind: FamilyKind, size: usize) -> FamilySpec {
        FamilySpec::new(kind, size).unwrap()
    }

    fn counts(spec: &FamilySpec) -> [usize; 5] {
        ReprBundle::from_rle(&gen_family_rle(spec)).counts()
    }

    #[test]
    fn family_texts() {
        assert_eq!(to_string(&gen_family(&spec(FamilyKind::M2Perm, 4))), "1234");
        assert_eq!(
            to_string(&gen_family(&spec(FamilyKind::M3Run, 6))),
            "accccb"
        );
        assert_eq!(
            to_string(&gen_family(&spec(FamilyKind::M5Stairs, 2))),
            "abcabbcca"
        );
        assert_eq!(
            to_string(&gen_family(&spec(FamilyKind::M4Grid, 3))),
            "abcccabbccabbbca"
        );
        assert_eq!(
            to_string(&gen_family(&spec(FamilyKind::M2Perm, 12))),
            "abcdefghijkl"
        );
    }

    #[test]
    fn sizes_below_minimum_are_rejected() {
        for kind in FamilyKind::ALL {
            assert!(FamilySpec::new(kind, kind.min_size() - 1).is_err());
        }
        assert!("m9-x".parse::<FamilyKind>().is_err());
        assert_eq!("m4-grid".parse::<FamilyKind>().unwrap(), FamilyKind::M4Grid);
    }

    #[test]
    fn family_counts() {
        assert_eq!(counts(&spec(FamilyKind::M2Perm, 4))[1], 9);
        assert_eq!(counts(&spec(FamilyKind::M3Run, 6))[2], 3);
        // values below confirmed by the brute-force oracle
        assert_eq!(counts(&spec(FamilyKind::M4Grid, 3))[3], 6);
        assert_eq!(counts(&spec(FamilyKind::M5Stairs, 2))[4], 3);
        assert_eq!(counts(&spec(FamilyKind::M5Stairs, 10))[4], 35);
        assert_eq!(
            gen_family_rle(&spec(FamilyKind::M5Stairs, 10)).run_count(),
            31
        );
        for kind in FamilyKind::ALL {
            let rle = gen_family_rle(&spec(kind, 5));
            audit_bounds(&rle, &Alphabet::of_text(&decode(&rle)), 4096).unwrap();
        }
    }

    #[test]
    fn audit_example() {
        let t = symbols("bbacccbaa");
        let r = audit_bounds(
            &crate::rle::encode(&t).unwrap(),
            &Alphabet::of_text(&t),
            4096,
        )
        .unwrap();
        assert_eq!(r.counts, [3, 3, 2, 1, 3]);
        assert!(r.oracle_checked);
        assert!(
            r.slacks.m2 <= 1.0 && r.slacks.m4 <= 1.0 && r.slacks.m5 <= 1.0 && r.slacks.x <= 1.0
        );
    }

    #[test]
    fn audit_reports_oracle_mismatch() {
        let t = symbols("abcabd");
        let mut b = ReprBundle::from_rle(&crate::rle::encode(&t).unwrap());
        b.inject_fault();
        assert!(matches!(compare_with_oracle(&b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn probe_rows() {
        let rows = scaling_probe(
            &[
                spec(FamilyKind::M3Run, 1000),
                spec(FamilyKind::M3Run, 10000),
            ],
            1,
        );
        assert_eq!(rows[0].counts[2], 997);
        assert_eq!(rows[1].counts[2], 9997);
        assert_eq!(rows[0].space_words, rows[1].space_words);
        let csv = probe_csv(&rows);
        assert!(csv.starts_with(PROBE_HEADER));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn random_texts_are_bounded() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_text(&mut rng, 64);
            assert!(t.len() <= 64 && !t.is_empty());
            let distinct: std::collections::BTreeSet<_> = t.iter().collect();
            assert!(distinct.len() <= 6);
        }
    }
}
