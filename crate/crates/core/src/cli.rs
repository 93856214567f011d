//! The `rlemaw` command line.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    audit_bundle, compare_with_oracle, gen_family_rle, FamilyKind, FamilySpec, Slacks,
};
use crate::error::Error;
use crate::handle::MawHandle;
use crate::repr::{CountSink, FnSink, ReprBundle, TypeFilter};
use crate::rle::{decode, encode, parse_rle_text, to_rle_text, RleString};
use crate::symbol::{symbols, symbols_from_bytes, Alphabet, Symbol};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

pub const DEFAULT_ORACLE_LIMIT: usize = 4096;
pub const ORACLE_LIMIT_ENV: &str = "RLEMAW_ORACLE_LIMIT";

#[derive(Parser, Debug)]
#[command(
    name = "rlemaw",
    version,
    about = "Minimal absent words of run-length encoded strings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plain text to the `a^2 c^7 b^2` run format.
    Encode(CodecArgs),
    /// Run format back to plain text.
    Decode(CodecArgs),
    /// List the minimal absent words.
    Maws(MawsArgs),
    /// Counts, structure sizes and bound slacks.
    Stats(StatsArgs),
    /// Compare against the brute-force oracle.
    Verify(VerifyArgs),
    /// Print a lower-bound family member.
    Gen(GenArgs),
    /// Time construction and enumeration.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct CodecArgs {
    /// Input file, or `-` for standard input.
    pub input: PathBuf,
    /// Treat plain text as raw bytes.
    #[arg(long)]
    pub bytes: bool,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Plain text file, `.rle` run file, or `-` for standard input.
    pub input: PathBuf,
    /// Treat plain text as raw bytes.
    #[arg(long)]
    pub bytes: bool,
    /// Keep a trailing newline of plain-text input.
    #[arg(long)]
    pub raw: bool,
    /// Read standard input in the run format.
    #[arg(long)]
    pub rle: bool,
    /// Ordered alphabet; defaults to the symbols of the input.
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
    Rle,
}

#[derive(Args, Debug)]
pub struct MawsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// MAW types to list, e.g. `1,3,5`.
    #[arg(long, default_value = "all")]
    pub types: TypeFilter,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print six-field handles instead of words.
    #[arg(long)]
    pub refs: bool,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest text the oracle is run on.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// m2-perm, m3-run, m4-grid or m5-stairs.
    pub kind: FamilyKind,
    /// sigma' for m2-perm, n for m3-run, p otherwise.
    pub size: usize,
    /// Print in the run format.
    #[arg(long)]
    pub rle: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeat: u32,
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::InvalidSpec(_) => EXIT_USAGE,
            Error::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn plain_symbols(data: Vec<u8>, bytes: bool) -> CliResult<Vec<Symbol>> {
    if bytes {
        return Ok(symbols_from_bytes(&data));
    }
    let text = String::from_utf8(data)
        .map_err(|e| Failure::input(format!("input is not UTF-8 ({e}); try --bytes")))?;
    Ok(symbols(&text))
}

fn is_rle_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "rle")
}

fn load(args: &InputArgs) -> CliResult<(RleString, Alphabet)> {
    let data = read_bytes(&args.input)?;
    let rle = if args.rle || is_rle_path(&args.input) {
        let src = String::from_utf8(data).map_err(|_| Failure::input("run file is not UTF-8"))?;
        parse_rle_text(&src)?
    } else {
        let mut text = plain_symbols(data, args.bytes)?;
        if !args.raw && text.last() == Some(&Symbol::from_char('\n')) {
            text.pop();
            if text.last() == Some(&Symbol::from_char('\r')) {
                text.pop();
            }
        }
        encode(&text)?
    };
    let alphabet = match &args.alphabet {
        Some(a) => a.parse::<Alphabet>()?,
        None => Alphabet::of_text(&rle.runs().iter().map(|r| r.symbol).collect::<Vec<_>>()),
    };
    Ok((rle, alphabet))
}

fn build(args: &InputArgs) -> CliResult<ReprBundle> {
    let (rle, alphabet) = load(args)?;
    Ok(ReprBundle::build(&rle, &alphabet)?)
}

fn symbol_text(s: Symbol) -> String {
    s.to_char().map(String::from).unwrap_or_default()
}

#[derive(Serialize)]
struct MawRecord<'a> {
    #[serde(rename = "type")]
    type_id: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    maw: Option<&'a str>,
    rle: Vec<(String, usize)>,
    len: usize,
}

fn write_maw(
    out: &mut impl Write,
    bundle: &ReprBundle,
    h: &MawHandle,
    args: &MawsArgs,
) -> CliResult<()> {
    if args.refs && args.format != Format::Jsonl {
        writeln!(out, "{h}")?;
        return Ok(());
    }
    let w = bundle.expand(h)?;
    match args.format {
        Format::Text => {
            let word: String = decode(&w).into_iter().map(symbol_text).collect();
            writeln!(out, "{word}")?;
        }
        Format::Rle => writeln!(out, "{}", to_rle_text(&w)?)?,
        Format::Jsonl => {
            let word: Option<String> =
                (!args.refs).then(|| decode(&w).into_iter().map(symbol_text).collect());
            let rec = MawRecord {
                type_id: h.type_id,
                maw: word.as_deref(),
                rle: w
                    .runs()
                    .iter()
                    .map(|r| (symbol_text(r.symbol), r.exponent))
                    .collect(),
                len: w.text_len(),
            };
            serde_json::to_writer(&mut *out, &rec).map_err(|e| Failure::input(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_codec(args: &CodecArgs, to_rle: bool) -> CliResult<()> {
    let data = read_bytes(&args.input)?;
    let mut out = BufWriter::new(io::stdout().lock());
    if to_rle {
        let rle = encode(&plain_symbols(data, args.bytes)?)?;
        writeln!(out, "{}", to_rle_text(&rle)?)?;
    } else {
        let src = String::from_utf8(data).map_err(|_| Failure::input("run file is not UTF-8"))?;
        let text = decode(&parse_rle_text(&src)?);
        if args.bytes {
            let bytes = text
                .iter()
                .map(|s| {
                    u8::try_from(s.code())
                        .map_err(|_| Failure::input(format!("symbol {s} is not a byte")))
                })
                .collect::<CliResult<Vec<u8>>>()?;
            out.write_all(&bytes)?;
        } else {
            let s: String = text.into_iter().map(symbol_text).collect();
            out.write_all(s.as_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_maws(args: &MawsArgs) -> CliResult<()> {
    let bundle = build(&args.input)?;
    let mut out = BufWriter::new(io::stdout().lock());
    let mut failed: Option<Failure> = None;
    let mut sink = FnSink(|h: MawHandle| {
        if failed.is_none() {
            if let Err(e) = write_maw(&mut out, &bundle, &h, args) {
                failed = Some(e);
            }
        }
    });
    bundle.enumerate_all(args.types, &mut sink);
    if let Some(e) = failed {
        return Err(e);
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Counts {
    m1: usize,
    m2: usize,
    m3: usize,
    m4: usize,
    m5: usize,
}

impl From<[usize; 5]> for Counts {
    fn from(c: [usize; 5]) -> Counts {
        Counts {
            m1: c[0],
            m2: c[1],
            m3: c[2],
            m4: c[3],
            m5: c[4],
        }
    }
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    m: usize,
    sigma_prime: usize,
    counts: Counts,
    #[serde(rename = "X")]
    x: usize,
    #[serde(rename = "W_size")]
    w_size: usize,
    space_words: usize,
    bound_slacks: Slacks,
}

fn cmd_stats(args: &StatsArgs) -> CliResult<()> {
    let bundle = build(&args.input)?;
    let r = audit_bundle(&bundle, 0)?;
    let stats = Stats {
        n: r.n,
        m: r.m,
        sigma_prime: r.sigma_prime,
        counts: r.counts.into(),
        x: r.x,
        w_size: r.w_size,
        space_words: r.space_words,
        bound_slacks: r.slacks,
    };
    let mut out = io::stdout().lock();
    if args.json {
        let s = serde_json::to_string(&stats).map_err(|e| Failure::input(e.to_string()))?;
        writeln!(out, "{s}")?;
    } else {
        writeln!(
            out,
            "n {}\nm {}\nsigma_prime {}",
            stats.n, stats.m, stats.sigma_prime
        )?;
        for (i, c) in r.counts.iter().enumerate() {
            writeln!(out, "m{} {c}", i + 1)?;
        }
        writeln!(
            out,
            "X {}\nW_size {}\nspace_words {}",
            stats.x, stats.w_size, stats.space_words
        )?;
        let s = stats.bound_slacks;
        writeln!(
            out,
            "slack_m2 {:.4}\nslack_m4 {:.4}\nslack_m5 {:.4}\nslack_X {:.4}",
            s.m2, s.m4, s.m5, s.x
        )?;
    }
    Ok(())
}

fn oracle_limit(flag: Option<usize>) -> CliResult<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(ORACLE_LIMIT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: EXIT_USAGE,
            message: format!("{ORACLE_LIMIT_ENV}={v:?} is not a number"),
        }),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let limit = oracle_limit(args.max_n)?;
    let mut bundle = build(&args.input)?;
    let n = bundle.rle.text_len();
    if n > limit {
        return Err(Failure::input(format!(
            "text has {n} symbols, over the oracle limit {limit}; the oracle costs O(n^2 sigma), raise --max-n or {ORACLE_LIMIT_ENV} to force it"
        )));
    }
    if args.inject_fault {
        bundle.inject_fault();
    }
    let mut sink = CountSink::default();
    bundle.enumerate_all(TypeFilter::ALL, &mut sink);
    let mut out = io::stdout().lock();
    for (i, c) in sink.per_type.iter().enumerate() {
        writeln!(out, "m{} {c}", i + 1)?;
    }
    match compare_with_oracle(&bundle) {
        Ok(_) => {
            writeln!(out, "MATCH")?;
            Ok(())
        }
        Err(Error::Mismatch(detail)) => {
            writeln!(out, "MISMATCH")?;
            Err(Failure {
                code: EXIT_MISMATCH,
                message: detail,
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gen(args: &GenArgs) -> CliResult<()> {
    let spec = FamilySpec::new(args.kind, args.size)?;
    let rle = gen_family_rle(&spec);
    let mut out = BufWriter::new(io::stdout().lock());
    if args.rle {
        writeln!(out, "{}", to_rle_text(&rle)?)?;
    } else {
        for r in rle.runs() {
            let s = symbol_text(r.symbol);
            for _ in 0..r.exponent {
                out.write_all(s.as_bytes())?;
            }
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> CliResult<()> {
    let (rle, alphabet) = load(&args.input)?;
    let mut build_ns = u128::MAX;
    let mut enum_ns = u128::MAX;
    let mut bundle = None;
    let mut total = 0;
    for _ in 0..args.repeat {
        let start = Instant::now();
        let b = ReprBundle::build(&rle, &alphabet)?;
        build_ns = build_ns.min(start.elapsed().as_nanos());
        let mut sink = CountSink::default();
        let start = Instant::now();
        b.enumerate_all(TypeFilter::ALL, &mut sink);
        enum_ns = enum_ns.min(start.elapsed().as_nanos());
        total = sink.total();
        bundle = Some(b);
    }
    let bundle = bundle.expect("repeat is at least one");
    let per_maw = if total == 0 {
        0.0
    } else {
        enum_ns as f64 / total as f64
    };
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "n {}\nm {}\nmaws {total}",
        rle.text_len(),
        rle.run_count()
    )?;
    writeln!(
        out,
        "build_ns {build_ns}\nenumerate_ns {enum_ns}\nns_per_maw {per_maw:.2}"
    )?;
    writeln!(out, "space_words {}", bundle.space_words().total)?;
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Encode(a) => cmd_codec(a, true),
        Command::Decode(a) => cmd_codec(a, false),
        Command::Maws(a) => cmd_maws(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code == EXIT_MISMATCH {
                eprintln!("rlemaw: mismatch: {}", f.message);
            } else {
                eprintln!("rlemaw: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn repeat_must_be_positive() {
        assert!(Cli::try_parse_from(["rlemaw", "bench", "x", "--repeat", "0"]).is_err());
        assert!(Cli::try_parse_from(["rlemaw", "bench", "x", "--repeat", "2"]).is_ok());
    }

    #[test]
    fn type_list_parses() {
        let cli = Cli::try_parse_from(["rlemaw", "maws", "x", "--types", "3,4"]).unwrap();
        let Command::Maws(a) = cli.command else {
            panic!()
        };
        assert!(a.types.contains(3) && !a.types.contains(1));
        assert!(Cli::try_parse_from(["rlemaw", "maws", "x", "--types", "7"]).is_err());
    }

    #[test]
    fn bad_family_sizes_are_usage_errors() {
        let f: Failure = Error::InvalidSpec("x".into()).into();
        assert_eq!(f.code, EXIT_USAGE);
        let f: Failure = Error::Mismatch("x".into()).into();
        assert_eq!(f.code, EXIT_MISMATCH);
    }
}
