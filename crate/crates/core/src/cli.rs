//! Command-line front end.
//!
//! Every command takes `-n <strands>` and words as positional arguments.
//! Text output is the default; `--json` switches to the serialized types.
//!
//! Exit codes: 0 the answer holds (or the command succeeded), 1 it does not,
//! 2 bad input, 3 a search cap or strand bound was hit, 4 an internal
//! invariant failed.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::bkl::{artin_of, band_of_artin, BandWord};
use crate::error::Error;
use crate::rewrite::{Engine, Side};
use crate::selfcheck::run_suites;
use crate::words::{Context, Letter, Word};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "singbraid",
    version,
    about = "Normal forms, word and conjugacy problems for the singular braid monoid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Number of strands.
    #[arg(short = 'n', value_name = "STRANDS")]
    pub n: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Maximum number of members in a summit set or enumerated class.
    #[arg(long, value_name = "MEMBERS")]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Garside normal form Δ^m·base.
    Nf {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Left- or right-greedy form of a word.
    Greedy {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        word: String,
    },
    /// Decide whether two words are equal.
    Eq {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Decide whether two words are conjugate by a braid.
    Conj {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Summit set of a word.
    Summit {
        #[command(flatten)]
        common: Common,
        word: String,
    },
    /// Convert between Artin and band spellings.
    Convert {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        to: Alphabet,
        word: String,
    },
    /// Check every relation of the band presentation.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Print a uniformly random word.
    Rand {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Profile::Mixed)]
        profile: Profile,
    },
    /// Run the exhaustive small-instance consistency suites.
    Selfcheck {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alphabet {
    Band,
    Artin,
}

/// Which letters a random word is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    /// σ_i and x_i.
    Positive,
    /// σ_i and σ_i⁻¹.
    Braid,
    /// σ_i, σ_i⁻¹ and x_i.
    Mixed,
}

impl Profile {
    pub fn alphabet(self, ctx: Context) -> Vec<Letter> {
        let g = ctx.generators();
        let sig = (1..=g).map(Letter::sigma);
        let inv = (1..=g).map(Letter::sigma_inv);
        let xs = (1..=g).map(Letter::x);
        match self {
            Profile::Positive => sig.chain(xs).collect(),
            Profile::Braid => sig.chain(inv).collect(),
            Profile::Mixed => sig.chain(inv).chain(xs).collect(),
        }
    }
}

/// A word of exactly `length` letters, each uniform over the profile.
pub fn random_word<R: Rng + ?Sized>(ctx: Context, length: usize, profile: Profile, rng: &mut R) -> Word {
    let alphabet = profile.alphabet(ctx);
    let letters = (0..length).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
    Word::new(ctx, letters).expect("alphabet in range")
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            code
        }
    }
}

/// Runs a parsed request, writing the answer to `out` and any error, as a
/// JSON object, to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        // A reader that stops early (`| head`) is not an error.
        Err(Error::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let body = json!({ "error": error_kind(&e), "message": e.to_string() });
            let _ = writeln!(err, "{body}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_limit() => EXIT_LIMIT,
        Error::Invariant(_) | Error::Output(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::MalformedToken { .. } => "malformed-token",
        Error::IndexOutOfRange { .. } => "index-out-of-range",
        Error::BandIndexOutOfRange { .. } => "band-index-out-of-range",
        Error::TooFewStrands(_) => "too-few-strands",
        Error::TooManyStrands { .. } => "too-many-strands",
        Error::ContextMismatch { .. } => "context-mismatch",
        Error::NonInvertible => "non-invertible",
        Error::XLettersPresent => "singular-letters-present",
        Error::NotPositive => "not-positive",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::BoundExceeded { .. } => "bound-exceeded",
        Error::Invariant(_) => "invariant",
        Error::Output(_) => "output",
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Nf { common, .. }
        | Command::Greedy { common, .. }
        | Command::Eq { common, .. }
        | Command::Conj { common, .. }
        | Command::Summit { common, .. }
        | Command::Convert { common, .. }
        | Command::Verify { common }
        | Command::Rand { common, .. }
        | Command::Selfcheck { common } => common,
    }
}

fn engine(common: &Common) -> Engine {
    let engine = Engine::new();
    match common.cap {
        Some(cap) => engine.with_class_cap(cap).with_summit_cap(cap),
        None => engine,
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> crate::Result<()> {
    let line = if json { serde_json::to_string(value).map_err(|e| Error::Invariant(e.to_string()))? } else { text() };
    Ok(writeln!(out, "{line}")?)
}

fn verdict(out: &mut dyn Write, json: bool, n: usize, holds: bool, yes: &str, no: &str) -> crate::Result<i32> {
    let word = if holds { yes } else { no };
    emit(out, json, &json!({ "n": n, "verdict": word, "holds": holds }), || word.to_owned())?;
    Ok(if holds { EXIT_HOLDS } else { EXIT_FAILS })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> crate::Result<i32> {
    let c = common(&cli.command);
    let (n, json) = (c.n, c.json);
    let ctx = Context::new(n)?;
    let engine = engine(c);
    match &cli.command {
        Command::Nf { word, .. } => {
            let nf = engine.normal_form(&Word::parse(word, n)?)?;
            emit(out, json, &nf, || nf.to_string())?;
        }
        Command::Greedy { word, side, .. } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let g = engine.greedy_form(&Word::parse(word, n)?, side)?;
            emit(out, json, &g, || g.to_string())?;
        }
        Command::Eq { left, right, .. } => {
            let holds = engine.equal(&Word::parse(left, n)?, &Word::parse(right, n)?)?;
            return verdict(out, json, n, holds, "equal", "not-equal");
        }
        Command::Conj { left, right, .. } => {
            let holds = engine.conjugate_p(&Word::parse(left, n)?, &Word::parse(right, n)?)?;
            return verdict(out, json, n, holds, "conjugate", "not-conjugate");
        }
        Command::Summit { word, .. } => {
            let ss = engine.summit_set(&Word::parse(word, n)?)?;
            emit(out, json, &ss, || {
                let mut text = format!("summit power {}", ss.summit_power);
                for m in &ss.members {
                    text.push('\n');
                    text.push_str(&m.to_string());
                }
                text
            })?;
        }
        Command::Convert { word, to, .. } => {
            let converted = match to {
                Alphabet::Band => band_of_artin(&Word::parse(word, n)?).to_string(),
                Alphabet::Artin => artin_of(&BandWord::parse(word, n)?).to_string(),
            };
            emit(out, json, &json!({ "n": n, "word": converted }), || converted.clone())?;
        }
        Command::Verify { .. } => {
            let report = engine.verify_presentation(n)?;
            emit(out, json, &report, || {
                let mut lines: Vec<String> = report
                    .families
                    .iter()
                    .map(|f| {
                        let status = if f.failures.is_empty() { "ok" } else { "FAILED" };
                        format!("{:<24} {:>5} instances  {status}", f.name, f.instances)
                    })
                    .collect();
                for f in &report.families {
                    lines.extend(f.failures.iter().map(|x| format!("  {}: {x}", f.name)));
                }
                lines.join("\n")
            })?;
            return Ok(if report.passed() { EXIT_HOLDS } else { EXIT_FAILS });
        }
        Command::Rand { seed, length, profile, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let w = random_word(ctx, *length, *profile, &mut rng);
            emit(out, json, &json!({ "n": n, "word": w }), || w.to_string())?;
        }
        Command::Selfcheck { .. } => {
            let results = run_suites(&engine, n)?;
            let passed = results.iter().all(|r| r.passed());
            emit(out, json, &json!({ "n": n, "passed": passed, "suites": results }), || {
                results
                    .iter()
                    .map(|r| match &r.failure {
                        None => format!("PASS {:<30} {} cases", r.name, r.cases),
                        Some(f) => format!("FAIL {:<30} {} cases, first failure: {f}", r.name, r.cases),
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            return Ok(if passed { EXIT_HOLDS } else { EXIT_FAILS });
        }
    }
    Ok(EXIT_HOLDS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("singbraid").chain(args.iter().copied());
        let code = main_with_args(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn nf_json() {
        let (code, out, _) = call(&["nf", "-n", "3", "--json", "s1-"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"n":3,"power":-1,"base":"s1 s2"}"#);
    }

    #[test]
    fn eq_verdicts() {
        assert_eq!(call(&["eq", "-n", "3", "x1 s2 s1", "s2 s1 x2"]), (0, "equal\n".into(), String::new()));
        let (code, out, _) = call(&["eq", "-n", "3", "x1", "x2"]);
        assert_eq!((code, out.as_str()), (1, "not-equal\n"));
    }

    #[test]
    fn conj_verdicts() {
        assert_eq!(call(&["conj", "-n", "3", "s1", "s2"]).0, 0);
        let (code, out, _) = call(&["conj", "-n", "3", "x1", "s1"]);
        assert_eq!((code, out.as_str()), (1, "not-conjugate\n"));
    }

    #[test]
    fn convert_both_ways() {
        assert_eq!(call(&["convert", "-n", "3", "--to", "artin", "b[3,1]"]).1, "s2 x1 s2-\n");
        assert_eq!(call(&["convert", "-n", "3", "--to", "band", "s1 x2 s2-"]).1, "a[2,1] b[3,2] a[3,2]-\n");
    }

    #[test]
    fn bad_input_exits_2_with_json_error() {
        let (code, out, err) = call(&["nf", "-n", "3", "s9"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "index-out-of-range");
        assert_eq!(call(&["nf", "-n", "3", "q1"]).0, 2);
        assert_eq!(call(&["nf", "-n", "1", ""]).0, 2);
        assert_eq!(call(&["nf", "s1"]).0, 2);
        assert_eq!(call(&["eq", "-n", "3", "s1"]).0, 2);
    }

    #[test]
    fn limits_exit_3() {
        let (code, _, err) = call(&["summit", "-n", "6", "s1"]);
        assert_eq!(code, 3);
        assert!(err.contains("bound-exceeded"));
        let (code, _, err) = call(&["summit", "-n", "4", "--cap", "2", "s1"]);
        assert_eq!(code, 3);
        assert!(err.contains("cap-exceeded"));
    }

    #[test]
    fn rand_is_deterministic() {
        let a = call(&["rand", "-n", "4", "--seed", "7", "--length", "12"]);
        let b = call(&["rand", "-n", "4", "--seed", "7", "--length", "12"]);
        assert_eq!(a, b);
        assert_eq!(a.1.split_whitespace().count(), 12);
        let pos = call(&["rand", "-n", "4", "--seed", "7", "--profile", "positive"]).1;
        assert!(!pos.contains('-'));
    }

    #[test]
    fn verify_and_summit_output() {
        let (code, out, _) = call(&["verify", "-n", "4", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(call(&["summit", "-n", "3", "s1"]).1, "summit power 0\nD^0 s1\nD^0 s2\n");
    }

    #[test]
    fn greedy_sides() {
        let (code, out, _) = call(&["greedy", "-n", "3", "--json", "--side", "right", "x1 s1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["side"], "right");
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("selfcheck"));
    }
}
