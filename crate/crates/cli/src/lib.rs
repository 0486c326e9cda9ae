//! The `cancelkit` command line.
//!
//! Exit codes: 0 success, yes or true; 1 no or false; 2 inconclusive;
//! 64 usage error; 65 bad input data.

mod report;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use cancelkit::conjtrans::{ClassCount, PowerConjAnswer};
use cancelkit::oracle::ModelKind;
use cancelkit::{
    check_conditions, parse_presentation, ConjError, Context, GeodesicDfa, Geometry, HalfInteger, Oracle, Presentation,
    RootAnswer, Settings, Word,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Auto,
    Z2,
    Klein,
    Hex,
    Freetri,
    Generic,
}

impl ModelArg {
    fn kind(self) -> Option<ModelKind> {
        match self {
            ModelArg::Auto => None,
            ModelArg::Z2 => Some(ModelKind::Z2),
            ModelArg::Klein => Some(ModelKind::Klein),
            ModelArg::Hex => Some(ModelKind::Hex),
            ModelArg::Freetri => Some(ModelKind::FreeTri),
            ModelArg::Generic => Some(ModelKind::Generic),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DfaFormat {
    Dot,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "cancelkit", version, about = "Geodesics, translation numbers and roots in small cancellation groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "CANCELKIT_FORMAT", default_value = "json")]
    pub format: Format,
    /// Reference model for oracle checks.
    #[arg(long, global = true, value_enum, default_value = "auto")]
    pub model: ModelArg,
    /// Longest conjugator tried by conjugacy searches and certification.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound_conj: u64,
    /// Word length for the exhaustive oracle comparison in `selftest`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub radius: Option<u64>,
    /// Extra length the rewriting oracle may use beyond its input.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub rewrite_cap: u64,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Small cancellation conditions of a presentation.
    Check { file: PathBuf },
    /// Whether a word is geodesic, with a strip certificate if it is not.
    Geodesic { file: PathBuf, word: String },
    /// Rewrites a word to a geodesic and lists the strips used.
    Reduce { file: PathBuf, word: String },
    /// The minimal automaton of geodesic words.
    Dfa {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        out: DfaFormat,
    },
    /// Number of geodesic words of each length up to K.
    Count { file: PathBuf, k: usize },
    /// Shortest conjugacy-class representative.
    Class { file: PathBuf, word: String },
    /// Translation number, as twice its value.
    Tau { file: PathBuf, word: String },
    /// Whether the word has an N-th root up to conjugacy.
    Root { file: PathBuf, word: String, n: usize },
    /// Largest N for which the word has an N-th root.
    Maxroot { file: PathBuf, word: String },
    /// Whether W1 is conjugate to a power of W2.
    Powconj { file: PathBuf, w1: String, w2: String },
    /// Conjugacy classes with translation number at most R (e.g. 2, 3/2, 1.5).
    Classes { file: PathBuf, r: HalfInteger },
    /// Sphere sizes of the reference model's Cayley graph up to radius R.
    Ball { file: PathBuf, r: usize },
    /// Oracle-equivalence and property suites; exit 0 iff all pass.
    Selftest {
        file: PathBuf,
        /// Cases per randomized suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

/// A failure mapped to an exit code, with a diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn data_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DATA, message: message.into() }
}

impl From<ConjError> for Failure {
    fn from(e: ConjError) -> Self {
        match e {
            ConjError::Inconclusive { .. } => Failure { code: EXIT_INCONCLUSIVE, message: e.to_string() },
            other => data_error(other.to_string()),
        }
    }
}

pub(crate) fn load(path: &Path) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| data_error(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| data_error(format!("{}: {e}", path.display())))
}

fn word(p: &Presentation, s: &str) -> Result<Word, Failure> {
    p.parse_word(s).map_err(|e| data_error(e.to_string()))
}

fn geometry(p: &Presentation) -> Result<Geometry, Failure> {
    Geometry::new(p).map_err(|e| data_error(e.to_string()))
}

pub(crate) fn oracle(cli: &Cli, p: &Presentation) -> Result<Oracle, Failure> {
    let o = match cli.model.kind() {
        None => Oracle::auto(p),
        Some(kind) => Oracle::with_model(p, kind).map_err(|e| data_error(e.to_string()))?,
    };
    Ok(o.with_rewrite_extra(cli.rewrite_cap as usize))
}

pub(crate) fn context(cli: &Cli, p: &Presentation) -> Result<Context, Failure> {
    let settings = Settings {
        conj_bound: cli.bound_conj as usize,
        ..Settings::default()
    };
    Ok(Context::with_oracle(p, oracle(cli, p)?)?.with_settings(settings))
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Check { file } => {
            let r = check_conditions(&load(file)?);
            Ok(Report::value(&r, EXIT_OK))
        }
        Command::Geodesic { file, word: w } => {
            let p = load(file)?;
            let g = geometry(&p)?;
            let w = word(&p, w)?;
            let cert = if w.is_freely_reduced() { g.find_bad_subword(&w) } else { None };
            let geodesic = w.is_freely_reduced() && cert.is_none();
            let v = json!({ "word": w, "geodesic": geodesic, "certificate": cert });
            Ok(Report::json(v, if geodesic { EXIT_OK } else { EXIT_NO }).with_text(geodesic.to_string()))
        }
        Command::Reduce { file, word: w } => {
            let p = load(file)?;
            let g = geometry(&p)?;
            let w = word(&p, w)?;
            let (r, trail) = g.reduce_to_geodesic(&w);
            let v = json!({ "input": w, "geodesic": r, "length": r.len(), "trail": trail });
            Ok(Report::json(v, EXIT_OK).with_text(r.to_string()))
        }
        Command::Dfa { file, out } => {
            let dfa = GeodesicDfa::build(&geometry(&load(file)?)?);
            let body = match out {
                DfaFormat::Dot => dfa.to_dot(),
                DfaFormat::Tsv => dfa.to_tsv(),
            };
            Ok(Report::raw(body, EXIT_OK))
        }
        Command::Count { file, k } => {
            let dfa = GeodesicDfa::build(&geometry(&load(file)?)?);
            let counts = dfa.count_geodesics(*k);
            let text = counts.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            Ok(Report::json(json!({ "counts": counts }), EXIT_OK).with_text(text))
        }
        Command::Class { file, word: w } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let r = c.shortest_class_rep(&word(&p, w)?)?;
            let text = r.rep.to_string();
            Ok(Report::value(&r, EXIT_OK).with_text(text))
        }
        Command::Tau { file, word: w } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let t = c.translation_number(&word(&p, w)?)?;
            Ok(Report::value(&t, EXIT_OK).with_text(t.to_string()))
        }
        Command::Root { file, word: w, n } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let a = c.nth_root(&word(&p, w)?, *n)?;
            let code = match a {
                RootAnswer::Yes { .. } => EXIT_OK,
                RootAnswer::No { .. } => EXIT_NO,
                RootAnswer::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            };
            Ok(Report::value(&a, code))
        }
        Command::Maxroot { file, word: w } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let m = c.max_root(&word(&p, w)?)?;
            let code = if m.inconclusive_above.is_empty() { EXIT_OK } else { EXIT_INCONCLUSIVE };
            let text = format!("{} {}", m.n, m.witness);
            Ok(Report::value(&m, code).with_text(text))
        }
        Command::Powconj { file, w1, w2 } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let a = c.power_conjugacy(&word(&p, w1)?, &word(&p, w2)?)?;
            let code = match a {
                PowerConjAnswer::Yes { .. } => EXIT_OK,
                PowerConjAnswer::No => EXIT_NO,
                PowerConjAnswer::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            };
            Ok(Report::value(&a, code))
        }
        Command::Classes { file, r } => {
            let p = load(file)?;
            let c = context(cli, &p)?;
            let cc: ClassCount = c.count_classes_by_tau(*r)?;
            let text = format!("{}", cc.count);
            Ok(Report::value(&cc, EXIT_OK).with_text(text))
        }
        Command::Ball { file, r } => {
            let p = load(file)?;
            let o = oracle(cli, &p)?;
            let ball = o.ball(*r).map_err(|e| data_error(e.to_string()))?;
            let v = json!({ "model": o.kind(), "radius": ball.radius, "spheres": ball.spheres });
            let text = ball.spheres.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
            Ok(Report::json(v, EXIT_OK).with_text(text).with_tsv(ball.to_tsv()))
        }
        Command::Selftest { file, cases } => {
            let p = load(file)?;
            let radius = cli.radius.map_or(selftest::DEFAULT_RADIUS, |r| r as usize);
            let s = selftest::run(cli, &p, radius, *cases)?;
            let code = if s.passed { EXIT_OK } else { EXIT_NO };
            Ok(Report::value(&s, code))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            report.code
        }
        Err(f) => {
            let _ = writeln!(err, "cancelkit: {}", f.message);
            f.code
        }
    }
}
