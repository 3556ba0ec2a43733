//! The `plactic-lab` command line.
//!
//! Exit codes: 0 when the answer is positive (equivalent, satisfied, holds),
//! 1 when it is negative, 2 for usage and parse errors.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::identities::{
    self, certificate, derive_search, find_counterexample, normal_form, oracle, satisfies, DerivationStep,
    OracleConfig, OracleMode, SearchBounds, Verdict,
};
use crate::monoids::{canonical, canonical_at_rank, equivalent, CanonicalObject, MonoidFamily};
use crate::words::{parse_identity_system, Identity, LetterWord, Symbol, VarWord, Word};

/// Environment variable capping the oracle's worker threads.
pub const THREADS_ENV: &str = "PLACTIC_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "plactic-lab", version, about = "Plactic-like monoids: insertion, identities, derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical object of a word.
    Object(ObjectArgs),
    /// Compare two words in a monoid.
    Equiv {
        #[arg(long)]
        monoid: MonoidFamily,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Content, evaluation and skeletons of a word over letters or variables.
    Stats {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide an identity, with a counterexample when it fails.
    CheckIdentity {
        #[arg(long)]
        monoid: MonoidFamily,
        #[arg(long)]
        id: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Normal form of a word over variables.
    Nf {
        #[arg(long)]
        monoid: MonoidFamily,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive rhs from lhs: by normalization in a monoid's basis, or by
    /// bounded search in the identity system given with --sigma.
    Derive {
        #[arg(long, required_unless_present = "sigma")]
        monoid: Option<MonoidFamily>,
        #[arg(long)]
        sigma: Option<PathBuf>,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 8)]
        max_steps: usize,
        /// Longest intermediate word visited by the search.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Brute-force substitution check of an identity.
    Oracle {
        #[arg(long)]
        monoid: MonoidFamily,
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 2)]
        rank: u32,
        /// Longest substitution image.
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        /// Sample this many random substitutions instead of enumerating.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw the canonical object (Graphviz by default).
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct ObjectArgs {
    #[arg(long)]
    monoid: MonoidFamily,
    #[arg(long)]
    word: String,
    /// Reject letters above this rank.
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    monoid: MonoidFamily,
    #[arg(long)]
    word: String,
    #[arg(long)]
    rank: Option<u32>,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Object(a) => object(a.monoid, &a.word, a.rank, a.format, out),
        Command::Render(a) => object(a.monoid, &a.word, a.rank, a.format, out),
        Command::Equiv { monoid, lhs, rhs, format } => equiv(monoid, &lhs, &rhs, format, out),
        Command::Stats { word, format } => stats(&word, format, out),
        Command::CheckIdentity { monoid, id, format } => check_identity(monoid, &id, format, out),
        Command::Nf { monoid, word, format } => nf(monoid, &word, format, out),
        Command::Derive { monoid, sigma, lhs, rhs, max_steps, max_len, format } => {
            derive(monoid, sigma, &lhs, &rhs, max_steps, max_len, format, out)
        }
        Command::Oracle { monoid, id, rank, max_len, trials, seed, format } => {
            let mode = match trials {
                Some(trials) => OracleMode::Random { trials, max_len, seed },
                None => OracleMode::Exhaustive { max_len },
            };
            run_oracle(monoid, &id, rank, mode, format, out)
        }
    }
}

fn no_dot(format: Format) -> Result<(), Failure> {
    match format {
        Format::Dot => Err(Failure::Usage("--format dot is only available for `object` and `render`".into())),
        _ => Ok(()),
    }
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("outputs serialize to JSON"))?;
    Ok(())
}

fn letter_word(s: &str) -> Result<LetterWord, Failure> {
    Ok(s.parse()?)
}

fn var_word(s: &str) -> Result<VarWord, Failure> {
    Ok(s.parse()?)
}

fn identity(s: &str) -> Result<Identity, Failure> {
    Ok(s.parse()?)
}

fn object(f: MonoidFamily, word: &str, rank: Option<u32>, format: Format, out: &mut dyn Write) -> Outcome {
    let w = letter_word(word)?;
    let obj: CanonicalObject = match rank {
        Some(r) => canonical_at_rank(f, r, &w)?,
        None => canonical(f, &w)?,
    };
    match format {
        Format::Text => write!(out, "{}", obj.to_text())?,
        Format::Json => write_json(out, &obj.to_json())?,
        Format::Dot => write!(out, "{}", obj.to_dot())?,
    }
    Ok(true)
}

fn equiv(f: MonoidFamily, lhs: &str, rhs: &str, format: Format, out: &mut dyn Write) -> Outcome {
    no_dot(format)?;
    let (u, v) = (letter_word(lhs)?, letter_word(rhs)?);
    let same = equivalent(f, &u, &v)?;
    match format {
        Format::Json => write_json(out, &json!({ "monoid": f, "lhs": u, "rhs": v, "equivalent": same }))?,
        _ => writeln!(out, "{}", if same { "EQUIVALENT" } else { "NOT EQUIVALENT" })?,
    }
    Ok(same)
}

fn joined<S: Display>(items: impl IntoIterator<Item = S>) -> String {
    items.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn word_stats<S: Symbol>(w: &Word<S>, format: Format, out: &mut dyn Write) -> Outcome
where
    Word<S>: Display,
{
    let ev = w.ev();
    match format {
        Format::Json => {
            let counts: serde_json::Map<String, serde_json::Value> =
                ev.counts().iter().map(|(s, c)| (s.to_string(), json!(c))).collect();
            write_json(
                out,
                &json!({
                    "length": w.len(),
                    "content": w.content().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "ev": counts,
                    "ip": w.ip().to_string(),
                    "fp": w.fp().to_string(),
                    "mix": w.mix().to_string(),
                    "simple": w.is_simple(),
                }),
            )?;
        }
        _ => {
            writeln!(out, "length:  {}", w.len())?;
            writeln!(out, "content: {}", joined(w.content()))?;
            writeln!(out, "ev:      {ev}")?;
            writeln!(out, "ip:      {}", w.ip())?;
            writeln!(out, "fp:      {}", w.fp())?;
            writeln!(out, "mix:     {}", w.mix())?;
            writeln!(out, "simple:  {}", w.is_simple())?;
        }
    }
    Ok(true)
}

fn stats(word: &str, format: Format, out: &mut dyn Write) -> Outcome {
    no_dot(format)?;
    // Digits are letters; anything else is read as variables.
    match word.parse::<LetterWord>() {
        Ok(w) => word_stats(&w, format, out),
        Err(_) => word_stats(&var_word(word)?, format, out),
    }
}

fn check_identity(f: MonoidFamily, id: &str, format: Format, out: &mut dyn Write) -> Outcome {
    no_dot(format)?;
    let id = identity(id)?;
    let holds = satisfies(f, &id);
    let witness = if holds { None } else { Some(find_counterexample(f, &id)?) };
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "monoid": f,
                "identity": id,
                "satisfied": holds,
                "counterexample": witness.as_ref().map(|c| &c.sub),
            }),
        )?,
        _ => match &witness {
            None => writeln!(out, "SATISFIED")?,
            Some(c) => {
                writeln!(out, "NOT SATISFIED")?;
                writeln!(out, "counterexample: {}", c.sub)?;
                writeln!(out, "  lhs -> {}", c.lhs_word)?;
                writeln!(out, "  rhs -> {}", c.rhs_word)?;
            }
        },
    }
    Ok(holds)
}

fn nf(f: MonoidFamily, word: &str, format: Format, out: &mut dyn Write) -> Outcome {
    no_dot(format)?;
    let w = var_word(word)?;
    let form = normal_form(f, &w)?;
    match format {
        Format::Json => write_json(out, &json!({ "monoid": f, "word": w, "normal_form": form }))?,
        _ => writeln!(out, "{form}")?,
    }
    Ok(true)
}

fn describe_step(system: &[Identity], s: &DerivationStep) -> String {
    let endo = s.endo.iter().map(|(v, img)| format!("{v} ↦ {img}")).collect::<Vec<_>>().join(", ");
    let arrow = match s.direction {
        identities::RuleDirection::LeftToRight => "→",
        identities::RuleDirection::RightToLeft => "←",
    };
    format!("{} ⇒ {}    [rule {} {arrow} {}; {endo}]", s.before, s.after, s.rule_index, system[s.rule_index])
}

#[allow(clippy::too_many_arguments)]
fn derive(
    monoid: Option<MonoidFamily>,
    sigma: Option<PathBuf>,
    lhs: &str,
    rhs: &str,
    max_steps: usize,
    max_len: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    no_dot(format)?;
    let (u, v) = (var_word(lhs)?, var_word(rhs)?);
    let (system, steps) = match (sigma, monoid) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let system = parse_identity_system(&text)?;
            let bounds = SearchBounds { max_steps, max_word_len: max_len.unwrap_or(u.len().max(v.len())) };
            let steps = derive_search(&system, &u, &v, bounds);
            (system, steps)
        }
        (None, Some(f)) => (identities::derivation_system(f)?, certificate(f, &u, &v)?),
        (None, None) => unreachable!("clap requires --monoid without --sigma"),
    };
    match format {
        Format::Json => write_json(
            out,
            &json!({
                "system": system,
                "found": steps.is_some(),
                "steps": steps,
            }),
        )?,
        _ => match &steps {
            None => writeln!(out, "NO DERIVATION")?,
            Some(steps) => {
                let plural = if steps.len() == 1 { "" } else { "s" };
                writeln!(out, "DERIVATION ({} step{plural})", steps.len())?;
                for s in steps {
                    writeln!(out, "{}", describe_step(&system, s))?;
                }
            }
        },
    }
    Ok(steps.is_some())
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn run_oracle(f: MonoidFamily, id: &str, rank: u32, mode: OracleMode, format: Format, out: &mut dyn Write) -> Outcome {
    no_dot(format)?;
    let id = identity(id)?;
    let verdict = oracle(f, rank, &id, &OracleConfig { mode, threads: threads_from_env() })?;
    match format {
        Format::Json => write_json(out, &verdict)?,
        _ => match &verdict {
            Verdict::HoldsWithinBound => writeln!(out, "HOLDS WITHIN BOUND")?,
            Verdict::CounterExample(c) => {
                writeln!(out, "COUNTEREXAMPLE")?;
                writeln!(out, "substitution: {}", c.sub)?;
                writeln!(out, "  lhs -> {}", c.lhs_word)?;
                writeln!(out, "  rhs -> {}", c.rhs_word)?;
            }
        },
    }
    Ok(verdict.holds())
}
