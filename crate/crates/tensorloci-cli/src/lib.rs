//! Command-line front end: JSON tensors in, JSON reports out.
//!
//! Exit status is 0 on success, 1 when input cannot be read or parsed, and 2
//! when the library rejects well-formed input. Errors are printed as JSON
//! objects with a stable `code` field.

pub mod document;
pub mod error;
pub mod selftest;

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tensorloci::classify::{classify, OrbitId};
use tensorloci::exactnum::format_rational;
use tensorloci::game::{game_play_greedy_seeded, GameState, DEFAULT_SEED};
use tensorloci::locus::{closed_form_predicate, locus_membership, LambdaWitness, LocusVerdict, Strategy};
use tensorloci::normal_forms::normal_form;
use tensorloci::tensorcore::{RankOneTensor, Tensor};
use tensorloci::wstate::decompose_tangential;
use tensorloci::Q;

pub use document::{parse_rank_one, parse_tensor, serialize_tensor};
pub use error::CliError;

/// Environment variable overriding the default game seed.
pub const SEED_VAR: &str = "TENSORLOCI_SEED";

#[derive(Parser, Debug)]
#[command(name = "tensorloci", about = "Orbits, decomposition loci and minimal decompositions of small tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit, rank and border rank.
    Classify { file: String },
    /// Whether a rank-one tensor appears in some minimal decomposition.
    Locus {
        file: String,
        #[arg(long = "rank-one")]
        rank_one: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Specialized)]
        strategy: StrategyArg,
    },
    /// Minimal decomposition of a tangential tensor through a rank-one tensor.
    Decompose {
        file: String,
        #[arg(long)]
        through: String,
    },
    /// Plays the tensor game to the end and prints the transcript.
    Game {
        file: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Consistency checks on the table normal forms.
    Selftest {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=26))]
        orbit: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Generic,
    Specialized,
    ClosedForm,
}

fn read(path: &str) -> Result<Vec<u8>, CliError> {
    std::fs::read(Path::new(path)).map_err(|e| CliError::Io { path: path.to_string(), message: e.to_string() })
}

fn orbit_json(o: OrbitId) -> (Value, &'static str) {
    match o {
        OrbitId::Orbit(n) => (json!(n), "table"),
        OrbitId::MatrixRank(_) => (Value::Null, "matrix"),
        OrbitId::Tangential(_) => (Value::Null, "tangential"),
    }
}

fn classify_json(t: &Tensor<Q>) -> Result<Value, CliError> {
    let c = classify(t)?;
    let (orbit, family) = orbit_json(c.orbit);
    Ok(json!({
        "orbit": orbit,
        "family": family,
        "rank": c.rank,
        "border_rank": c.border_rank,
        "concise_shape": c.concise_shape,
        "permutation": c.permutation,
        "matrix_case": c.matrix_case,
    }))
}

pub fn verdict_json(v: &LocusVerdict) -> Value {
    match &v.witness {
        None => json!({ "status": "forbidden" }),
        Some(LambdaWitness::Value(x)) => json!({ "status": "in_decomposition", "lambda": format_rational(x) }),
        Some(LambdaWitness::MinimalPoly(f)) => {
            let coeffs: Vec<String> = (0..=f.degree().unwrap_or(0)).map(|i| format_rational(&f.coeff(i))).collect();
            json!({
                "status": "in_decomposition",
                "minimal_polynomial": { "coefficients": coeffs, "text": f.to_string() },
            })
        }
    }
}

fn locus_json(t: &Tensor<Q>, p: &RankOneTensor<Q>, strategy: StrategyArg) -> Result<Value, CliError> {
    let mut out = match strategy {
        StrategyArg::Generic => verdict_json(&locus_membership(t, p, Strategy::Generic)?),
        StrategyArg::Specialized => verdict_json(&locus_membership(t, p, Strategy::Specialized)?),
        StrategyArg::ClosedForm => {
            let orbit = classify(t)?.orbit;
            let n = match orbit {
                OrbitId::Orbit(n) if normal_form(n) == *t => n,
                _ => return Err(CliError::NotNormalForm(orbit.to_string())),
            };
            let forbidden = closed_form_predicate(orbit, p)?;
            json!({ "status": if forbidden { "forbidden" } else { "in_decomposition" }, "orbit": n })
        }
    };
    out["strategy"] = json!(match strategy {
        StrategyArg::Generic => "generic",
        StrategyArg::Specialized => "specialized",
        StrategyArg::ClosedForm => "closed-form",
    });
    Ok(out)
}

fn decompose_json(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<Value, CliError> {
    let d = decompose_tangential(t, p)?;
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|(c, r)| json!({ "coefficient": format_rational(c), "factors": document::factors_json(r) }))
        .collect();
    Ok(json!({ "length": d.len(), "terms": terms }))
}

pub fn transcript_json(s: &GameState, seed: u64) -> Value {
    let moves: Vec<Value> = s
        .moves
        .iter()
        .map(|m| json!({ "lambda": format_rational(&m.lambda), "factors": document::factors_json(&m.term) }))
        .collect();
    json!({ "seed": seed, "initial_rank": s.initial_rank, "final_rank": s.rank(), "moves": moves })
}

fn default_seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn execute(cmd: Command) -> Result<(i32, Value), CliError> {
    match cmd {
        Command::Classify { file } => Ok((0, classify_json(&parse_tensor(&read(&file)?)?)?)),
        Command::Locus { file, rank_one, strategy } => {
            let t = parse_tensor(&read(&file)?)?;
            let p = parse_rank_one(&read(&rank_one)?)?;
            Ok((0, locus_json(&t, &p, strategy)?))
        }
        Command::Decompose { file, through } => {
            let t = parse_tensor(&read(&file)?)?;
            let p = parse_rank_one(&read(&through)?)?;
            Ok((0, decompose_json(&t, &p)?))
        }
        Command::Game { file, seed } => {
            let t = parse_tensor(&read(&file)?)?;
            let seed = match seed {
                Some(s) => s,
                None => default_seed()?,
            };
            let s = game_play_greedy_seeded(&t, seed)?;
            Ok((0, transcript_json(&s, seed)))
        }
        Command::Selftest { orbit } => {
            let orbits: Vec<u8> = orbit.map_or_else(|| (1..=26).collect(), |n| vec![n]);
            let (pass, report) = selftest::run(&orbits);
            Ok((if pass { 0 } else { 2 }, report))
        }
    }
}

/// Runs one command line (program name first). Returns the exit status and
/// the text for stdout.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let result = match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli.command),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                return (0, e.to_string());
            }
            _ => Err(CliError::Usage(e.to_string().trim_end().to_string())),
        },
    };
    match result {
        Ok((status, v)) => (status, format!("{v}\n")),
        Err(e) => (e.exit_code(), format!("{}\n", e.to_json())),
    }
}
