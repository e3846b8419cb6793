//! `leibniz`: checks, searches and classification for Leibniz algebras.
//!
//! Exit codes: 0 success, 1 an identity that must hold failed (a tool bug),
//! 2 input error, 3 enumeration budget exceeded.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use leibniz::algebra::DEFAULT_SEED;
use leibniz::{Budget, Error, FieldSpec};

use input::load;
use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "leibniz",
    version,
    about = "Exact computations with finite-dimensional Leibniz algebras"
)]
struct Cli {
    /// Reinterpret inputs over this field: Q, GF:p or GF(p).
    #[arg(long, global = true)]
    field: Option<FieldSpec>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,

    /// Seed for sampled checks on large algebras.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Maximum number of candidates an enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_MAX)]
    budget: u64,

    /// Omit the wall-clock timing so reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// INPUT is a builtin name (l5, ex3dim, ex5dim, heisenberg, b2) or a path to
/// an algebra, datum or dim-1 triple file.
#[derive(Subcommand, Debug)]
enum Command {
    /// Leibniz, Lie and metabelian tests, derived series and identity checks.
    Check { input: String },
    /// Spanning pairs of abelian subalgebras and the metabelian conclusion.
    Ito {
        input: String,
        /// Enumerate every subspace (finite fields only).
        #[arg(long)]
        exhaustive: bool,
        /// List every abelian pair attaining the largest dim(A + B).
        #[arg(long)]
        max_dim_pairs: bool,
        /// JSON file {"A": [[..]], "B": [[..]]} with spanning vectors of A and B.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Counts over every structure-constant table of a given size.
    Census {
        #[arg(long)]
        dim: usize,
        /// Also check every ideal inside A + B.
        #[arg(long)]
        ideal_form: bool,
        /// Lift the enumeration budget.
        #[arg(long)]
        allow_large: bool,
    },
    /// Family of an algebra with one-dimensional derived algebra.
    Classify { input: String },
    /// Isomorphism test for two algebras with one-dimensional derived algebra.
    Iso {
        a: String,
        b: String,
        /// Verify a supplied morphism file (v, u, psi) between the extracted
        /// triples instead of searching; works over Q.
        #[arg(long)]
        verify_witness: Option<String>,
    },
    /// Automorphism group of an algebra with one-dimensional derived algebra.
    Aut {
        input: String,
        /// Include every group element in the report.
        #[arg(long)]
        elements: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) => 1,
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn source(name: &str, kind: &str) -> serde_json::Value {
    serde_json::json!({ "source": name, "kind": kind })
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let budget = Budget::new(cli.budget);
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut inputs = Vec::new();
    let mut load_one = |arg: &str| {
        let loaded = load(arg, cli.field)?;
        warnings.extend(loaded.warnings.iter().cloned());
        inputs.push(source(&loaded.name, loaded.kind));
        Ok::<_, Error>(loaded)
    };
    let (name, result) = match &cli.command {
        Command::Check { input } => ("check", commands::check(&load_one(input)?, cli.seed)?),
        Command::Ito {
            input,
            exhaustive,
            max_dim_pairs,
            witness,
        } => {
            let loaded = load_one(input)?;
            let text = witness.as_deref().map(read).transpose()?;
            let r = commands::ito(
                &loaded,
                *exhaustive,
                *max_dim_pairs,
                text.as_deref(),
                budget,
            )?;
            inputs.extend(witness.iter().map(|w| source(w, "decomposition")));
            ("ito", r)
        }
        Command::Census {
            dim,
            ideal_form,
            allow_large,
        } => {
            let field = cli
                .field
                .ok_or_else(|| Error::Parse("census needs --field GF:p".into()))?;
            let budget = if *allow_large {
                Budget::new(u64::MAX)
            } else {
                budget
            };
            inputs.push(source(&format!("{field} dim {dim}"), "census"));
            (
                "census",
                commands::census(field, *dim, *ideal_form, budget)?,
            )
        }
        Command::Classify { input } => ("classify", commands::classify_cmd(&load_one(input)?)?),
        Command::Iso {
            a,
            b,
            verify_witness,
        } => {
            let (la, lb) = (load_one(a)?, load_one(b)?);
            let text = verify_witness.as_deref().map(read).transpose()?;
            let r = commands::iso(&la, &lb, text.as_deref(), budget)?;
            inputs.extend(verify_witness.iter().map(|w| source(w, "morphism")));
            ("iso", r)
        }
        Command::Aut { input, elements } => {
            ("aut", commands::aut(&load_one(input)?, *elements, budget)?)
        }
    };
    let timing_ms = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1000.0);
    Ok(Report {
        command: name,
        inputs,
        seed: cli.seed,
        timing_ms,
        warnings,
        result,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let text = match cli.report {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
