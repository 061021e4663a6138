use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use twoop::error::Error;
use twoop::linalg::Field;

mod commands;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Verb {
    EnumSeq,
    ComposeSeq,
    Homology,
    Realize,
    VerifyOperad,
    VerifyContractible,
    Hochschild,
    VerifyAction,
}

/// Enumerate, compose, realize and verify the seq 2-operad and its action
/// on Hochschild complexes. Reads JSON, writes a JSON report.
#[derive(Debug, Parser)]
#[command(name = "twoop", version)]
struct Cli {
    verb: Verb,
    /// JSON input file; `-` or absent reads standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Size bound; its meaning depends on the verb.
    #[arg(long)]
    bound: Option<usize>,
    /// Q or Fp:p, overriding the field of the input.
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Single-line output instead of pretty printing.
    #[arg(long)]
    json: bool,
}

pub enum Failure {
    Lib(Error),
    Io(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Guard(_) => 3,
        Error::Shape(_) | Error::EmptyInterval(..) | Error::ColoringMismatch(_) => 4,
        Error::Truncated(_) => 5,
        Error::Invariant(_) => 1,
    }
}

fn print(v: &Value, compact: bool) {
    let s = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
    println!("{}", s.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<Value, Failure> {
        let text = match &cli.input {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
            _ => std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(e.to_string()))?,
        };
        let input: Value = serde_json::from_str(&text).map_err(Error::from)?;
        let field = cli.field.as_deref().map(Field::parse).transpose()?;
        let ctx = commands::Context { bound: cli.bound, field, seed: cli.seed };
        match cli.verb {
            Verb::EnumSeq => commands::enum_seq(&input, &ctx),
            Verb::ComposeSeq => commands::compose(&input),
            Verb::Homology => commands::homology(&input, &ctx),
            Verb::Realize => commands::realize(&input, &ctx),
            Verb::VerifyOperad => commands::verify_operad(&input, &ctx),
            Verb::VerifyContractible => commands::verify_contractible(&input, &ctx),
            Verb::Hochschild => commands::hochschild_cmd(&input, &ctx),
            Verb::VerifyAction => commands::verify_action(&input, &ctx),
        }
    };
    match run() {
        Ok(v) => {
            print(&v, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            print(&v, cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("twoop: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("twoop: {e}");
            ExitCode::from(6)
        }
    }
}
