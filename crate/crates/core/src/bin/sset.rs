use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use sset_desing::desing::desingularize;
use sset_desing::error::Error;
use sset_desing::expr::{self, Bounds};
use sset_desing::iso::are_isomorphic;
use sset_desing::report::{table1, Report};
use sset_desing::sset::FiniteSimplicialSet;
use sset_desing::text::{parse_sset, parse_sset_unchecked, write_smap, write_sset};

#[derive(Parser)]
#[command(name = "sset", version, about = "Finite simplicial sets: subdivision and desingularization")]
struct Cli {
    /// Report errors as JSON objects on standard error.
    #[arg(long, global = true)]
    json: bool,

    /// Lift the default rank and subdivision-depth limits.
    #[arg(long, global = true)]
    unsafe_bounds: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an `sset v1` file and report whether it is non-singular.
    Check { file: PathBuf },
    /// Evaluate an expression and print it in `sset v1` form.
    Eval {
        expr: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two objects (files or expressions) are isomorphic.
    Iso {
        a: String,
        b: String,
        /// Write the witness isomorphism in `smap v1` form.
        #[arg(long)]
        smap: Option<PathBuf>,
    },
    /// Desingularize an object.
    Desing {
        input: String,
        /// Print the stage counts as JSON instead of the result.
        #[arg(long)]
        trace: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Counts, non-singularity and collapse iterations as JSON.
    Report { input: String },
    /// Recompute the desingularizations of subdivided sphere models.
    Table1,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct CheckJson {
    valid: bool,
    violations: Vec<String>,
    #[serde(flatten)]
    report: Report,
}

enum Failure {
    Error(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A path to an existing file is read as `sset v1`; anything else is an
/// expression.
fn load(input: &str, bounds: &Bounds) -> Result<Arc<FiniteSimplicialSet>, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        Ok(Arc::new(parse_sset(&read(path)?)?))
    } else {
        Ok(expr::build(input, bounds)?)
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let bounds = if cli.unsafe_bounds {
        Bounds::unlimited()
    } else {
        Bounds::default()
    };
    match &cli.command {
        Command::Check { file } => {
            let x = parse_sset_unchecked(&read(file)?)?;
            let violations: Vec<String> = x.validate().iter().map(|v| v.to_string()).collect();
            let valid = violations.is_empty();
            let out = CheckJson {
                valid,
                violations,
                report: Report::of(&x),
            };
            println!("{}", pretty(&out));
            Ok(if valid { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Eval { expr, output } => {
            let x = expr::build(expr, &bounds)?;
            emit(&write_sset(&x), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { a, b, smap } => {
            let (x, y) = (load(a, &bounds)?, load(b, &bounds)?);
            let report = Report::comparison(&x, &y);
            if let Some(path) = smap {
                if let Some(w) = are_isomorphic(&x, &y) {
                    emit(&write_smap(&w, a, b), Some(path))?;
                }
            }
            println!("{}", pretty(&report));
            Ok(if report.iso == Some(true) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Desing { input, trace, output } => {
            let t = desingularize(load(input, &bounds)?)?;
            if *trace {
                emit(&format!("{}\n", t.to_json()), output.as_deref())?;
            } else {
                emit(&write_sset(t.quotient()), output.as_deref())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { input } => {
            let r = Report::with_iterations(load(input, &bounds)?)?;
            println!("{}", pretty(&r));
            Ok(ExitCode::SUCCESS)
        }
        Command::Table1 => {
            let t = table1()?;
            println!("{}", pretty(&t));
            Ok(if t.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            let (kind, message) = match failure {
                Failure::Error(e) => (e.kind(), e.to_string()),
                Failure::Io(m) => ("io", m),
            };
            if cli.json {
                eprintln!("{}", serde_json::to_string(&ErrorJson { error: kind, message }).expect("serializes"));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(2)
        }
    }
}
