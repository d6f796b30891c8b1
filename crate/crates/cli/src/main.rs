//! Command-line front end for the `complete-ideals` library.

mod input;
mod run;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use complete_ideals::adjacency::AdjacencyError;
use complete_ideals::fiber_cone::FiberConeError;
use complete_ideals::field::FieldError;
use complete_ideals::oracle::OracleError;
use complete_ideals::{BlowUpError, GraphError, MonomialError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "complete-ideals", version, about = "Complete ideals on dual graphs and monomial models")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Compare the report byte-for-byte with this file; exit 1 on mismatch.
    #[arg(long, global = true, value_name = "PATH")]
    pub golden: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dual graphs and cycles.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Blow up a free or satellite point.
    Blowup {
        #[command(subcommand)]
        op: BlowupOp,
    },
    /// Adjacent complete ideals of an anti-nef cycle.
    Adjacency {
        #[command(subcommand)]
        op: AdjacencyOp,
    },
    /// Monomial ideals.
    Monomial {
        #[command(subcommand)]
        op: MonomialOp,
    },
    /// Fiber-cone point criterion.
    Fibercone {
        #[command(subcommand)]
        op: FiberconeOp,
    },
    /// Integral-dependence certificates.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphOp {
    /// Validate a graph and report its leading minors.
    Validate {
        #[arg(long)]
        graph: String,
    },
    /// Canonical cycle.
    K {
        #[arg(long)]
        graph: String,
    },
    /// Fundamental cycle.
    Fundamental {
        #[arg(long)]
        graph: String,
    },
    /// Colength of the complete ideal of an anti-nef cycle.
    Colength {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cycle: String,
    },
    /// Whether the graph is rational.
    Rational {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlowupOp {
    /// Blow up a free point on a curve.
    Free {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        curve: usize,
        /// Also form the adjacent cycle `pullback(Z) + E`.
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Blow up the intersection point of two curves.
    Satellite {
        #[arg(long)]
        graph: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        edge: Vec<usize>,
        #[arg(long)]
        cycle: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum AdjacencyOp {
    /// Connected components of the curves orthogonal to the cycle.
    E0 {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cycle: String,
    },
    /// All adjacent-below ideals, by type.
    Report {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        cycle: String,
    },
    /// Composition series between two nested cycles.
    Chain {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum MonomialOp {
    /// Integral closure.
    Closure {
        #[arg(long)]
        ideal: String,
    },
    /// Whether the ideal is integrally closed.
    Ic {
        #[arg(long)]
        ideal: String,
    },
    Colength {
        #[arg(long)]
        ideal: String,
    },
    /// Adjacent-below integrally closed ideals.
    Adjacent {
        #[arg(long)]
        ideal: String,
    },
    /// Composition series of integrally closed ideals.
    Chain {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Count plane monomial ideals of a colength.
    Enumerate {
        #[arg(long)]
        colength: usize,
        #[arg(long, default_value_t = complete_ideals::monomial::DEFAULT_ENUMERATION_BOUND)]
        max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FiberconeOp {
    /// Whether a point satisfies every relation.
    Check {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        point: String,
    },
    /// All points over a prime field.
    Points {
        #[arg(long)]
        presentation: String,
        #[arg(long, default_value_t = complete_ideals::fiber_cone::DEFAULT_MAX_PRIME)]
        max_prime: u64,
    },
    /// A shipped presentation.
    Builtin {
        #[arg(long)]
        name: String,
        #[arg(long)]
        param: Option<u32>,
        #[arg(long, default_value = "rationals")]
        field: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleOp {
    /// Decide whether `y` is integral over the ideal, with a certificate.
    Classify {
        #[arg(long, default_value = "5")]
        field: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 12)]
        deg_max: u32,
        #[arg(long, default_value_t = 4)]
        weight_bound: u32,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { kind: e.kind(), message: e.to_string() }
            }
        })*
    };
}

domain_errors!(GraphError, BlowUpError, AdjacencyError, MonomialError, FiberConeError, OracleError);

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        FiberConeError::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run::run(&cli.command).and_then(|report| report.render(format)) {
        Ok(out) => {
            print!("{out}");
            if let Some(path) = &cli.golden {
                match std::fs::read_to_string(path) {
                    Ok(expected) if expected == out => {}
                    Ok(_) => {
                        eprintln!("output differs from {path}");
                        return ExitCode::from(1);
                    }
                    Err(e) => {
                        eprintln!("cannot read {path}: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain { kind, message }) => {
            match format {
                Format::Text | Format::Dot => println!("error: {kind}: {message}"),
                Format::Json => {
                    let body = serde_json::json!({ "error": kind, "message": message });
                    println!("{}", serde_json::to_string_pretty(&body).expect("json value"));
                }
            }
            ExitCode::from(1)
        }
    }
}
