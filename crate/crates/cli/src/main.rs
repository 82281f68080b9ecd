//! Batch front end: invariants, table reproduction, property suites, finite
//! oracles and dimensions.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deligne::descriptor::ObjectDescriptor;
use deligne::link::LinkSpec;
use deligne::tables::TableId;
use deligne::verify::Suite;

/// Exit statuses beyond success.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "deligne", version, about = "Link polynomials from the center of Deligne's Rep(S_t)")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(flatten)]
    pub guards: Guards,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Guards {
    /// Largest n accepted in an object descriptor.
    #[arg(long, default_value_t = 5, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_degree: u64,
    /// Largest ambient width (object width times strands) for a closure.
    #[arg(long, default_value_t = 20, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_width: u64,
    /// Largest number of label states a closure may enumerate.
    #[arg(long, default_value_t = deligne::link::DEFAULT_MAX_STATES, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_states: u64,
    /// Largest n!^p for tuple enumeration in the oracles.
    #[arg(long, default_value_t = deligne::oracle::DEFAULT_MAX_TUPLES, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_tuples: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closure invariants of objects on links.
    Invariant {
        #[arg(long = "object", required = true, value_parser = parse_object)]
        objects: Vec<ObjectDescriptor>,
        #[arg(long = "link", required = true, value_parser = parse_link)]
        links: Vec<LinkSpec>,
        /// Divide by the dimension of the object.
        #[arg(long)]
        normalize: bool,
        /// Evaluate at t = N.
        #[arg(long)]
        at: Option<i64>,
        /// Check the half-braiding of every object before evaluating.
        #[arg(long)]
        strict: bool,
    },
    /// Recompute a reference table and mark each cell.
    Table {
        #[arg(value_parser = parse_table)]
        table: TableId,
    },
    /// Run a property suite, or all of them.
    Verify {
        #[arg(value_parser = parse_suite_or_all)]
        suite: SuiteChoice,
        /// Largest degree exercised.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Links for the oracle suite; repeat to add more.
        #[arg(long = "links", value_parser = parse_link)]
        links: Vec<LinkSpec>,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Compare polynomial values at t = N with explicit finite computations.
    Oracle {
        #[arg(long = "object", required = true, value_parser = parse_object)]
        objects: Vec<ObjectDescriptor>,
        #[arg(long = "link", required = true, value_parser = parse_link)]
        links: Vec<LinkSpec>,
        /// Evaluation point N; defaults to the degree of each object.
        #[arg(long)]
        at: Option<usize>,
    },
    /// Dimension polynomials of objects.
    Dims {
        #[arg(long = "object", required = true, value_parser = parse_object)]
        objects: Vec<ObjectDescriptor>,
        #[arg(long)]
        at: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteChoice {
    One(Suite),
    All,
}

fn parse_object(s: &str) -> Result<ObjectDescriptor, String> {
    s.parse().map_err(|e: deligne::Error| e.to_string())
}

fn parse_link(s: &str) -> Result<LinkSpec, String> {
    s.parse().map_err(|e: deligne::Error| e.to_string())
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|e: deligne::Error| e.to_string())
}

fn parse_suite_or_all(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        return Ok(SuiteChoice::All);
    }
    s.parse().map(SuiteChoice::One).map_err(|e: deligne::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(if outcome.verified { 0 } else { EXIT_VERIFICATION })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &deligne::Error) -> u8 {
    use deligne::Error;
    match e {
        Error::Guard(_) => EXIT_GUARD,
        Error::Verification(_) | Error::NotDivisible => EXIT_VERIFICATION,
        _ => EXIT_USAGE,
    }
}
