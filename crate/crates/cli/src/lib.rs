//! `gkmkit` command line: validate fixed-point data, compute genera and
//! Chern numbers, run the rigidity check, export graphs, and write catalog
//! fixtures.
//!
//! Exit codes: 0 success, 2 a check failed, 3 a precondition failed,
//! 4 I/O or parse error, 64 usage error.

mod commands;
mod dot;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "gkmkit", version, about = "Fixed-point data of torus actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every necessary-condition check and print the report
    Validate(ValidateArgs),
    /// χ_y-genus, Euler number, Todd genus and signature
    Genus(GenusArgs),
    /// Chern numbers by localization
    Chern(ChernArgs),
    /// Compare minimal torus-manifold data with the linear CP^n model
    Petrie(PetrieArgs),
    /// Print the supplied or built describing multigraph
    Graph(GraphArgs),
    /// Write a catalog fixture as canonical JSON
    Example(ExampleArgs),
}

#[derive(Args, Debug)]
struct ValidateArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GenusArgs {
    file: PathBuf,
    /// Circle to pair against, e.g. 1,2 (default: the first generic one)
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ChernArgs {
    file: PathBuf,
    /// A partition of n, e.g. 1,1,2
    #[arg(long, conflicts_with = "all")]
    partition: Option<String>,
    /// Every partition of n (the default)
    #[arg(long)]
    all: bool,
    /// generic or expanded; falls back to GKMKIT_MODE, then generic
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PetrieArgs {
    file: PathBuf,
    /// Also test equivalence after undoing the reconstructed basis
    #[arg(long)]
    up_to_gl: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args, Debug)]
struct GraphArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "dot")]
    format: GraphFormat,
    /// Ignore any edge list in the file and build one from the weights
    #[arg(long)]
    build: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExampleName {
    Cpn,
    #[value(name = "cp3-nongkm")]
    Cp3Nongkm,
    S6,
    #[value(name = "s6-blowup")]
    S6Blowup,
    #[value(name = "fano-v5")]
    FanoV5,
    #[value(name = "fano-v22")]
    FanoV22,
}

#[derive(Args, Debug)]
struct ExampleArgs {
    #[arg(value_enum)]
    name: ExampleName,
    /// Half dimension for cpn
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Basis for cpn as semicolon-separated weights, e.g. "1,0;0,1"
    #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
    basis: Option<String>,
    /// Draw a random unimodular basis for cpn from this seed
    #[arg(long)]
    seed: Option<u64>,
    /// First weight for s6 and s6-blowup
    #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
    a: String,
    /// Second weight for s6 and s6-blowup
    #[arg(long, allow_hyphen_values = true, default_value = "0,1")]
    b: String,
    /// Write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let env_mode = std::env::var("GKMKIT_MODE").ok();
    let result = match cli.command {
        Command::Validate(a) => commands::validate(&a.file, a.json, out),
        Command::Genus(a) => commands::genus(&a.file, a.xi.as_deref(), a.json, out),
        Command::Chern(a) => commands::chern(
            &a.file,
            a.partition.as_deref(),
            a.mode.as_deref().or(env_mode.as_deref()),
            a.json,
            out,
        ),
        Command::Petrie(a) => commands::petrie(&a.file, a.up_to_gl, a.json, out),
        Command::Graph(a) => commands::graph(&a.file, a.format, a.build, out),
        Command::Example(a) => commands::example(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "gkmkit: {}", failure.message);
            failure.code
        }
    }
}
