//! Command-line front end: JSON documents, the fixture catalog and report
//! generation.

pub mod catalog;
pub mod commands;
pub mod doc;
pub mod error;
pub mod report;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fixtrace::grouprings::DEFAULT_DEPTH;

pub use commands::TheoremChoice;
pub use error::{CliError, CliResult};
pub use report::{Report, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "fixtrace",
    version,
    about = "Exact fixed-point invariants of simplicial maps and bundle pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Lefschetz,
    Reidemeister,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers and torsion of a complex document.
    Homology {
        /// Input file, `-` for standard input.
        input: PathBuf,
    },
    /// Lefschetz number of a self-map, on chains and on homology.
    Lefschetz { input: PathBuf },
    /// Reidemeister trace, Nielsen number and the augmentation check.
    Reidemeister {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Verify the fiberwise product formulas on a pair document.
    BundleVerify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremArg::Both)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// List or emit catalog fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    /// Print the document of a fixture, e.g. `circle(5)` or
    /// `torus_linear([[2,1],[1,1]])`.
    Emit {
        name: String,
    },
}

/// Exit code and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &PathBuf) -> CliResult<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("reading standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn report_output(r: CliResult<Report>) -> Output {
    match r {
        Ok(r) => Output {
            code: r.exit_code(),
            stdout: doc::render(&r),
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Homology { input } => report_output(read(&input).and_then(|s| commands::homology(&s))),
        Command::Lefschetz { input } => report_output(read(&input).and_then(|s| commands::lefschetz(&s))),
        Command::Reidemeister { input, depth } => {
            report_output(read(&input).and_then(|s| commands::reidemeister(&s, depth)))
        }
        Command::BundleVerify { input, theorem, depth } => {
            let t = match theorem {
                TheoremArg::Lefschetz => TheoremChoice::Lefschetz,
                TheoremArg::Reidemeister => TheoremChoice::Reidemeister,
                TheoremArg::Both => TheoremChoice::Both,
            };
            report_output(read(&input).and_then(|s| commands::bundle_verify(&s, t, depth)))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => Output {
            code: 0,
            stdout: catalog::listing(),
            stderr: String::new(),
        },
        Command::Catalog {
            action: CatalogAction::Emit { name },
        } => match catalog::emit(&name) {
            Ok(f) => Output {
                code: 0,
                stdout: doc::render(&f),
                stderr: String::new(),
            },
            Err(e) => Output {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        },
    }
}
