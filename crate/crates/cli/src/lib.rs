//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit status is 0 on success, 1 on a domain or usage error and 2 when a
//! verification (`verify`, `dl disjoint`) fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod caps;
mod commands;

pub use caps::Caps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dltk", version, about = "Braids, cells, unipotent characters and Deligne-Lusztig tables for GL_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Garside normal forms, conjugacy and roots of the full twist
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Two-sided cells of S_n as TSV, or their order as DOT
    Cells(CellsArgs),
    /// Unipotent characters of GL_n(q) as TSV
    Unipotent {
        #[arg(long)]
        rank: usize,
    },
    /// Cohomology tables and rational point counts
    #[command(subcommand)]
    Dl(DlCommand),
    /// Run the self-check suites (all of them when none is named)
    Verify { suites: Vec<String> },
}

#[derive(Debug, Subcommand)]
pub enum BraidCommand {
    /// Print the left normal form
    Nf {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        braid: String,
    },
    /// Decide conjugacy and print a witness c with braid = c other c^-1
    Conj {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        braid: String,
        #[arg(long)]
        other: String,
    },
    /// Is the braid a d-th root of pi
    RootCheck {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        braid: String,
        #[arg(long)]
        d: u32,
    },
}

#[derive(Debug, Args)]
pub struct CellsArgs {
    #[arg(long)]
    pub rank: usize,
    /// Compute cells from the Kazhdan-Lusztig preorders instead of RSK
    #[arg(long)]
    pub oracle: bool,
    /// Emit the cell order as a DOT digraph
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Subcommand)]
pub enum DlCommand {
    /// Cohomology table of X(pi^k)
    Cohomology {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        braid: String,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Count F_{q^m}-points of X(wF) for an enriched word
    Count {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        word: String,
        #[arg(short = 'q')]
        q: u32,
        #[arg(short = 'm')]
        m: u32,
        /// Worker threads; 0 picks the number of cores
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Check that no character occurs in two degrees of a table document
    Disjoint {
        #[arg(long)]
        input: PathBuf,
    },
    /// Translate a table document by a power of the full twist
    Translate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Doc,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_DOMAIN;
        }
    };
    match commands::dispatch(&cli.command, &caps, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
