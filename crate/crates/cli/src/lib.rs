//! Command-line front end: builds Yang-Baxter complexes of finite
//! biquandles, computes their (co)homology, checks the structural results for
//! cyclic biquandles and exports matrices and cocycles.
//!
//! Every flag can also be set through an environment variable named
//! `YBHOM_<FLAG>`, e.g. `YBHOM_THREADS=4`.

mod commands;
pub mod config;
pub mod fault;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use ybhom::homology::Coefficients;

use config::{DegreeRange, Format, VariantSel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ybhom", version, about = "Set-theoretic Yang-Baxter homology of finite biquandles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, env = "YBHOM_FORMAT", default_value = "plain")]
    pub format: Format,

    /// Worker threads for cell-level parallelism (0 = all cores).
    #[arg(long, global = true, env = "YBHOM_THREADS", default_value_t = 0)]
    pub threads: usize,

    /// Largest number of chain generators any requested computation may touch.
    #[arg(long, global = true, env = "YBHOM_BUDGET_ENTRIES", default_value_t = 100_000)]
    pub budget_entries: usize,

    /// Wall-clock limit for a single elimination, in seconds.
    #[arg(long, global = true, env = "YBHOM_MAX_SECONDS")]
    pub max_seconds: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the biquandle axioms and property (I) of an operator.
    Axioms {
        /// `cyclic:<m>`, `alexander:<m>:<s>:<t>` or a JSON table file.
        spec: String,
    },
    /// Compute homology (or cohomology) groups.
    Homology {
        spec: String,
        #[arg(long, env = "YBHOM_N", default_value = "1..5")]
        n: DegreeRange,
        #[arg(long, env = "YBHOM_VARIANT", default_value = "all")]
        variant: VariantSel,
        #[arg(long, env = "YBHOM_COEFF", default_value = "z")]
        coeff: Coefficients,
        /// Compute cohomology from the transposed boundaries instead.
        #[arg(long)]
        cohomology: bool,
    },
    /// Recompute the reference table for C_2..C_5 and diff it.
    Table {
        /// Restrict to some sizes, e.g. `C_3` or `2,4`.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long, hide = true, env = "YBHOM_INJECT_FAULT")]
        inject_fault: bool,
    },
    /// Check a structural result cell by cell.
    Verify {
        #[arg(value_enum)]
        check: Check,
        spec: String,
        #[arg(long, env = "YBHOM_N", default_value = "1..5")]
        n: DegreeRange,
    },
    /// Write boundary matrices in SMS format.
    Export {
        spec: String,
        #[arg(long, env = "YBHOM_N")]
        n: DegreeRange,
        #[arg(long, env = "YBHOM_VARIANT", default_value = "yb")]
        variant: VariantSel,
        /// Output directory.
        #[arg(long, env = "YBHOM_EXPORT")]
        export: PathBuf,
    },
    /// Dump the orbit-sum cocycles of the cyclic biquandle C_m.
    Cocycles {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Write one JSON file per cocycle instead of printing records.
        #[arg(long, env = "YBHOM_EXPORT")]
        export: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Betti,
    Torsion,
    Conjecture,
    Splitting,
    Equivariance,
    PropertyI,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
