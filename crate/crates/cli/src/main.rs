//! Command-line driver. Every subcommand writes a line-oriented report and
//! exits 0 when all hard checks pass, 1 when one fails and 2 on malformed
//! input.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lefgroups::marked::DEFAULT_CAP;
use lefgroups::spectral::DEFAULT_VERTEX_CAP;

#[derive(Parser, Debug)]
#[command(name = "lefgroups", version, about = "Finite-level verifications for marked groups over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step; recorded in the report.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Two,
    Nine,
    Heart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Projective,
    Vectors,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Right,
    Left,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Elementary-matrix identities over several entry rings.
    VerifyIdentities {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Builds every level of a chain file and runs all checks.
    RunChain {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 2)]
        rmax_two: usize,
        #[arg(long, default_value_t = 1)]
        rmax_nine: usize,
        /// `all`, `skip`, or the number of target words to evaluate.
        #[arg(long, default_value = "16")]
        certificate: String,
    },
    /// Agreement radii: cyclic groups and the two-marking family against
    /// its limit model.
    Agreement {
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Sizes N of the two-marking family.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Orders of two cyclic groups marked by 1.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        cyclic: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Surjectivity of every level and the density verdict of both
    /// families of a chain file.
    Density {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value = "16")]
        certificate: String,
    },
    /// Heart images of the six-marking of Sym(L) built from Z/L marked by 1.
    Irreducible {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Wreath-product markings over one level of a chain file.
    Wreath {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = 20)]
        k: u32,
        #[arg(long, default_value_t = 9)]
        pairs: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Right)]
        convention: ConventionArg,
    },
    /// Empirical spectral gaps of Schreier graphs.
    Spectral {
        /// Chain file whose levels supply both families.
        file: Option<PathBuf>,
        /// Sizes N of the two-marking family, used without a chain file.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Adds the nine-marking of Sym(6) built from Z/6 marked by
        /// (3, 3, 1) at n = 3.
        #[arg(long)]
        contrast: bool,
        #[arg(long, value_enum, default_value_t = ActionArg::Projective)]
        action: ActionArg,
        #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
    /// Writes the matrices of one marking of a level to a text file.
    Export {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, value_enum, default_value_t = Family::Nine)]
        what: Family,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match commands::dispatch(&cli) {
        Ok(o) => o,
        Err(commands::CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &outcome.failures {
            eprintln!("failed: {f}");
        }
        ExitCode::from(1)
    }
}
