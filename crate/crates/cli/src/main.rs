mod bound_table;
mod commands;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "grc",
    version,
    about = "Build, verify and certify Gallai colorings"
)]
pub struct Cli {
    /// Output style: aligned table for people, `key=value` records for scripts.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,

    /// Worker threads for detectors and enumeration (default: all cores).
    #[arg(long, global = true, env = "GRC_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a catalog construction and write its certificate file.
    Construct(CatalogCommand),
    /// Run detectors on a certificate file; exit 1 if any target is found.
    Verify(VerifyArgs),
    /// Build, verify and print the lower bound a construction certifies.
    Certify(CatalogCommand),
    /// Compare conjectured, theorem and certified values.
    Bound(bound_table::BoundArgs),
    /// Check or search for a Gallai partition of a certificate's coloring.
    Partition(PartitionArgs),
    /// Exhaustive small cases and the base search.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// List the catalog constructions and their parameters.
    Catalog,
}

#[derive(Args, Debug)]
pub struct CatalogCommand {
    /// Catalog name, e.g. `fan-g4` or `kipas-even`.
    pub name: String,
    /// Construction parameters (`--k 4 --m 6`, `--with-w`), plus `--base FILE`
    /// and `--out FILE`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub rest: Vec<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Pattern to look for; repeatable. Defaults to the file's `requires` lines.
    #[arg(long = "pattern")]
    pub patterns: Vec<String>,
    /// Colors to check, e.g. `1-4` or `1,3`; defaults to every color.
    #[arg(long)]
    pub colors: Option<String>,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    pub file: PathBuf,
    /// Partition file to check: one part per line.
    #[arg(long, conflicts_with = "find", required_unless_present = "find")]
    pub verify: Option<PathBuf>,
    /// Search exhaustively (at most 12 vertices).
    #[arg(long)]
    pub find: bool,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Smallest n forcing p1 in color 1 or p2 in color 2.
    Ramsey2 {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        #[arg(long, default_value_t = 1 << 22)]
        max_colorings: u64,
    },
    /// Smallest n forcing a monochromatic pattern in every Gallai k-coloring.
    Gallai {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1 << 26)]
        max_nodes: u64,
    },
    /// Check the 13-vertex two-coloring without a monochromatic F_3.
    FanWitness,
    /// Local search for a two-colored base without a monochromatic kipas.
    Base {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Moves the global options to the front so they are not swallowed by the
/// free-form catalog flags of `construct` and `certify`.
fn hoist_global_options(args: Vec<String>) -> Vec<String> {
    let mut front = Vec::new();
    let mut rest = Vec::new();
    let mut it = args.into_iter();
    rest.extend(it.next());
    while let Some(a) = it.next() {
        if a == "--format" || a == "--threads" {
            front.push(a);
            front.extend(it.next());
        } else if a.starts_with("--format=") || a.starts_with("--threads=") {
            front.push(a);
        } else {
            rest.push(a);
        }
    }
    rest.splice(1..1, front);
    rest
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(hoist_global_options(std::env::args().collect()));
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
