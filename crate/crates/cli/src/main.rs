//! `maniplex`: build, analyze, mix and cover flag graphs from the shell.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a size budget is
//! exceeded. Errors are reported on stderr as one JSON object.

mod commands;
mod run;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maniplex::constructions::DEFAULT_FLAG_BUDGET;
use maniplex::permgroup::DEFAULT_GROUP_BOUND;
use serde_json::json;

use crate::run::Run;

#[derive(Parser, Debug)]
#[command(name = "maniplex", version, about = "Abstract polytopes and maniplexes as flag graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output file (a directory for `corpus`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest flag graph a construction or cover may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_FLAG_BUDGET)]
    budget_flags: u64,

    /// Largest group the brute-force routines may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_BOUND)]
    budget_group: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a flag graph and emit its JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Orbits, groups, symmetry type graph and polytopality in one report.
    Analyze {
        input: PathBuf,
        /// Also write the symmetry type graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Mix two rooted flag graphs; the mixed graph goes to --out.
    Mix {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        root_a: usize,
        #[arg(long, default_value_t = 0)]
        root_b: usize,
        /// Compare the mixes over all pairs of orbit representatives instead.
        #[arg(long)]
        unrooted: bool,
    },
    /// With one input, its minimal regular cover; with two, whether the
    /// first (at --root-a) covers the second (at --root-b).
    Cover {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        root_a: usize,
        #[arg(long, default_value_t = 0)]
        root_b: usize,
    },
    /// Decide polytopality of a flag graph or face poset JSON.
    Polytopal { input: PathBuf },
    /// Symmetry type graph; with --root-a, the generator words at that base.
    Stg {
        input: PathBuf,
        #[arg(long)]
        root_a: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Monodromy group report.
    Mon { input: PathBuf },
    /// Write every corpus member into the --out directory.
    Corpus,
}

#[derive(Subcommand, Debug)]
pub enum BuildKind {
    Polygon { p: usize },
    /// Prism over a p-gon.
    Prism { p: usize },
    /// The map {4,4}_(b,c).
    Toroid {
        #[arg(allow_hyphen_values = true)]
        b: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
    },
    /// A stack of m cubes.
    Cubestack { m: usize },
    Trivext { input: PathBuf },
    Twopower { input: PathBuf },
    Dual { input: PathBuf },
}

pub struct Budgets {
    pub flags: u64,
    pub group: u64,
}

#[derive(Debug)]
pub struct CliError {
    kind: String,
    message: String,
    budget: bool,
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError { kind: "io".into(), message: format!("{}: {e}", path.display()), budget: false }
    }

    fn usage(message: &str) -> Self {
        CliError { kind: "usage".into(), message: message.into(), budget: false }
    }

    fn exit_code(&self) -> u8 {
        if self.budget {
            3
        } else {
            2
        }
    }
}

impl From<maniplex::Error> for CliError {
    fn from(e: maniplex::Error) -> Self {
        CliError { kind: e.kind().into(), message: e.to_string(), budget: e.is_budget() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", json!({ "error": { "kind": self.kind, "message": self.message } }))
    }
}

fn dispatch(cli: &Cli, run: &mut Run) -> Result<(), CliError> {
    let budgets = Budgets { flags: cli.budget_flags, group: cli.budget_group };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Build { kind } => commands::build(run, kind, &budgets, out),
        Command::Analyze { input, dot } => commands::analyze(run, input, dot.as_deref(), &budgets, out),
        Command::Mix { a, b, root_a, root_b, unrooted } => {
            commands::mix(run, a, b, (*root_a, *root_b), *unrooted, out)
        }
        Command::Cover { a, b, root_a, root_b } => {
            commands::cover(run, a, b.as_deref(), (*root_a, *root_b), &budgets, out)
        }
        Command::Polytopal { input } => commands::polytopal(run, input, out),
        Command::Stg { input, root_a, dot } => commands::stg(run, input, *root_a, dot.as_deref(), out),
        Command::Mon { input } => commands::mon(run, input, &budgets, out),
        Command::Corpus => commands::corpus_cmd(run, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = Run::new();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = dispatch(&cli, &mut run).and_then(|()| run.finish(argv, cli.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
