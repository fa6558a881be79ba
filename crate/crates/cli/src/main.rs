use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

use report::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "gstab",
    version,
    about = "Trace of the canonical module of stable set rings"
)]
struct Cli {
    /// Spaces of indentation in the JSON report; 0 prints a single line.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,

    /// Append wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyse a graph file.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
    /// Analyse a poset file through its comparability graph.
    Poset {
        #[command(subcommand)]
        action: PosetAction,
    },
    /// Build one of the explicit families.
    Family {
        #[command(subcommand)]
        family: FamilyKind,
    },
    /// Numerical semigroup invariants: gaps, pseudo-Frobenius set, type, residue.
    Numsgp(NumsgpArgs),
    /// Compare criterion and oracle over every graph up to a vertex count.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Subcommand, Debug)]
enum GraphAction {
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Vertex limit for the perfection and face searches.
        #[arg(long)]
        max_n: Option<usize>,
        /// Acknowledge a --max-n above the default guards.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand, Debug)]
enum PosetAction {
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyKind {
    /// Poset family with prescribed trace height `a` and dimension `b`.
    Hmp {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct OracleArgs {
    /// Run the lattice-point oracle alongside the criterion.
    #[arg(long)]
    oracle: bool,
    /// Number of degrees scanned by generator searches.
    #[arg(long)]
    degree_bound: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true))]
struct NumsgpArgs {
    /// Comma-separated generators, e.g. 3,4,5.
    #[arg(long, value_delimiter = ',', group = "source")]
    gens: Option<Vec<u64>>,
    /// Family parameters `A B` (type A, residue B).
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "source")]
    family: Option<Vec<u64>>,
}

fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let env_limit = report::env_size_limit()?;
    let out = match &cli.command {
        Command::Graph {
            action:
                GraphAction::Analyze {
                    file,
                    oracle,
                    max_n,
                    allow_large,
                },
        } => {
            let limits = report::limits_with_override(env_limit, *max_n, *allow_large)?;
            commands::graph_analyze(file, oracle.oracle, oracle.degree_bound, &limits)?
        }
        Command::Poset {
            action: PosetAction::Analyze { file, oracle },
        } => {
            let limits = report::limits_with_override(env_limit, None, false)?;
            commands::poset_analyze(file, oracle.oracle, oracle.degree_bound, &limits)?
        }
        Command::Family {
            family: FamilyKind::Hmp { a, b, oracle },
        } => {
            let limits = report::limits_with_override(env_limit, None, false)?;
            commands::family_hmp(*a, *b, oracle.oracle, oracle.degree_bound, &limits)?
        }
        Command::Numsgp(args) => match (&args.gens, &args.family) {
            (Some(gens), None) => commands::numsgp_gens(gens)?,
            (None, Some(ab)) => commands::numsgp_family(ab[0], ab[1])?,
            _ => unreachable!("clap enforces exactly one source"),
        },
        Command::Verify { max_n, oracle } => {
            let limits = report::limits_with_override(env_limit, None, false)?;
            commands::verify(*max_n, oracle.degree_bound, &limits)?
        }
    };
    let ok = out.ok;
    Ok((out.render(cli.json_indent, cli.timings)?, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(report::EXIT_INPUT);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(report::EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("gstab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
