mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ctxkit::report::ReportDocument;
use ctxkit::Tolerances;

use commands::{cmd_avn, cmd_graph, cmd_inequality, cmd_selftest, IneqArgs, IneqName};

#[derive(Parser)]
#[command(name = "ctxkit", version, about = "Contextuality witnesses, graph invariants and parity proofs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include per-stage wall times in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Independence number, Lovász theta, bases and KS verdict of a ray set or graph.
    Graph {
        /// Ray file, graph file, or builtin name (cabello18, yu_oh13, kcbs5, c5, k4, icosa, icosa16).
        input: String,
        /// Duality-gap tolerance for theta.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate an inequality on a state.
    Ineq {
        #[arg(value_enum)]
        name: IneqName,
        /// Builtin tag (mixed, xi, phi+, maxent3x3, magicopt) or state file.
        #[arg(long, default_value = "mixed")]
        state: String,
        /// AVN system for `avn` (builtin name or file).
        #[arg(long)]
        system: Option<String>,
        /// Ray set for `csw` (builtin name or file).
        #[arg(long)]
        rays: Option<String>,
    },
    /// Parity analysis of an all-versus-nothing system.
    Avn {
        /// AVN file or builtin name (cabello01, phip_huang03, peres_mermin, bell_control).
        input: String,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn emit(doc: &ReportDocument, format: Format) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Text => print!("{}", doc.to_text()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tols = match Tolerances::from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: CTXKIT_TOL: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Graph { input, tol } => cmd_graph(input, *tol, &tols).map(|d| (d, true)),
        Command::Ineq {
            name,
            state,
            system,
            rays,
        } => cmd_inequality(
            &IneqArgs {
                name: *name,
                state,
                system: system.as_deref(),
                rays: rays.as_deref(),
            },
            &tols,
        )
        .map(|d| (d, true)),
        Command::Avn { input } => cmd_avn(input).map(|d| (d, true)),
        Command::Selftest { seed } => cmd_selftest(*seed, cli.timings),
    };
    match outcome {
        Ok((mut doc, ok)) => {
            if !cli.timings {
                doc.timings = None;
            }
            emit(&doc, cli.format);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
