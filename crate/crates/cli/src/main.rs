//! Command-line front end over the game engine.

use std::io::{self, Write};

use clap::{Parser, Subcommand};
use nopq_cli::{commands, Report};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "nopq",
    version,
    about = "Three-player impartial games: classify, sum, scan, verify"
)]
struct Cli {
    /// Emit a JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized parts of `verify`.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Cap on worker threads for the wide scans. Defaults to the
    /// available parallelism; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one game expression.
    Classify {
        /// Game notation, e.g. "12" or "{1,11}".
        expr: String,
    },
    /// Add two or more games and classify the sum.
    Sum {
        #[arg(num_args = 2.., required = true)]
        exprs: Vec<String>,
    },
    /// Reduce a Nim position given as comma-separated heap sizes.
    Reduce {
        /// Heap sizes 1-9, e.g. "1,1,2,5".
        heaps: String,
    },
    /// Type of a game summed with each context in a list.
    Signature {
        expr: String,
        /// "default" for the tower contexts, or a comma-separated list.
        #[arg(long, default_value = "default")]
        contexts: String,
    },
    /// Print a type table.
    Table {
        /// One of addition, subtraction, doubling, trebling, multiple:K.
        kind: String,
        /// Birthday bound for the games feeding the table.
        #[arg(long)]
        day: Option<u32>,
    },
    /// Search for a pair of games with given types and sum type.
    Solve {
        /// A type equation such as "Q+Q=O" or "1+1=2".
        equation: String,
        #[arg(long)]
        day: Option<u32>,
    },
    /// Hunt for sums whose types the addition table rules out.
    ScanForbidden {
        #[arg(long)]
        day: Option<u32>,
        /// Widen one addend to day 4.
        #[arg(long)]
        extended: bool,
    },
    /// Try to tell two games apart by summing with battery contexts.
    Equiv {
        left: String,
        right: String,
        /// "default" or a comma-separated list of context expressions.
        #[arg(long, default_value = "default")]
        battery: String,
    },
    /// List games one move away from every type at once.
    NearInf {
        /// The type whose near-infinity games to list: P/N/O/Q or 0/1/2/∞.
        #[arg(long = "type", value_name = "TYPE")]
        game_type: String,
        #[arg(long)]
        day: Option<u32>,
    },
    /// Count the games born by a given day.
    Enumerate {
        #[arg(long)]
        day: u32,
        /// Break the count down by type.
        #[arg(long)]
        census: bool,
    },
    /// Run the built-in reproduction suite.
    Verify {
        /// Day-3 scale only (the default).
        #[arg(long)]
        quick: bool,
        /// Add the day-4 scans and the oversized round trips.
        #[arg(long, conflicts_with = "quick")]
        full: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let (name, report): (&str, Report) = match &cli.command {
        Command::Classify { expr } => ("classify", commands::classify(expr)),
        Command::Sum { exprs } => ("sum", commands::sum(exprs)),
        Command::Reduce { heaps } => ("reduce", commands::reduce(heaps)),
        Command::Signature { expr, contexts } => ("signature", commands::signature(expr, contexts)),
        Command::Table { kind, day } => ("table", commands::table(kind, *day, threads)),
        Command::Solve { equation, day } => ("solve", commands::solve(equation, *day)),
        Command::ScanForbidden { day, extended } => (
            "scan-forbidden",
            commands::scan_forbidden(*day, *extended, threads),
        ),
        Command::Equiv {
            left,
            right,
            battery,
        } => ("equiv", commands::equiv(left, right, battery)),
        Command::NearInf { game_type, day } => {
            ("near-inf", commands::near_inf(game_type, *day, threads))
        }
        Command::Enumerate { day, census } => ("enumerate", commands::enumerate_cmd(*day, *census)),
        Command::Verify { quick: _, full } => {
            ("verify", commands::verify(*full, cli.seed, threads))
        }
    };
    if cli.json {
        let doc = json!({ "command": name, "result": report.result });
        let text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        emit(&mut io::stdout(), &text, report.exit);
    } else if report.exit == 2 {
        eprintln!("{}", report.text);
    } else {
        emit(&mut io::stdout(), &report.text, report.exit);
    }
    std::process::exit(i32::from(report.exit));
}

/// Writes a line to stdout; a closed pipe (`nopq ... | head`) ends the
/// process with the report's code instead of a panic.
fn emit(out: &mut dyn Write, text: &str, exit: u8) {
    if writeln!(out, "{text}").is_err() {
        std::process::exit(i32::from(exit));
    }
}
