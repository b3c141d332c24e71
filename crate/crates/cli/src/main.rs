//! `homverify`: exact homomorphism counts, inequality checks, sweeps, scans
//! and the weighted counterexample search, all reporting JSON.
//!
//! Exit codes: 0 when everything holds, 1 when a report is violated or a
//! counterexample is found, 2 on usage or input errors.

mod cmd;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "homverify",
    version,
    about = "Exact homomorphism counting and inequality verification"
)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "HOMVERIFY_WORKERS")]
    workers: Option<usize>,

    /// Lift the size guards on the exact counters.
    #[arg(long, global = true)]
    override_guards: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Graph file (`.g6` is graph6, anything else an edge list), or
    /// `g6:<code>` inline.
    #[arg(long)]
    graph: String,

    /// Override the format guessed from the file extension.
    #[arg(long, value_parser = ["graph6", "g6", "edgelist", "el"])]
    format: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count homomorphisms, colorings, independent sets or Widom-Rowlinson
    /// configurations.
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        #[command(flatten)]
        input: GraphInput,
        /// Target for `hom`: a matrix file or @K<q>, @hardcore, @widom.
        #[arg(long)]
        target: Option<String>,
        /// Number of colors for `chrom`.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Chromatic polynomial coefficients, ascending.
    Poly {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Check one claim on one graph.
    Verify {
        claim: String,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        q: Option<u64>,
        /// Edge `u,v`; defaults to every applicable edge.
        #[arg(long, value_parser = input::parse_edge)]
        edge: Option<(usize, usize)>,
        /// Cycle length bound for the packing claim.
        #[arg(long, default_value_t = 4)]
        ell: usize,
        #[arg(long)]
        target: Option<String>,
    },
    /// Run a claim over every labeled graph up to `--max-n` vertices.
    Sweep {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Comma-separated color counts.
        #[arg(long, default_value = "2,3,4,5", value_delimiter = ',', value_parser = input::parse_list)]
        qs: Vec<u64>,
        #[arg(long, default_value_t = 6)]
        ell: usize,
        /// Fixed q for the free-energy claim (default 8d+1 per graph).
        #[arg(long)]
        gap_q: Option<u64>,
        /// Print only the summary record.
        #[arg(long)]
        summary_only: bool,
    },
    /// Exhaustive edge-monotonicity scan into a target.
    Scan {
        /// Target file or builtin; mutually exclusive with --all-simple.
        #[arg(long, required_unless_present = "all_simple")]
        target: Option<String>,
        /// Scan every loopless simple target on this many vertices.
        #[arg(long, conflicts_with = "target")]
        all_simple: Option<usize>,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        bipartite_only: bool,
    },
    /// Seeded search for a weighted target violating edge monotonicity.
    Search {
        /// Graph file or `g6:<code>`.
        #[arg(long = "H")]
        h: String,
        #[arg(long, value_parser = ["graph6", "g6", "edgelist", "el"])]
        format: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Write `target.txt` and `manifest.json` here when a violation is found.
        #[arg(long)]
        fixture_dir: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountKind {
    Hom,
    Chrom,
    Ind,
    Wr,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            eprintln!("homverify: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match cmd::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            let _ = std::io::stdout().flush();
            eprintln!("homverify: {e}");
            ExitCode::from(2)
        }
    }
}
