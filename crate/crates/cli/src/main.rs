mod commands;
mod input;

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dplab::discharging::RuleSet;
use dplab::dp::{DpOptions, DEFAULT_BUDGET_NODES};
use dplab::reducibility::DEFAULT_BUDGET_ORDERINGS;
use rayon::prelude::*;
use serde::Serialize;

use commands::{ChiDpConfig, DischargeConfig, Entry, ReducibleConfig, Status};
use input::{load, Format, Job};

/// Version of the `--json` report layout.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "dplab",
    version,
    about = "DP-coloring search, class membership, discharging and reducibility on plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input files (`-` reads standard input).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Input format; guessed from the header or file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Emit a versioned JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Seed for randomized verification.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add per-graph wall-clock time to the report.
    #[arg(long)]
    timing: bool,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// DP-chromatic number, with a witness cover one color below it.
    ChiDp {
        #[command(flatten)]
        common: Common,
        /// Only decide DP-k-colorability for this k.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET_NODES, value_parser = clap::value_parser!(u64).range(1..))]
        budget_nodes: u64,
        /// Search the whole graph instead of its k-core.
        #[arg(long)]
        no_reductions: bool,
    },
    /// Membership in each of the five planar graph classes.
    CheckClass {
        #[command(flatten)]
        common: Common,
    },
    /// Run a discharging rule set and audit negative charges.
    Discharge {
        #[command(flatten)]
        common: Common,
        /// One of 3678, 356, 4569, 4579, 567; defaults to the first class the graph is in.
        #[arg(long, value_parser = parse_rule_set)]
        ruleset: Option<RuleSet>,
        #[arg(long, default_value_t = DEFAULT_BUDGET_ORDERINGS, value_parser = clap::value_parser!(u64).range(1..))]
        budget_orderings: u64,
    },
    /// Search for an ordering of H meeting the extension conditions.
    FindReducible {
        #[command(flatten)]
        common: Common,
        /// Number of colors (default: the fixture's, else 3).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: Option<u64>,
        /// Vertices of H, by fixture name or id, comma or space separated.
        #[arg(long, value_delimiter = ',')]
        h: Vec<String>,
        /// A face boundary, in cyclic order; H is derived from it.
        #[arg(long, value_delimiter = ',')]
        face: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET_ORDERINGS, value_parser = clap::value_parser!(u64).range(1..))]
        budget_orderings: u64,
        /// Random covers on which to verify the extension.
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
}

fn parse_rule_set(s: &str) -> Result<RuleSet, String> {
    s.parse()
}

#[derive(Serialize)]
struct Timed<R> {
    #[serde(flatten)]
    entry: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct Document<R> {
    schema_version: u32,
    command: &'static str,
    reports: Vec<Timed<R>>,
}

fn execute<R, F>(name: &'static str, common: &Common, jobs: &[Job], f: F) -> Result<(String, Status), String>
where
    R: Serialize + Display + Send,
    F: Fn(&Job) -> (Entry<R>, Status) + Sync,
{
    let work = || -> Vec<(Timed<Entry<R>>, Status)> {
        jobs.par_iter()
            .map(|job| {
                let start = Instant::now();
                let (entry, status) = f(job);
                let elapsed_ms = common.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
                (Timed { entry, elapsed_ms }, status)
            })
            .collect()
    };
    let results = match common.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| e.to_string())?.install(work),
        None => work(),
    };
    let status = results.iter().map(|r| r.1).max().unwrap_or(Status::Ok);
    let reports: Vec<Timed<Entry<R>>> = results.into_iter().map(|r| r.0).collect();
    let text = if common.json {
        let doc = Document { schema_version: SCHEMA_VERSION, command: name, reports };
        serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n"
    } else {
        reports
            .iter()
            .map(|r| match r.elapsed_ms {
                Some(ms) => format!("{}  time: {ms:.3} ms\n", r.entry),
                None => r.entry.to_string(),
            })
            .collect()
    };
    Ok((text, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::ChiDp { common, .. }
        | Command::CheckClass { common }
        | Command::Discharge { common, .. }
        | Command::FindReducible { common, .. } => common,
    };
    let mut jobs = Vec::new();
    for path in &common.inputs {
        match load(path, common.format) {
            Ok(mut js) => jobs.append(&mut js),
            Err(e) => {
                eprintln!("dplab: {e}");
                return ExitCode::from(Status::InputError.exit_code() as u8);
            }
        }
    }
    let result = match &cli.command {
        Command::ChiDp { k, budget_nodes, no_reductions, .. } => {
            let cfg = ChiDpConfig {
                k: k.map(|k| k as usize),
                opts: DpOptions { budget_nodes: *budget_nodes, reductions: !no_reductions },
            };
            execute("chi-dp", common, &jobs, |j| commands::chi_dp(j, &cfg))
        }
        Command::CheckClass { .. } => execute("check-class", common, &jobs, commands::check_class),
        Command::Discharge { ruleset, budget_orderings, .. } => {
            let cfg = DischargeConfig { rule_set: *ruleset, budget_orderings: *budget_orderings };
            execute("discharge", common, &jobs, |j| commands::discharge(j, &cfg))
        }
        Command::FindReducible { k, h, face, budget_orderings, trials, .. } => {
            let cfg = ReducibleConfig {
                k: k.map(|k| k as usize),
                h: h.clone(),
                face: face.clone(),
                budget_orderings: *budget_orderings,
                trials: *trials,
                seed: common.seed,
            };
            execute("find-reducible", common, &jobs, |j| commands::find_reducible(j, &cfg))
        }
    };
    let (text, status) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dplab: {e}");
            return ExitCode::from(Status::InputError.exit_code() as u8);
        }
    };
    let written = match &common.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("dplab: {e}");
        return ExitCode::from(Status::InputError.exit_code() as u8);
    }
    ExitCode::from(status.exit_code() as u8)
}
