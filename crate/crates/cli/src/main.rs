//! `minmod`: verification runs over minimal-model modular data.
//!
//! Exit status: 0 all checks pass, 1 usage or domain error, 2 a check
//! failed, 3 the answer is partial because a resource bound was hit.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minmod::extensions::Family;
use minmod::invariants::CatalogRow;
use minmod::report::Report;
use minmod::Error;

use config::{Config, Format};

#[derive(Parser)]
#[command(name = "minmod", version, about = "Exact checks on Virasoro minimal-model modular data")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Truncation order for q-series.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Bound on the effective-vacuum entry for classification.
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Ball precision in bits for certified sign checks.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// File of `key = value` lines overriding the defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Central charge, effective central charge and the module list.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Exact S and T matrices and the modular relations.
    Smatrix { p: u32, q: u32 },
    /// Character of the module (r,s).
    Char { p: u32, q: u32, r: u32, s: u32 },
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Fusion targets of (r1,s1) x (r2,s2).
    Fusion { p: u32, q: u32, r1: u32, s1: u32, r2: u32, s2: u32 },
    #[command(subcommand)]
    Branching(BranchingCmd),
    #[command(subcommand)]
    Extension(ExtensionCmd),
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum ModelCmd {
    Info { p: u32, q: u32 },
}

#[derive(Subcommand)]
enum InvariantCmd {
    /// Build a catalog row and check it.
    Verify {
        #[arg(long)]
        row: CatalogRow,
        p: u32,
        q: u32,
        /// For E7 rows, read the cross term's label as a function argument.
        #[arg(long)]
        literal: bool,
    },
    /// Enumerate all invariants up to `--cap`.
    Classify {
        p: u32,
        q: u32,
        /// Stop after this many candidates; the result is then partial.
        #[arg(long, default_value_t = minmod::invariants::DEFAULT_CANDIDATE_LIMIT)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum BranchingCmd {
    /// Cross-ratio identity for every label pair of (pprime, p).
    Verify { p: u32, pprime: u32 },
}

#[derive(Subcommand)]
enum ExtensionCmd {
    /// Weights, character and invariant of one family member.
    Check {
        #[arg(long)]
        family: Family,
        /// The free model parameter, e.g. 11 for (12,11).
        #[arg(long)]
        param: u32,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Every acceptance criterion.
    Regression,
}

fn config_of(g: &Global) -> Result<Config, String> {
    let mut c = Config::default();
    if let Some(path) = &g.config {
        c.load(path)?;
    }
    if let Some(v) = g.order {
        c.order = v;
    }
    if let Some(v) = g.cap {
        c.cap = v;
    }
    if let Some(v) = g.precision {
        c.precision = v;
    }
    if let Some(v) = g.format {
        c.format = v;
    }
    Ok(c)
}

fn dispatch(cfg: &Config, cmd: Cmd) -> minmod::Result<commands::Outcome> {
    match cmd {
        Cmd::Model(ModelCmd::Info { p, q }) => commands::model_info(cfg, p, q),
        Cmd::Smatrix { p, q } => commands::smatrix(cfg, p, q),
        Cmd::Char { p, q, r, s } => commands::char_(cfg, p, q, r, s),
        Cmd::Invariant(InvariantCmd::Verify { row, p, q, literal }) => commands::invariant_verify(cfg, row, p, q, literal),
        Cmd::Invariant(InvariantCmd::Classify { p, q, limit }) => commands::invariant_classify(cfg, p, q, limit),
        Cmd::Fusion { p, q, r1, s1, r2, s2 } => commands::fusion(cfg, p, q, (r1, s1), (r2, s2)),
        Cmd::Branching(BranchingCmd::Verify { p, pprime }) => commands::branching(cfg, p, pprime),
        Cmd::Extension(ExtensionCmd::Check { family, param }) => commands::extension(cfg, family, param),
        Cmd::Suite(SuiteCmd::Regression) => commands::suite(cfg),
    }
}

fn print_text(rep: &Report) {
    match rep.model {
        Some(m) => println!("{} ({},{})", rep.command, m.p, m.q),
        None => println!("{}", rep.command),
    }
    for c in &rep.checks {
        println!("  {} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if !rep.data.is_null() {
        println!("data: {}", serde_json::to_string_pretty(&rep.data).expect("json"));
    }
    let passed = rep.checks.iter().filter(|c| c.pass).count();
    println!("result: {} ({passed}/{} checks)", if rep.pass() { "PASS" } else { "FAIL" }, rep.checks.len());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = match config_of(&cli.global) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let (rep, truncated) = match dispatch(&cfg, cli.cmd) {
        Ok(out) => out,
        Err(e @ Error::Assertion(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes")),
        Format::Text => print_text(&rep),
    }
    if !rep.pass() {
        ExitCode::from(2)
    } else if truncated {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
