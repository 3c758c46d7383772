//! `nc-complex`: command-line front end for commuting and non-commuting
//! complexes of finite groups.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for parse, input, cap and other infrastructure errors.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CmdResult, Options};
use input::Kind;
use nc_complex::battery::CheckId;
use nc_complex::homology::Coefficients;
use nc_complex::{Exec, Limits};

#[derive(Parser)]
#[command(name = "nc-complex", version, about = "Commuting and non-commuting complexes of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group or structure summary: order, center, classes.
    Info(SpecArgs),
    /// Reduced homology of a complex built from the input.
    Homology(SpecArgs),
    /// Centralizer-class core and the blowup wedge prediction.
    Core(SpecArgs),
    /// Maximal non-commuting sets, nc_k counts and rank bounds.
    Maxsets(SpecArgs),
    /// Lexicographic shelling and the shelling inequalities.
    Shelling(SpecArgs),
    /// Run the verification battery.
    Verify(VerifyArgs),
    /// Run the battery over a range of catalog groups.
    Survey(SpecArgs),
}

/// Group spec (`A4`, `D8`, `frob:7:3:2`, `perm:...`, `file:path`), structure
/// spec (`symp:p`, `proj:symp:p`, `quot:<group>:center`, `g:<group>:<scope>`)
/// or `faces:path`. For `survey`: `catalog`, `extended`, `order<=N` or a
/// comma-separated list of group specs.
#[derive(Args)]
struct SpecArgs {
    spec: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    spec: Option<String>,
    /// Re-run the checks of a saved verify report and compare payloads.
    #[arg(long, value_name = "REPORT")]
    replay: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Which complex to build.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Prime for the p-local kinds.
    #[arg(short = 'p', value_name = "P")]
    p: Option<u64>,
    /// Coefficients: z, q or f<p>.
    #[arg(long, default_value = "z")]
    coeff: Coefficients,
    /// Highest homology degree to compute.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Cross-check against the brute-force implementations.
    #[arg(long)]
    oracle: bool,
    /// Worker threads (1 runs sequentially).
    #[arg(long)]
    jobs: Option<usize>,
    /// Maximum faces any single enumeration may produce.
    #[arg(long, default_value_t = Limits::default().face_cap)]
    face_cap: u64,
    /// Maximum maximal non-commuting sets to enumerate.
    #[arg(long, default_value_t = Limits::default().clique_cap)]
    clique_cap: u64,
    /// Comma-separated check ids for verify and survey (default: all).
    #[arg(long, value_delimiter = ',')]
    checks: Vec<CheckId>,
    /// Also report nc (info).
    #[arg(long)]
    nc: bool,
}

impl Common {
    fn options(&self, replay: Option<PathBuf>) -> Options {
        let exec = match self.jobs {
            Some(1) => Exec::Sequential,
            _ => Exec::default(),
        };
        Options {
            kind: self.kind,
            p: self.p,
            coeff: self.coeff,
            max_dim: self.max_dim,
            oracle: self.oracle,
            nc: self.nc,
            checks: self.checks.clone(),
            replay,
            limits: Limits {
                face_cap: self.face_cap,
                clique_cap: self.clique_cap,
                exec,
            },
        }
    }
}

fn configure_threads(jobs: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs.filter(|&n| n > 1) {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, result): (&Common, CmdResult) = match &cli.command {
        Command::Verify(a) => {
            configure_threads(a.common.jobs);
            (&a.common, commands::verify(a.spec.as_deref(), &a.common.options(a.replay.clone())))
        }
        Command::Info(a) | Command::Homology(a) | Command::Core(a) | Command::Maxsets(a) | Command::Shelling(a) | Command::Survey(a) => {
            configure_threads(a.common.jobs);
            let opts = a.common.options(None);
            let run = match &cli.command {
                Command::Info(_) => commands::info,
                Command::Homology(_) => commands::homology,
                Command::Core(_) => commands::core,
                Command::Maxsets(_) => commands::maxsets,
                Command::Shelling(_) => commands::shelling,
                _ => commands::survey,
            };
            (&a.common, run(&a.spec, &opts))
        }
    };
    match result {
        Ok(outcome) => {
            let text = if common.json {
                serde_json::to_string_pretty(&outcome.report).expect("report is serializable") + "\n"
            } else {
                outcome.text
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if let Some(path) = &common.out {
                if let Err(e) = outcome.report.write(path) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if outcome.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
