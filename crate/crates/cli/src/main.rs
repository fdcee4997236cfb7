//! `mfxyz`: build, transform and verify matrix factorizations of `xyz` and
//! the loop/band data indexing them.

mod batch;
mod build;
mod check;
mod config;
mod mf;
mod output;
mod word;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{GlobalOpts, RunConfig};
use output::{CliError, CliResult, Output};

#[derive(Debug, Parser)]
#[command(
    name = "mfxyz",
    version,
    about = "Matrix factorizations of xyz and their loop/band data"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Loop and band word operations.
    #[command(subcommand)]
    Word(word::WordCmd),
    /// Build a canonical matrix, degenerate pair or band-side object.
    Build(build::BuildArgs),
    /// Run a verification suite; exit 1 if any check fails.
    #[command(subcommand)]
    Check(check::CheckCmd),
    /// Operations on explicit matrix factorizations.
    #[command(subcommand)]
    Mf(mf::MfCmd),
    /// Run newline-delimited JSON jobs and print one JSON result per line.
    Batch(batch::BatchArgs),
}

/// Runs one parsed command. `base` is the configuration inherited from an
/// enclosing batch, if any.
pub fn run(cli: &Cli, base: Option<&RunConfig>) -> CliResult<Output> {
    let cfg = cli.global.resolve(base)?;
    match &cli.cmd {
        Cmd::Word(c) => word::run(c, &cfg),
        Cmd::Build(a) => build::run(a, &cfg),
        Cmd::Check(c) => check::run(c, &cfg),
        Cmd::Mf(c) => mf::run(c, &cfg),
        Cmd::Batch(a) => {
            if base.is_some() {
                return Err(CliError::Usage("batch jobs cannot nest".into()));
            }
            batch::run(a, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    let result = run(&cli, None);
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(out) => {
            let wants_json = json || cli.global.resolve(None).map(|c| c.json()).unwrap_or(false);
            let printed = if matches!(cli.cmd, Cmd::Batch(_)) {
                out.text.clone()
            } else if wants_json {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text.clone()
            };
            let _ = stdout.write_all(printed.as_bytes());
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            let _ = writeln!(stdout, "{}", e.to_json());
            eprintln!("mfxyz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Dispatch a generic body over the coefficient field chosen in the config.
#[macro_export]
macro_rules! with_field {
    ($cfg:expr, $f:ident => $body:expr) => {
        match $cfg.realization {
            $crate::config::Realization::Exact => {
                type $f = mfxyz::Rational;
                $body
            }
            $crate::config::Realization::Gaussian => {
                type $f = mfxyz::GaussRat;
                $body
            }
            $crate::config::Realization::Numeric => {
                type $f = mfxyz::Complex64;
                $body
            }
        }
    };
}
