//! `analogic`: run analogy sessions and representation sweeps from the shell.
//!
//! Exit status: 0 on success, 1 when a command reports a failure (a sweep
//! violation or a rejected score), 2 on unreadable or invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use analogic::repcheck::{RelationClass, SweepMode};
use analogic::session::{parse_session, run, run_repcheck, Command, Output};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "analogic",
    version,
    about = "Analogical reasoning over finite domains"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a session file.
    Check { file: PathBuf },
    /// Positive, negative and open support of each analogy.
    Classify { file: PathBuf },
    /// Paired positive, negative and plausible analogies.
    Report { file: PathBuf },
    /// Preference edges and the best analogies.
    Best { file: PathBuf },
    /// Skeptical verdicts for the session's queries.
    Entail { file: PathBuf },
    /// Straight-rule baseline score of each analogy.
    Score { file: PathBuf },
    /// Exhaustive check of choice-function properties.
    Repcheck {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ClassArg::All)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Soundness)]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Smooth,
    Ranked,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Soundness,
    Completeness,
}

fn session_command(file: &PathBuf, command: Command) -> Result<Output, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let session = parse_session(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    Ok(run(&session, command))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Check { file } => session_command(file, Command::Check),
        Cmd::Classify { file } => session_command(file, Command::Classify),
        Cmd::Report { file } => session_command(file, Command::Report),
        Cmd::Best { file } => session_command(file, Command::Best),
        Cmd::Entail { file } => session_command(file, Command::Entail),
        Cmd::Score { file } => session_command(file, Command::Score),
        Cmd::Repcheck { n, class, mode } => {
            let class = match class {
                ClassArg::All => RelationClass::All,
                ClassArg::Smooth => RelationClass::TransitiveSmooth,
                ClassArg::Ranked => RelationClass::Ranked,
            };
            let mode = match mode {
                ModeArg::Soundness => SweepMode::Soundness,
                ModeArg::Completeness => SweepMode::Completeness,
            };
            run_repcheck(mode, *n, class).map_err(|e| e.to_string())
        }
    };
    match result {
        Ok(out) => {
            print!("{}", if cli.json { &out.json } else { &out.text });
            if out.ok {
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
