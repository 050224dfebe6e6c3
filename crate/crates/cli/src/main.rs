use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tcg_cli::commands::Options;
use tcg_cli::model::AtlasFile;
use tcg_cli::{execute, Cmd, CliError};

/// Thin concurrent games: validate, compose and collapse strategies.
///
/// SCENARIO is a scenario file or `fixture:NAME` for a built-in example.
#[derive(Parser)]
#[command(name = "tcg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Copy bound of exponentials written without one.
    #[arg(long, global = true, default_value_t = 2, value_name = "K")]
    bound: usize,
    /// Fail (exit 1) on any failed check, including representability.
    #[arg(long, global = true)]
    strict: bool,
    /// Collapse entries above N are reported as ∞.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Representatives: `auto` (canonical when representable) or an atlas file.
    #[arg(long, global = true, default_value = "auto", value_name = "auto|FILE")]
    atlas: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    /// One `kind key=value ...` record per line.
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Check family axioms, representability and strategy axioms.
    Validate { scenario: String },
    /// Print the weighted relation of a strategy.
    Collapse { scenario: String, strategy: String },
    /// Compose two strategies and dump the result.
    Compose { scenario: String, sigma: String, tau: String },
    /// List the symmetry classes of a game.
    Classes { scenario: String, game: String },
    /// List the canonical configurations of each class of a game.
    Canonical { scenario: String, game: String },
    /// Trace the equalities behind collapse preserving composition.
    CheckTheorem { scenario: String, sigma: String, tau: String },
    /// Reproduce the claims about a built-in example.
    Repro { example: String },
    /// Execute the RUN section of a scenario.
    Run { scenario: String },
    /// Print a scenario in normal form.
    Print { scenario: String },
}

fn options(cli: &Cli) -> Result<Options, CliError> {
    let atlas = match cli.atlas.as_str() {
        "auto" => None,
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path, e)))?;
            Some(AtlasFile::parse(&text))
        }
    };
    let mut o = Options { bound: cli.bound, strict: cli.strict, atlas, kv: matches!(cli.format, Format::Kv), ..Options::default() };
    if let Some(cap) = cli.cap {
        o.cap = cap;
    }
    Ok(o)
}

fn command(c: Command) -> Cmd {
    match c {
        Command::Validate { scenario } => Cmd::Validate { source: scenario },
        Command::Collapse { scenario, strategy } => Cmd::Collapse { source: scenario, strategy },
        Command::Compose { scenario, sigma, tau } => Cmd::Compose { source: scenario, sigma, tau },
        Command::Classes { scenario, game } => Cmd::Classes { source: scenario, game },
        Command::Canonical { scenario, game } => Cmd::Canonical { source: scenario, game },
        Command::CheckTheorem { scenario, sigma, tau } => Cmd::CheckTheorem { source: scenario, sigma, tau },
        Command::Repro { example } => Cmd::Repro { example },
        Command::Run { scenario } => Cmd::Run { source: scenario },
        Command::Print { scenario } => Cmd::Print { source: scenario },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = options(&cli).and_then(|o| execute(&command(cli.cmd), &o));
    match result {
        Ok((text, status)) => {
            print!("{}", text);
            ExitCode::from(status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
