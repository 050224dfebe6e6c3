//! Command line front end: scenario files, built-in fixtures and the
//! subcommands run on them.

pub mod commands;
pub mod model;
pub mod repro;
pub mod scenario;

use commands::{Options, Out, Status};
use model::Model;
use scenario::{Ident, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{file}:{}:{}: {}", err.pos.line, err.pos.col, err.msg)]
    Parse { file: String, err: ParseError },
    /// A reference error whose file is attached by [`execute`].
    #[error("{}:{}: {}", .0.pos.line, .0.pos.col, .0.msg)]
    Build(ParseError),
    #[error("{0}")]
    Lib(tcg::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(_) => 1,
            _ => 2,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => EXIT_PASS,
            Status::CheckFailed => EXIT_FAIL,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Cmd {
    Validate { source: String },
    Collapse { source: String, strategy: String },
    Compose { source: String, sigma: String, tau: String },
    Classes { source: String, game: String },
    Canonical { source: String, game: String },
    CheckTheorem { source: String, sigma: String, tau: String },
    Repro { example: String },
    Run { source: String },
    Print { source: String },
}

const FIXTURE_PREFIX: &str = "fixture:";

fn read(source: &str) -> Result<String, CliError> {
    std::fs::read_to_string(source).map_err(|e| CliError::Io(format!("{}: {}", source, e)))
}

/// Parses a scenario file, reporting errors against `source`.
pub fn parse_file(source: &str) -> Result<scenario::Scenario, CliError> {
    let text = read(source)?;
    scenario::parse(&text).map_err(|err| CliError::Parse { file: source.into(), err })
}

/// A scenario file, or a built-in fixture written `fixture:NAME`.
pub fn load(source: &str, opts: &Options) -> Result<Model, CliError> {
    if let Some(name) = source.strip_prefix(FIXTURE_PREFIX) {
        return Model::from_fixture(name).map_err(|e| {
            CliError::Usage(format!("{}; known fixtures: {}", e, tcg::fixtures::NAMES.join(", ")))
        });
    }
    let s = parse_file(source)?;
    Model::build(&s, opts.bound).map_err(|err| CliError::Parse { file: source.into(), err })
}

fn source_of(cmd: &Cmd) -> Option<&str> {
    match cmd {
        Cmd::Validate { source }
        | Cmd::Collapse { source, .. }
        | Cmd::Compose { source, .. }
        | Cmd::Classes { source, .. }
        | Cmd::Canonical { source, .. }
        | Cmd::CheckTheorem { source, .. }
        | Cmd::Run { source }
        | Cmd::Print { source } => Some(source),
        Cmd::Repro { .. } => None,
    }
}

/// Runs one subcommand, returning its output and status.
pub fn execute(cmd: &Cmd, opts: &Options) -> Result<(String, Status), CliError> {
    let mut out = Out::new(opts.kv);
    let status = dispatch(cmd, opts, &mut out).map_err(|e| match (e, source_of(cmd)) {
        // names given on the command line have no position
        (CliError::Build(err), _) if err.pos.line == 0 => CliError::Usage(err.msg),
        (CliError::Build(err), Some(source)) => CliError::Parse { file: source.into(), err },
        (e, _) => e,
    })?;
    Ok((out.text, status))
}

fn dispatch(cmd: &Cmd, opts: &Options, out: &mut Out) -> Result<Status, CliError> {
    let arg = |s: &str| Ident::new(s);
    match cmd {
        Cmd::Repro { example } => repro::repro(example, out),
        Cmd::Print { source } => {
            if source.starts_with(FIXTURE_PREFIX) {
                return Err(CliError::Usage("fixtures have no scenario text".into()));
            }
            let s = parse_file(source)?;
            out.text.push_str(&s.to_string());
            Ok(Status::Pass)
        }
        Cmd::Validate { source } => commands::validate(&load(source, opts)?, opts, out),
        Cmd::Collapse { source, strategy } => commands::collapse(&load(source, opts)?, opts, &arg(strategy), out),
        Cmd::Compose { source, sigma, tau } => commands::compose_cmd(&load(source, opts)?, &arg(sigma), &arg(tau), out),
        Cmd::Classes { source, game } => commands::classes(&load(source, opts)?, &arg(game), out),
        Cmd::Canonical { source, game } => commands::canonical(&load(source, opts)?, opts, &arg(game), out),
        Cmd::CheckTheorem { source, sigma, tau } => {
            commands::check_theorem_cmd(&load(source, opts)?, opts, &arg(sigma), &arg(tau), out)
        }
        Cmd::Run { source } => commands::run(&load(source, opts)?, opts, out),
    }
}
