//! Command dispatch for `resolvent-kit`. Every command produces a JSON
//! report, a text summary carrying the same numbers, and a verdict.

mod input;
mod report;
mod text;

use std::path::PathBuf;

use resolvent_core::window::TruncationWindow;
use resolvent_core::Error;

pub use input::{load_input, Input};
pub use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Nerve,
    Resolve,
    Check,
    Tangent,
    Deform,
    Cotangent,
    Morphism,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Nerve => "nerve",
            Command::Resolve => "resolve",
            Command::Check => "check",
            Command::Tangent => "tangent",
            Command::Deform => "deform",
            Command::Cotangent => "cotangent",
            Command::Morphism => "morphism",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// One invocation: command, input file and window parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    /// weight bound `D`; commands that only inspect the input ignore it
    pub weight: u32,
    pub margin: u32,
    /// lowest degree resolved and checked
    pub depth: i32,
    /// degree range for cohomology
    pub range: (i32, i32),
    /// truncation order for `deform`
    pub order: u32,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>, weight: u32) -> RunConfig {
        RunConfig {
            command,
            input: input.into(),
            weight,
            margin: 2,
            depth: -2,
            range: (0, 2),
            order: 3,
            out: None,
            format: Format::Json,
        }
    }

    /// Window used to build and check resolvents: degrees `depth..=0`.
    pub fn resolve_window(&self) -> Result<TruncationWindow, Error> {
        TruncationWindow::new(self.weight, self.margin, self.depth, 0)
    }

    /// Window used for cohomology over `range`.
    pub fn range_window(&self) -> Result<TruncationWindow, Error> {
        TruncationWindow::new(self.weight, self.margin, self.range.0, self.range.1)
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit status for an error: bad input and bad windows are usage errors,
/// anything else is a mathematical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidWindow(_) | Error::WindowTooSmall { .. } | Error::Syntax { .. } | Error::Semantic { .. } | Error::Io(_) => {
            EXIT_USAGE
        }
        _ => EXIT_FAIL,
    }
}

/// Reads the input and runs the command.
pub fn run(config: &RunConfig) -> Result<Report, Error> {
    let text = std::fs::read_to_string(&config.input)?;
    let input = load_input(&text)?;
    report::dispatch(config, input)
}

/// Parses `a:b` into a degree range.
pub fn parse_range(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, found `{s}`"))?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad lower degree `{a}`"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad upper degree `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Installs the global thread pool from `RESOLVENT_KIT_THREADS`; `0` means
/// serial. Unset leaves rayon's default.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RESOLVENT_KIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("RESOLVENT_KIT_THREADS must be a number, found `{v}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| e.to_string())
}
