use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use resolvent_kit::{configure_threads, exit_code, parse_range, run, Command, Format, RunConfig, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "resolvent-kit", version, about = "Resolvents, tangent cohomology and deformations of schemes")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// scheme, resolvent or morphism description (JSON)
    input: PathBuf,
    /// extra weight for boundaries and ideal membership
    #[arg(long, default_value_t = 2)]
    margin: u32,
    /// write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct Window {
    /// weight bound D
    #[arg(long)]
    weight: u32,
    /// lowest degree to resolve and check
    #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
    depth: i32,
    /// cohomological degrees a:b
    #[arg(long, default_value = "0:2", value_parser = parse_range, allow_hyphen_values = true)]
    range: (i32, i32),
}

#[derive(Subcommand)]
enum Sub {
    /// Validate a chart diagram or morphism description
    Validate(Common),
    /// Print the nerve of the cover
    Nerve(Common),
    /// Build a resolvent of the chart diagram
    Resolve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
    },
    /// Verify a resolvent within the window
    Check {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
    },
    /// Windowed tangent cohomology
    Tangent {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
    },
    /// First-order deformations and obstructions
    Deform {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
        /// extend first-order directions over K[t]/(t^(n+1))
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
    /// Cotangent complex: quasi-coherence and the comparison with Der(R, R)
    Cotangent {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
    },
    /// Deformations of a morphism
    Morphism {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        window: Window,
    },
}

fn config(sub: Sub) -> RunConfig {
    let (command, common, window, order) = match sub {
        Sub::Validate(c) => (Command::Validate, c, None, None),
        Sub::Nerve(c) => (Command::Nerve, c, None, None),
        Sub::Resolve { common, window } => (Command::Resolve, common, Some(window), None),
        Sub::Check { common, window } => (Command::Check, common, Some(window), None),
        Sub::Tangent { common, window } => (Command::Tangent, common, Some(window), None),
        Sub::Deform { common, window, order } => (Command::Deform, common, Some(window), Some(order)),
        Sub::Cotangent { common, window } => (Command::Cotangent, common, Some(window), None),
        Sub::Morphism { common, window } => (Command::Morphism, common, Some(window), None),
    };
    let mut c = RunConfig::new(command, common.input, 1);
    c.margin = common.margin;
    c.out = common.out;
    c.format = match common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    if let Some(w) = window {
        c.weight = w.weight;
        c.depth = w.depth;
        c.range = w.range;
    }
    if let Some(n) = order {
        c.order = n;
    }
    c
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let config = config(cli.command);
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &report.json) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    match config.format {
        Format::Json => print!("{}", report.json),
        Format::Text => print!("{}", report.text),
    }
    ExitCode::from(report.exit_code() as u8)
}
