use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use keyform::input::parse_fields;
use keyform::report;
use keyform::{export_graph, CurveSpec, Error, GraphFormat, SpecFields};

#[derive(Parser)]
#[command(name = "keyform", version, about = "Key forms and contractibility of curves tangent to a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// File with `key = value` lines (series, pairs, r, generic, xi).
    file: Option<PathBuf>,
    /// Local expansion v = phi(u), e.g. "u^(3/5) + u^2".
    #[arg(long)]
    series: Option<String>,
    /// Puiseux pairs, e.g. "[(3,5),(23,2)]".
    #[arg(long)]
    pairs: Option<String>,
    /// Number of extra blow-ups.
    #[arg(long)]
    r: Option<u32>,
    /// Degree-wise series in x without its generic term.
    #[arg(long)]
    generic: Option<String>,
    /// Exponent of the generic term, used with --generic.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: invariants, semigroup conditions, key forms and verdict.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also list every intermediate key form.
        #[arg(long)]
        all: bool,
        /// Compute key forms even when the curve is not contractible.
        #[arg(long)]
        force_keyforms: bool,
    },
    /// Essential key forms of the generic series.
    Keyforms {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        all: bool,
    },
    /// Semigroup conditions and the resulting classification.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Weighted dual graph of the line and the exceptional curves.
    Dualgraph {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Closed-form verdicts for a single Puiseux pair.
    Singlepair {
        #[command(flatten)]
        spec: SpecArgs,
        /// Polynomial f(u, v), monic of degree p in v, to test by truncation.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Cross-check the single-pair closed forms over all small pairs.
    Sweep {
        #[arg(long, default_value_t = 7)]
        max_p: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(args: &SpecArgs) -> Result<CurveSpec, Failure> {
    let flags = SpecFields {
        series: args.series.clone(),
        pairs: args.pairs.clone(),
        generic: args.generic.clone(),
        xi: args.xi.clone(),
        r: args.r,
    };
    let fields = match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            flags.or(parse_fields(&text)?)
        }
        None => flags,
    };
    Ok(CurveSpec::from_fields(fields)?)
}

fn emit<T: serde::Serialize + std::fmt::Display>(r: &T, json: bool) -> String {
    if json {
        report::to_json(r) + "\n"
    } else {
        r.to_string()
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Analyze { spec, all, force_keyforms } => emit(&report::analyze(&load(&spec)?, all, force_keyforms)?, spec.json),
        Command::Keyforms { spec, all } => emit(&report::keyforms(&load(&spec)?, all)?, spec.json),
        Command::Classify { spec } => emit(&report::classify(&load(&spec)?)?, spec.json),
        Command::Dualgraph { spec, format } => {
            let g = report::dualgraph(&load(&spec)?)?;
            let format = match format {
                Format::Dot if !spec.json => GraphFormat::Dot,
                _ => GraphFormat::Json,
            };
            let mut s = export_graph(&g, format);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Command::Singlepair { spec, poly } => emit(&report::singlepair(&load(&spec)?, poly.as_deref())?, spec.json),
        Command::Sweep { max_p, seed, json } => emit(&report::sweep(max_p, seed)?, json),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() {
                2
            } else if matches!(e, Error::Precondition(_)) {
                3
            } else {
                1
            })
        }
    }
}
