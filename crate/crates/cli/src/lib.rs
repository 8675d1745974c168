//! Argument handling and dispatch for the `assignalg` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use assignalg::exactpoly::parse_rational;
use assignalg::report::{self, ReportDocument, SCHEMA};
use assignalg::{Error, ModelDocument, Rational, Subalgebra};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "assignalg", version, about = "Polynomial assignment algebras of torus actions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub output: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Bound {
    /// Highest degree computed (defaults to the number of components for a
    /// presentation, otherwise the torus dimension).
    #[arg(long)]
    pub degree_bound: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a document against every structural invariant.
    Validate { file: PathBuf },
    /// Graded dimensions and minimal generators.
    Basis {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Membership of the tuples or assignments listed in a document.
    Members { file: PathBuf },
    /// Full report on a model.
    Report {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Kernel and quotient at a regular level of a circle moment map.
    Kirwan {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
        /// Circle direction as comma-separated rationals, e.g. `1,1`.
        #[arg(long)]
        circle: Option<String>,
        /// Output format for this report (overrides `--output`).
        #[arg(long, value_enum)]
        report_format: Option<Format>,
    },
    /// Solve an extension problem.
    Extend {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Quotient of a stratified model by a locally free circle.
    QuotientCircle {
        file: PathBuf,
        #[arg(long)]
        circle: String,
        #[command(flatten)]
        bound: Bound,
    },
    /// Compare graded dimensions of a presentation and a stratified model.
    OracleCompare {
        gkm: PathBuf,
        strata: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Check every claim of the bundled example corpus.
    Examples,
}

/// Failure before a verdict could be computed.
#[derive(Debug)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Invalid { invariant, .. } => invariant,
            Error::Syntax { .. } => "syntax",
            Error::Parse { .. } => "parse",
            _ => "semantic",
        };
        InputError {
            kind,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<ModelDocument, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    ModelDocument::parse(&text).map_err(|e| {
        let mut err = InputError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

/// Parses a circle direction such as `1,1` or `1/2,-1`.
pub fn parse_circle(text: &str, torus_dim: usize) -> Result<Subalgebra, InputError> {
    let entries: Vec<Rational> = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<_, _>>()
        .map_err(InputError::from)?;
    if entries.len() != torus_dim {
        return Err(InputError::from(Error::invalid(
            "vector_length",
            format!("circle has {} entries, the torus has dimension {torus_dim}", entries.len()),
        )));
    }
    let q = Subalgebra::from_span(torus_dim, &[entries])?;
    if q.dim() != 1 {
        return Err(Error::CircleDimension(q.dim()).into());
    }
    Ok(q)
}

fn closure_warning(doc: &ModelDocument, err: &mut dyn Write) {
    if let ModelDocument::Strata(d) = doc {
        if let Ok(s) = d.space() {
            if !s.input_was_closed() {
                let _ = writeln!(err, "warning: closure order was not transitively closed; using its closure");
            }
        }
    }
}

/// Caps the global rayon pool from `ASSIGNALG_THREADS`.
pub fn configure_threads() {
    if let Some(n) = std::env::var("ASSIGNALG_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(ReportDocument, Format), InputError> {
    let bound_or = |b: &Bound, doc: &ModelDocument| b.degree_bound.unwrap_or(doc.default_degree_bound());
    let fmt = cli.output;
    Ok(match &cli.command {
        Command::Validate { file } => {
            let doc = load(file)?;
            closure_warning(&doc, err);
            (report::validate(&doc)?, fmt)
        }
        Command::Basis { file, bound } => {
            let doc = load(file)?;
            closure_warning(&doc, err);
            (report::basis(&doc, bound_or(bound, &doc))?, fmt)
        }
        Command::Members { file } => {
            let doc = load(file)?;
            closure_warning(&doc, err);
            (report::members(&doc)?, fmt)
        }
        Command::Report { file, bound } => {
            let doc = load(file)?;
            closure_warning(&doc, err);
            (report::report(&doc, bound_or(bound, &doc))?, fmt)
        }
        Command::Kirwan {
            file,
            bound,
            circle,
            report_format,
        } => {
            let doc = load(file)?;
            let q = circle.as_deref().map(|c| parse_circle(c, doc.torus_dim())).transpose()?;
            (report::kirwan(&doc, bound_or(bound, &doc), q.as_ref())?, report_format.unwrap_or(fmt))
        }
        Command::Extend { file, bound } => {
            let doc = load(file)?;
            (report::extend(&doc, bound_or(bound, &doc))?, fmt)
        }
        Command::QuotientCircle { file, circle, bound } => {
            let doc = load(file)?;
            closure_warning(&doc, err);
            let q = parse_circle(circle, doc.torus_dim())?;
            (report::quotient_circle(&doc, &q, bound_or(bound, &doc))?, fmt)
        }
        Command::OracleCompare { gkm, strata, bound } => {
            let g = load(gkm)?;
            let s = load(strata)?;
            closure_warning(&s, err);
            (report::oracle_compare(&g, &s, bound_or(bound, &g))?, fmt)
        }
        Command::Examples => (report::examples(cli.seed), fmt),
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Basis { .. } => "basis",
        Command::Members { .. } => "members",
        Command::Report { .. } => "report",
        Command::Kirwan { .. } => "kirwan",
        Command::Extend { .. } => "extend",
        Command::QuotientCircle { .. } => "quotient-circle",
        Command::OracleCompare { .. } => "oracle-compare",
        Command::Examples => "examples",
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRUE };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok((r, fmt)) => {
            let text = match fmt {
                Format::Text => r.to_text(),
                Format::Machine => r.to_machine(),
            };
            let _ = out.write_all(text.as_bytes());
            if r.verdict {
                EXIT_TRUE
            } else {
                EXIT_FALSE
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            let machine = match &cli.command {
                Command::Kirwan {
                    report_format: Some(f), ..
                } => *f == Format::Machine,
                _ => cli.output == Format::Machine,
            };
            if machine {
                let doc = serde_json::json!({
                    "schema": SCHEMA,
                    "command": command_name(&cli.command),
                    "error": { "kind": e.kind, "message": e.message },
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            EXIT_INPUT
        }
    }
}
