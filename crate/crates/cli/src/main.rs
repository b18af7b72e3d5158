//! Command line front end: parse one JSON document, run the requested
//! verification suite, print CHECK lines or a JSON report. Exit codes:
//! 0 all checks pass, 1 at least one mathematical check failed, 2 input
//! error.

mod commands;
mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use commands::Flags;
use linflow::docs::{parse_input, InputDoc, Mode, ReportDoc};
use linflow::report::Report;
use linflow::{Error, Result};

#[derive(Parser)]
#[command(name = "linflow", version, about = "Derivation decompositions and flow certificates")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Input document; verify and catmap fall back to the bundled corpus.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Arithmetic mode; defaults to the document's own mode field.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Residual tolerance for the checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Time horizon for flows and cocycles.
    #[arg(long, global = true, default_value_t = 100.0)]
    tmax: f64,
    /// Recurrence probe radius.
    #[arg(long, global = true, default_value_t = 1e-6)]
    eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose a matrix or a derivation into elliptic, hyperbolic and
    /// nilpotent parts and verify the decomposition.
    Jordan,
    /// Weight grading induced by the hyperbolic part of a derivation.
    Grade,
    /// Certify the recurrent set of the flow of a model derivation.
    Recurrent,
    /// Automorphism and one-parameter identities of the flow.
    Flow,
    /// Cocycle identity and the boundedness dichotomy.
    Cocycle,
    /// Torus automorphism: generator numbers and exact periodicity scan.
    Catmap,
    /// Cartan data, automorphic isometry algebra, length preservation.
    Isometry,
    /// Full property suite for one document or the bundled corpus.
    Verify,
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Jordan => "jordan",
            Cmd::Grade => "grade",
            Cmd::Recurrent => "recurrent",
            Cmd::Flow => "flow",
            Cmd::Cocycle => "cocycle",
            Cmd::Catmap => "catmap",
            Cmd::Isometry => "isometry",
            Cmd::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

struct Loaded {
    digest: String,
    doc: InputDoc,
}

fn load(path: &PathBuf) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(Loaded { digest: digest(&text), doc: parse_input(&text)? })
}

fn load_text(text: &str) -> Result<Loaded> {
    Ok(Loaded { digest: digest(text), doc: parse_input(text)? })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let flags = Flags {
        mode: cli.mode.map(|m| match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }),
        tol: cli.tol,
        tmax: cli.tmax,
        eps: cli.eps,
    };

    if matches!(cli.command, Cmd::Verify) && cli.input.is_none() {
        return run_corpus(cli, &flags);
    }

    let loaded = match &cli.input {
        Some(path) => load(path)?,
        // catmap is self-contained: without an input it checks the
        // bundled cat map document.
        None if matches!(cli.command, Cmd::Catmap) => load_text(corpus::CATMAP)?,
        None => return Err(Error::Parse("missing --input document".into())),
    };

    let started = Instant::now();
    let (report, extra) = match cli.command {
        Cmd::Jordan => commands::cmd_jordan(&loaded.doc, &flags)?,
        Cmd::Grade => commands::cmd_grade(&loaded.doc, &flags)?,
        Cmd::Recurrent => commands::cmd_recurrent(&loaded.doc, &flags)?,
        Cmd::Flow => commands::cmd_flow(&loaded.doc, &flags)?,
        Cmd::Cocycle => commands::cmd_cocycle(&loaded.doc, &flags)?,
        Cmd::Catmap => commands::cmd_catmap(&loaded.doc, &flags)?,
        Cmd::Isometry => commands::cmd_isometry(&loaded.doc, &flags)?,
        Cmd::Verify => (commands::verify_one(&loaded.doc, &flags)?, Vec::new()),
    };
    let doc = report_doc(cli, &loaded.digest, &report, started);

    match cli.format {
        Format::Text => {
            for line in &extra {
                println!("{line}");
            }
            print!("{}", doc.render_text());
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
    }
    Ok(doc.pass())
}

fn report_doc(cli: &Cli, digest: &str, report: &Report, started: Instant) -> ReportDoc {
    ReportDoc::new(
        cli.command.name(),
        digest,
        report,
        started.elapsed().as_secs_f64() * 1e3,
    )
}

fn run_corpus(cli: &Cli, flags: &Flags) -> Result<bool> {
    let mut docs = Vec::new();
    for (name, text) in corpus::ENTRIES {
        let loaded = load_text(text)?;
        let started = Instant::now();
        let report = commands::verify_one(&loaded.doc, flags)?;
        let doc = report_doc(cli, &loaded.digest, &report, started);
        if cli.format == Format::Text {
            println!("== {name}");
            print!("{}", doc.render_text());
        }
        docs.push(doc);
    }
    if cli.format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&docs).unwrap());
    }
    Ok(docs.iter().all(ReportDoc::pass))
}
