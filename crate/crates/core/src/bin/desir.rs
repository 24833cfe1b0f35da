use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use desirability::document::{parse_document, Document};
use desirability::error::Error;
use desirability::runner::{execute, run_script, Command};

/// Exact queries on sets of desirable gambles, credal sets and preferences.
#[derive(Parser)]
#[command(name = "desir", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Doc {
    /// Problem document
    #[arg(short, long)]
    doc: PathBuf,
}

#[derive(Subcommand)]
enum Sub {
    /// Parse a document and check every declaration
    Check { doc: PathBuf },
    /// Membership of a gamble in a set
    Member {
        #[command(flatten)]
        doc: Doc,
        set: String,
        gamble: String,
        /// Print a replay-verified certificate
        #[arg(long)]
        cert: bool,
    },
    /// Lower prevision of a gamble
    Lowprev {
        #[command(flatten)]
        doc: Doc,
        model: String,
        gamble: String,
    },
    /// Upper prevision of a gamble
    Upprev {
        #[command(flatten)]
        doc: Doc,
        model: String,
        gamble: String,
    },
    /// Conditional lower prevision given an event
    Condlowprev {
        #[command(flatten)]
        doc: Doc,
        model: String,
        gamble: String,
        event: String,
    },
    /// Conditional natural extension of a credal set
    Condnatex {
        #[command(flatten)]
        doc: Doc,
        credal: String,
        gamble: String,
        event: String,
    },
    /// Extreme points of a credal set
    Vertices {
        #[command(flatten)]
        doc: Doc,
        model: String,
    },
    /// Marginal credal set on `omega` or `prizes`
    Marginal {
        #[command(flatten)]
        doc: Doc,
        model: String,
        factor: String,
    },
    /// Conditional set given an event
    Condition {
        #[command(flatten)]
        doc: Doc,
        set: String,
        event: String,
    },
    /// Whether p is preferred to q
    PrefHolds {
        #[command(flatten)]
        doc: Doc,
        relation: String,
        p: String,
        q: String,
    },
    /// Minimal extension of a bare relation to a worst outcome
    ExtendWorst {
        #[command(flatten)]
        doc: Doc,
        relation: String,
    },
    /// Archimedean class of a relation or set
    Archimedean {
        #[command(flatten)]
        doc: Doc,
        name: String,
    },
    /// Joint credal set of a product: marginal-extension, ine or strong
    Product {
        #[command(flatten)]
        doc: Doc,
        kind: String,
        m_omega: String,
        m_x: String,
    },
    /// State-independence checks: a4, a5 or strong
    Statecheck {
        #[command(flatten)]
        doc: Doc,
        check: String,
        joint: String,
        marginals: Vec<String>,
    },
    /// Strict set between a cone and a strict superset
    Interpolate {
        #[command(flatten)]
        doc: Doc,
        inner: String,
        outer: String,
    },
    /// Run a script of commands
    Run {
        #[command(flatten)]
        doc: Doc,
        script: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Error> {
    parse_document(&read(path)?)
}

fn statecheck(check: &str, joint: String, marginals: Vec<String>) -> Result<Command, Error> {
    let mut words = vec!["statecheck".to_string(), check.to_string(), joint];
    words.extend(marginals);
    Command::parse(&words.join(" "))
}

fn split(sub: Sub) -> Result<(PathBuf, Command), Error> {
    Ok(match sub {
        Sub::Check { doc } => (doc, Command::Check),
        Sub::Member {
            doc,
            set,
            gamble,
            cert,
        } => (doc.doc, Command::Member { set, gamble, cert }),
        Sub::Lowprev { doc, model, gamble } => (doc.doc, Command::LowPrev { model, gamble }),
        Sub::Upprev { doc, model, gamble } => (doc.doc, Command::UpPrev { model, gamble }),
        Sub::Condlowprev {
            doc,
            model,
            gamble,
            event,
        } => (
            doc.doc,
            Command::CondLowPrev {
                model,
                gamble,
                event,
            },
        ),
        Sub::Condnatex {
            doc,
            credal,
            gamble,
            event,
        } => (
            doc.doc,
            Command::CondNatEx {
                credal,
                gamble,
                event,
            },
        ),
        Sub::Vertices { doc, model } => (doc.doc, Command::Vertices { model }),
        Sub::Marginal { doc, model, factor } => (doc.doc, Command::Marginal { model, factor }),
        Sub::Condition { doc, set, event } => (doc.doc, Command::Condition { set, event }),
        Sub::PrefHolds {
            doc,
            relation,
            p,
            q,
        } => (doc.doc, Command::PrefHolds { relation, p, q }),
        Sub::ExtendWorst { doc, relation } => (doc.doc, Command::ExtendWorst { relation }),
        Sub::Archimedean { doc, name } => (doc.doc, Command::Archimedean { name }),
        Sub::Product {
            doc,
            kind,
            m_omega,
            m_x,
        } => (doc.doc, Command::Product { kind, m_omega, m_x }),
        Sub::Statecheck {
            doc,
            check,
            joint,
            marginals,
        } => (doc.doc, statecheck(&check, joint, marginals)?),
        Sub::Interpolate { doc, inner, outer } => (doc.doc, Command::Interpolate { inner, outer }),
        Sub::Run { .. } => unreachable!("handled by the caller"),
    })
}

fn main_inner(cli: Cli) -> Result<i32, Error> {
    if let Sub::Run { doc, script } = cli.command {
        let d = load(&doc.doc)?;
        let report = run_script(&d, &read(&script)?);
        print!("{}", report.text);
        return Ok(report.code);
    }
    let (path, cmd) = split(cli.command)?;
    let doc = load(&path)?;
    let answer = execute(&doc, &cmd);
    for line in &answer.lines {
        if answer.code != 0 && line.starts_with("error: ") {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
    Ok(answer.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = main_inner(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}
