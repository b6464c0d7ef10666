//! `qlab`: validate workspaces, compute concept and Kan lattices, run law
//! suites and export canonical documents.
//!
//! Exit codes: 0 success, 1 law violation, 2 unreadable or malformed input,
//! 3 presheaf enumeration cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qlab_core::doc::{to_json, CategoryDoc, DistributorDoc, FunctorDoc, PresheafDoc, QuantaloidDoc};
use qlab_core::dot::hasse_dot;
use qlab_core::fixtures::CTX_JSON;
use qlab_core::presheaf::PresheafCategory;
use qlab_core::suites::validate_workspace;
use qlab_core::{concept_lattice, kan_lattice, run_suite, Error, Finding, LatticeDoc, Suite, SuiteStatus, Workspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "qlab", version, about = "Finite quantaloid-enriched categories, concept lattices and Kan lattices")]
struct Cli {
    /// Workspace document; the bundled example workspace when absent.
    #[arg(short, long, global = true, env = "QLAB_WORKSPACE")]
    workspace: Option<PathBuf>,
    /// Upper bound on the number of presheaves any command may enumerate.
    #[arg(long, global = true, env = "QLAB_CAP", default_value_t = qlab_core::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every validator over the given workspace documents.
    Validate { paths: Vec<PathBuf> },
    /// Concept lattice M(φ) of a named distributor.
    Concepts { distributor: String },
    /// Kan lattice K(φ) of a named distributor.
    Kan { distributor: String },
    /// Run a law suite over the workspace.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Canonical document of a named object: a category, functor,
    /// distributor, presheaf, `quantaloid`, `workspace`, `P(A)`, `M(phi)` or `K(phi)`.
    Export { name: String },
}

/// A failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            Error::Parse(_)
            | Error::UnknownObject(_)
            | Error::Structural(_)
            | Error::TypeMismatch(_)
            | Error::BoundaryMismatch(_) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

fn read(path: &PathBuf) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn load(cli: &Cli) -> Res<Workspace> {
    match &cli.workspace {
        Some(p) => Workspace::parse(&read(p)?).map_err(|e| {
            let f = Fail::from(e);
            Fail(f.0, format!("{}: {}", p.display(), f.1))
        }),
        None => Ok(Workspace::parse(CTX_JSON)?),
    }
}

fn print_findings(findings: &[Finding]) {
    for f in findings {
        eprintln!("{}: {}: {}", f.module, f.law, f.witness);
    }
}

/// Loads the workspace and refuses to compute on one that fails validation.
fn load_valid(cli: &Cli) -> Res<Workspace> {
    let ws = load(cli)?;
    let findings = validate_workspace(&ws, cli.cap)?;
    if !findings.is_empty() {
        print_findings(&findings);
        return Err(Fail(1, "workspace fails validation".into()));
    }
    Ok(ws)
}

#[derive(Serialize)]
struct FileReport {
    path: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    findings: Vec<Finding>,
}

fn validate(cli: &Cli, paths: &[PathBuf]) -> Res<u8> {
    let mut reports = vec![];
    let mut code = 0u8;
    let mut check = |path: String, text: Res<String>| {
        let outcome = text.and_then(|t| {
            let ws = Workspace::parse(&t)?;
            Ok(validate_workspace(&ws, cli.cap)?)
        });
        let r = match outcome {
            Ok(findings) => {
                print_findings(&findings);
                if !findings.is_empty() {
                    code = code.max(1);
                }
                FileReport {
                    path,
                    ok: findings.is_empty(),
                    error: None,
                    findings,
                }
            }
            Err(Fail(c, msg)) => {
                eprintln!("{path}: {msg}");
                code = code.max(c);
                FileReport {
                    path,
                    ok: false,
                    error: Some(msg),
                    findings: vec![],
                }
            }
        };
        reports.push(r);
    };
    if paths.is_empty() {
        match &cli.workspace {
            Some(p) => check(p.display().to_string(), read(p)),
            None => check("<bundled>".into(), Ok(CTX_JSON.to_string())),
        }
    }
    for p in paths {
        check(p.display().to_string(), read(p));
    }
    print!("{}", to_json(&reports));
    Ok(code)
}

fn lattice(cli: &Cli, name: &str, kan: bool) -> Res<u8> {
    let ws = load_valid(cli)?;
    let phi = ws.distributor(name)?;
    let m = if kan {
        kan_lattice(phi, cli.cap)?
    } else {
        concept_lattice(phi, cli.cap)?
    };
    match cli.format {
        Format::Json => print!("{}", to_json(&LatticeDoc::from_lattice(&m, name))),
        Format::Dot => {
            let label = format!("{}({name})", if kan { "K" } else { "M" });
            print!("{}", hasse_dot(&m.category, &label))
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckReport {
    ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    validation: Vec<Finding>,
    suites: Vec<qlab_core::SuiteOutcome>,
}

fn check(cli: &Cli, suite: &str) -> Res<u8> {
    let suite: Suite = suite.parse()?;
    let ws = load(cli)?;
    let validation = validate_workspace(&ws, cli.cap)?;
    print_findings(&validation);
    let suites = run_suite(&ws, suite, cli.cap);
    let mut code = if validation.is_empty() { 0 } else { 1 };
    let mut capped = false;
    for o in &suites {
        match &o.status {
            SuiteStatus::Passed => eprintln!("{}: passed", o.suite),
            SuiteStatus::Failed => {
                eprintln!("{}: failed", o.suite);
                print_findings(&o.findings);
                code = 1;
            }
            SuiteStatus::Skipped(why) => eprintln!("{}: skipped ({why})", o.suite),
            SuiteStatus::CapExceeded(why) => {
                eprintln!("{}: cap exceeded ({why})", o.suite);
                capped = true;
            }
        }
    }
    if code == 0 && capped {
        code = 3;
    }
    print!(
        "{}",
        to_json(&CheckReport {
            ok: code == 0,
            validation,
            suites,
        })
    );
    Ok(code)
}

fn wrapped<'a>(name: &'a str, head: &str) -> Option<&'a str> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn export(cli: &Cli, name: &str) -> Res<u8> {
    let ws = load_valid(cli)?;
    let dot = cli.format == Format::Dot;
    let no_dot = || Fail(2, format!("`{name}` has no DOT rendering"));
    let out = if let Some(a) = wrapped(name, "P") {
        let pa = PresheafCategory::contravariant(ws.category(a)?.clone(), cli.cap)?;
        if dot {
            hasse_dot(pa.category(), name)
        } else {
            to_json(&CategoryDoc::from_category(pa.category()))
        }
    } else if let Some(d) = wrapped(name, "M").or(wrapped(name, "K")) {
        let phi = ws.distributor(d)?;
        let m = if name.starts_with('K') {
            kan_lattice(phi, cli.cap)?
        } else {
            concept_lattice(phi, cli.cap)?
        };
        if dot {
            hasse_dot(&m.category, name)
        } else {
            to_json(&LatticeDoc::from_lattice(&m, d))
        }
    } else if name == "workspace" {
        if dot {
            return Err(no_dot());
        }
        ws.to_json()
    } else if name == "quantaloid" {
        if dot {
            return Err(no_dot());
        }
        to_json(&QuantaloidDoc::from_quantaloid(&ws.quantaloid))
    } else if let Some(c) = ws.categories.get(name) {
        if dot {
            hasse_dot(c, name)
        } else {
            to_json(&CategoryDoc::from_category(c))
        }
    } else if dot {
        return Err(no_dot());
    } else if let Some((s, t, f)) = ws.functors.get(name) {
        to_json(&FunctorDoc::from_functor(f, s, t))
    } else if let Some((s, t, d)) = ws.distributors.get(name) {
        to_json(&DistributorDoc::from_distributor(d, s, t))
    } else if let Some((c, mu)) = ws.presheaves.get(name) {
        to_json(&PresheafDoc::from_presheaf(ws.category(c)?, c, mu))
    } else if let Some(i) = ws.infomorphisms.get(name) {
        to_json(i)
    } else if let Some(c) = ws.closures.get(name) {
        to_json(c)
    } else {
        return Err(Error::UnknownObject(name.to_string()).into());
    };
    print!("{out}");
    Ok(0)
}

fn run(cli: &Cli) -> Res<u8> {
    match &cli.command {
        Command::Validate { paths } => validate(cli, paths),
        Command::Concepts { distributor } => lattice(cli, distributor, false),
        Command::Kan { distributor } => lattice(cli, distributor, true),
        Command::Check { suite } => check(cli, suite),
        Command::Export { name } => export(cli, name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
