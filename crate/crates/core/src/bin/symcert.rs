//! Command-line front end: JSON documents in, certificate/report documents
//! out. Exit code 0 means the analysis ran (verdicts may still be false or
//! unknown); exit code 2 means the input could not be read or parsed.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use symcert::doc::{SubspaceDocument, SystemDocument};
use symcert::generate::GenerateKind;
use symcert::report::{self, FormChoice, GeometryTest, Property};

#[derive(Parser)]
#[command(name = "symcert", version, about = "Symmetry certificates and canonical forms for LTI state-space systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Path to a JSON document, or `-` for standard input.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Search for symmetry certificates of a system.
    Certify {
        #[command(flatten)]
        input: InputArg,
        /// reciprocal | iohamiltonian | signed-reversible | reversible |
        /// lossless | passive | relaxation | all
        #[arg(long, default_value = "all")]
        property: String,
        /// Feasibility tolerance recorded in the report; certificates with
        /// residuals above it are demoted to false.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Transform a certified system into a canonical form.
    Canonicalize {
        #[command(flatten)]
        input: InputArg,
        /// pseudo-gradient | port-hamiltonian | relaxation | factorize |
        /// normal-form
        #[arg(long)]
        form: String,
    },
    /// Spectral analysis of the signature-weighted Hankel operator.
    Hankel {
        #[command(flatten)]
        input: InputArg,
        /// Grid as `T,h` (horizon, step); defaults derived from the system.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Subspace tests on a subspace document.
    Geometry {
        #[command(flatten)]
        input: InputArg,
        /// lagrangian | dirac | separable | hybrid
        #[arg(long)]
        test: String,
    },
    /// Emit a random structured system with embedded ground truth.
    Generate {
        /// reciprocal | iohamiltonian | relaxation | lossless |
        /// time-reversible
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Certify {
            input,
            property,
            tol,
        } => {
            let Some(props) = Property::parse(&property) else {
                return input_error(format!("unknown property `{property}`"));
            };
            let text = match read_input(&input.input) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let doc = match SystemDocument::parse(&text) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let sys = match doc.to_system() {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let mut rep = report::run_certify(&doc.name, &sys, &props);
            if let Some(t) = tol {
                report::apply_tolerance(&mut rep, t);
            }
            println!("{}", rep.to_json());
            ExitCode::SUCCESS
        }
        Command::Canonicalize { input, form } => {
            let Some(choice) = FormChoice::parse(&form) else {
                return input_error(format!("unknown form `{form}`"));
            };
            let text = match read_input(&input.input) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let sys_doc = match SystemDocument::parse(&text).and_then(|d| {
                let sys = d.to_system()?;
                Ok((d, sys))
            }) {
                Ok(p) => p,
                Err(e) => return input_error(e),
            };
            let rep = report::run_canonicalize(&sys_doc.0.name, &sys_doc.1, choice);
            println!("{}", rep.to_json());
            ExitCode::SUCCESS
        }
        Command::Hankel { input, grid } => {
            let parsed_grid = match grid {
                None => None,
                Some(s) => {
                    let parts: Vec<_> = s.split(',').collect();
                    let pair = (|| {
                        if parts.len() != 2 {
                            return None;
                        }
                        let t: f64 = parts[0].trim().parse().ok()?;
                        let h: f64 = parts[1].trim().parse().ok()?;
                        (t > 0.0 && h > 0.0 && h <= t).then_some((t, h))
                    })();
                    match pair {
                        Some(p) => Some(p),
                        None => return input_error(format!("bad --grid `{s}`, expected `T,h`")),
                    }
                }
            };
            let text = match read_input(&input.input) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let sys_doc = match SystemDocument::parse(&text).and_then(|d| {
                let sys = d.to_system()?;
                Ok((d, sys))
            }) {
                Ok(p) => p,
                Err(e) => return input_error(e),
            };
            let rep = report::run_hankel(&sys_doc.0.name, &sys_doc.1, parsed_grid);
            println!("{}", rep.to_json());
            ExitCode::SUCCESS
        }
        Command::Geometry { input, test } => {
            let Some(which) = GeometryTest::parse(&test) else {
                return input_error(format!("unknown test `{test}`"));
            };
            let text = match read_input(&input.input) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            let sub_doc = match SubspaceDocument::parse(&text) {
                Ok(d) => d,
                Err(e) => return input_error(e),
            };
            let sub = match sub_doc.to_subspace() {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let rep = report::run_geometry(&sub_doc.name, &sub, which);
            println!("{}", rep.to_json());
            ExitCode::SUCCESS
        }
        Command::Generate { kind, n, m, seed } => {
            let Some(k) = GenerateKind::parse(&kind) else {
                return input_error(format!("unknown kind `{kind}`"));
            };
            match report::run_generate(k, n, m, seed) {
                Ok(doc) => {
                    println!("{}", doc.to_json());
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            }
        }
    }
}
