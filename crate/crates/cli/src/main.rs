//! Command-line front end. Every command prints one JSON record on
//! stdout and a short human summary on stderr; exit codes classify
//! failures (2 bad input, 3 failed check, 4 cap exceeded, 1 arithmetic).

use std::path::Path;
use std::process::exit;

use clap::{Parser, Subcommand};
use ncdisc_cli::{registry, run, spec_json};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ncdisc",
    version,
    about = "exact discriminants of algebras over central subalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation, certify the stated basis, report structure
    Check { spec: String },
    /// Compute a discriminant by the chosen route
    Disc {
        spec: String,
        /// direct | ore | skgrp | twist | reflection
        #[arg(long, default_value = "direct")]
        method: String,
        /// allow direct trace matrices past the default size cap
        #[arg(long)]
        stress: bool,
    },
    /// Trace of one element against the certified basis
    Trace {
        spec: String,
        #[arg(long)]
        element: String,
    },
    /// Discriminant of a numerical-monoid algebra over a modulus
    MonoidDisc {
        /// generators, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        modulus: u64,
    },
    /// Degreewise description of central elements of an adjoined extension
    CenterDecompose {
        spec: String,
        /// largest base degree inspected
        #[arg(long, default_value_t = 8)]
        deg: u64,
        /// largest power of the adjoined variable inspected
        #[arg(long, default_value_t = 8)]
        pow: u64,
    },
    /// Test a candidate map: endomorphism, invertibility, discriminant behavior
    AutCheck {
        spec: String,
        /// JSON file with generator images and optional parameter values
        #[arg(long)]
        map: String,
    },
    /// Recompute bundled worked examples and compare with recorded values
    Verify {
        /// entry name; omit with --all to run everything
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// include entries marked as costly
        #[arg(long)]
        stress: bool,
    },
    /// Group-matrix discriminant over the symmetric functions on n letters
    ConjectureSn {
        #[arg(long)]
        n: u32,
    },
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn bail_str(msg: &str, code: i32) -> ! {
    emit(&json!({"error": {"message": msg}}));
    eprintln!("error: {msg}");
    exit(code);
}

fn bail(e: ncdisc_core::Error) -> ! {
    let code = run::exit_code(&e);
    emit(&json!({"error": {"message": e.to_string()}}));
    eprintln!("error: {e}");
    exit(code);
}

fn load_built(path: &str) -> spec_json::Built {
    let spec = match spec_json::load(Path::new(path)) {
        Ok(s) => s,
        Err(m) => bail_str(&m, 2),
    };
    match spec_json::build(&spec) {
        Ok(b) => b,
        Err(e) => bail(e),
    }
}

fn str_of<'a>(v: &'a Value, key: &str) -> &'a str {
    v.get(key).and_then(Value::as_str).unwrap_or("")
}

fn verification_json(v: &registry::Verification) -> Value {
    json!({
        "name": v.name,
        "source": v.source,
        "pass": v.pass,
        "computed": v.computed,
        "expected": v.expected,
        "details": v.details,
    })
}

fn run_verify(name: Option<String>, all: bool, stress: bool) -> (Value, i32) {
    let targets: Vec<&'static registry::Entry> = if let Some(n) = &name {
        match registry::find(n) {
            Some(e) => vec![e],
            None => {
                let known: Vec<&str> = registry::entries().iter().map(|e| e.name).collect();
                bail_str(
                    &format!("no bundled example named `{n}`; known: {}", known.join(", ")),
                    2,
                );
            }
        }
    } else if all {
        registry::entries()
            .iter()
            .filter(|e| stress || !e.stress)
            .collect()
    } else {
        bail_str("give an entry name or --all", 2);
    };

    let mut rows = Vec::new();
    let mut all_pass = true;
    for entry in targets {
        match entry.verify() {
            Ok(v) => {
                eprintln!(
                    "{} {} ({} ms)",
                    if v.pass { "pass" } else { "FAIL" },
                    v.name,
                    v.millis
                );
                if !v.pass {
                    eprintln!("     computed {}", v.computed);
                    eprintln!("     expected {}", v.expected);
                }
                all_pass &= v.pass;
                rows.push(verification_json(&v));
            }
            Err(e) => {
                eprintln!("FAIL {} (error: {e})", entry.name);
                all_pass = false;
                rows.push(json!({
                    "name": entry.name,
                    "source": entry.source,
                    "pass": false,
                    "error": e.to_string(),
                }));
            }
        }
    }
    let record = json!({
        "pipeline": "verify",
        "verifications": rows,
        "pass": all_pass,
    });
    (record, if all_pass { 0 } else { 3 })
}

fn main() {
    let cli = Cli::parse();
    let (record, code) = match cli.command {
        Command::Check { spec } => {
            let built = load_built(&spec);
            match run::check(&built) {
                Ok(v) => {
                    eprintln!(
                        "ok: rank {} basis verified to degree {}",
                        v.get("rank").cloned().unwrap_or(Value::Null),
                        v.get("basis_verified_to").cloned().unwrap_or(Value::Null)
                    );
                    (v, 0)
                }
                Err(e) => bail(e),
            }
        }
        Command::Disc {
            spec,
            method,
            stress,
        } => {
            let built = load_built(&spec);
            match run::discriminant(&built, &method, stress) {
                Ok(v) => {
                    eprintln!("d = {}", str_of(&v, "ambient"));
                    (v, 0)
                }
                Err(e) => bail(e),
            }
        }
        Command::Trace { spec, element } => {
            let built = load_built(&spec);
            match run::trace_element(&built, &element) {
                Ok(v) => {
                    eprintln!("trace({element}) = {}", str_of(&v, "trace_ambient"));
                    (v, 0)
                }
                Err(e) => bail(e),
            }
        }
        Command::MonoidDisc { gens, modulus } => match run::monoid_disc(&gens, modulus) {
            Ok(v) => {
                eprintln!("d = {}", str_of(&v, "ambient"));
                (v, 0)
            }
            Err(e) => bail(e),
        },
        Command::CenterDecompose { spec, deg, pow } => {
            let built = load_built(&spec);
            match run::center_decompose(&built, deg, pow) {
                Ok(v) => {
                    let n = v
                        .get("components")
                        .and_then(Value::as_array)
                        .map(Vec::len)
                        .unwrap_or(0);
                    eprintln!("{n} fixed components up to degree {deg}, power {pow}");
                    (v, 0)
                }
                Err(e) => bail(e),
            }
        }
        Command::AutCheck { spec, map } => {
            let built = load_built(&spec);
            let map = match run::load_map(Path::new(&map)) {
                Ok(m) => m,
                Err(m) => bail_str(&m, 2),
            };
            match run::aut_check(&built, &map) {
                Ok(v) => {
                    let verdict = v.get("verdict").and_then(Value::as_bool).unwrap_or(false);
                    eprintln!(
                        "endomorphism: {}, automorphism: {}",
                        v.get("endomorphism").cloned().unwrap_or(Value::Null),
                        v.get("automorphism").cloned().unwrap_or(Value::Null)
                    );
                    (v, if verdict { 0 } else { 3 })
                }
                Err(e) => bail(e),
            }
        }
        Command::Verify { name, all, stress } => run_verify(name, all, stress),
        Command::ConjectureSn { n } => match run::conjecture_sn(n) {
            Ok(v) => {
                let ok = v.get("matches").and_then(Value::as_bool).unwrap_or(false);
                eprintln!(
                    "n = {n}: {}",
                    if ok {
                        "group matrix and discriminant match the predicted powers"
                    } else {
                        "MISMATCH against the predicted powers"
                    }
                );
                (v, if ok { 0 } else { 3 })
            }
            Err(e) => bail(e),
        },
    };
    emit(&record);
    exit(code);
}
