//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::characterization::{
    build, check_conditions, enumerate_rstructures, enumerate_skew_structures, extract, roundtrip,
};
use crate::error::{Error, Result};
use crate::examples::{category_to_monoidale, monoid_to_monoidale, restricted_unit_monoidale};
use crate::finset::DEFAULT_ENUMERATION_CAP;
use crate::io::{element_to_json, print_instance, read_instance, write_instance, Instance};
use crate::simplicial::{dec_cat, nerve, simp_validate, DEFAULT_DEPTH};
use crate::skew::{shuffled_mutations, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "skewspan",
    version,
    about = "Skew monoidales in Span and their (C, R) form"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the five axioms with both checkers.
    Verify { path: PathBuf },
    /// Turn a verified monoidale into a category with R.
    Extract {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a category with R into a monoidale.
    Build {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a monoidale with build(extract(.)).
    Roundtrip { path: PathBuf },
    /// Check conditions (a), (b), (c) on a category with R.
    Check { path: PathBuf },
    /// Count the R-structures on a category.
    Enumerate {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
        /// Also count monoidales directly.
        #[arg(long)]
        dual: bool,
    },
    /// Truncated nerve of a category.
    Nerve {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Dec of a category.
    Dec {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monoidale of a monoid.
    FromMonoid {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monoidale of a category; with --restricted, the one with unit U = C.
    FromCategory {
        path: PathBuf,
        #[arg(long)]
        restricted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both checkers on seeded single mutations of a monoidale.
    Fuzz {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

struct Outcome {
    ok: bool,
    text: String,
    report: Value,
}

impl Outcome {
    fn new(ok: bool, text: impl Into<String>, report: impl Serialize) -> Self {
        Outcome {
            ok,
            text: text.into(),
            report: serde_json::to_value(report).expect("serializable report"),
        }
    }
}

fn load(path: &Path, kind: &str) -> Result<Instance> {
    let inst = read_instance(path)?;
    if inst.kind() != kind {
        return Err(Error::Parse(format!(
            "expected a {kind} file, found a {}",
            inst.kind()
        )));
    }
    Ok(inst)
}

fn emit(inst: &Instance, out: &Option<PathBuf>) -> Result<String> {
    match out {
        Some(p) => {
            write_instance(p, inst)?;
            Ok(format!("wrote {} to {}", inst.kind(), p.display()))
        }
        None => Ok(print_instance(inst)),
    }
}

fn run_command(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Verify { path } => {
            let Instance::Monoidale(m) = load(path, "monoidale")? else {
                unreachable!()
            };
            let report = verify(&m);
            Ok(Outcome::new(report.all_pass(), report.to_string(), &report))
        }
        Command::Extract { path, out } => {
            let Instance::Monoidale(m) = load(path, "monoidale")? else {
                unreachable!()
            };
            let rs = extract(&m)?;
            let text = emit(&Instance::RStructure(rs), out)?;
            Ok(Outcome::new(true, text, json!({ "out": out })))
        }
        Command::Build { path, out } => {
            let Instance::RStructure(rs) = load(path, "rstructure")? else {
                unreachable!()
            };
            let m = build(&rs)?;
            let report = verify(&m);
            let mut text = emit(&Instance::Monoidale(m), out)?;
            if !report.all_pass() {
                text.push_str(&format!("\nbuilt instance fails verification:\n{report}"));
            }
            Ok(Outcome::new(
                report.all_pass(),
                text,
                json!({ "out": out, "verify": report }),
            ))
        }
        Command::Roundtrip { path } => {
            let Instance::Monoidale(m) = load(path, "monoidale")? else {
                unreachable!()
            };
            let report = roundtrip(&m)?;
            Ok(Outcome::new(
                report.isomorphic(),
                report.to_string(),
                &report,
            ))
        }
        Command::Check { path } => {
            let Instance::RStructure(rs) = load(path, "rstructure")? else {
                unreachable!()
            };
            let report = check_conditions(&rs);
            Ok(Outcome::new(report.holds(), report.to_string(), &report))
        }
        Command::Enumerate { path, cap, dual } => {
            let Instance::Category(c) = load(path, "category")? else {
                unreachable!()
            };
            let found = enumerate_rstructures(&c, *cap)?.len();
            let mut text = format!("R-structures: {found}");
            let mut ok = true;
            let mut direct = None;
            if *dual {
                let n = enumerate_skew_structures(&c, *cap)?.len();
                text.push_str(&format!("\nmonoidales: {n}"));
                ok = n == found;
                direct = Some(n);
            }
            Ok(Outcome::new(
                ok,
                text,
                json!({ "rstructures": found, "monoidales": direct }),
            ))
        }
        Command::Nerve { path, depth } => {
            let Instance::Category(c) = load(path, "category")? else {
                unreachable!()
            };
            let n = nerve(&c, *depth)?;
            let violations = simp_validate(&n);
            let mut text = String::new();
            for (k, level) in n.levels().iter().enumerate() {
                let items: Vec<String> = level.iter().map(|e| e.to_string()).collect();
                text.push_str(&format!(
                    "level {k} ({}): {}\n",
                    level.len(),
                    items.join(" ")
                ));
            }
            text.push_str(&format!(
                "simplicial identities: {}",
                if violations.is_empty() {
                    "PASS"
                } else {
                    "FAIL"
                }
            ));
            let levels: Vec<Vec<Value>> = n
                .levels()
                .iter()
                .map(|l| l.iter().map(element_to_json).collect())
                .collect();
            Ok(Outcome::new(
                violations.is_empty(),
                text,
                json!({ "levels": levels, "violations": violations }),
            ))
        }
        Command::Dec { path, out } => {
            let Instance::Category(c) = load(path, "category")? else {
                unreachable!()
            };
            let (dec, _) = dec_cat(&c)?;
            let text = emit(&Instance::Category(dec), out)?;
            Ok(Outcome::new(true, text, json!({ "out": out })))
        }
        Command::FromMonoid { path, out } => {
            let Instance::Monoid(m) = load(path, "monoid")? else {
                unreachable!()
            };
            let text = emit(&Instance::Monoidale(monoid_to_monoidale(&m)), out)?;
            Ok(Outcome::new(true, text, json!({ "out": out })))
        }
        Command::FromCategory {
            path,
            restricted,
            out,
        } => {
            let Instance::Category(c) = load(path, "category")? else {
                unreachable!()
            };
            let m = if *restricted {
                restricted_unit_monoidale(&c)?
            } else {
                category_to_monoidale(&c)?
            };
            let text = emit(&Instance::Monoidale(m), out)?;
            Ok(Outcome::new(true, text, json!({ "out": out })))
        }
        Command::Fuzz { path, seed, count } => {
            let Instance::Monoidale(m) = load(path, "monoidale")? else {
                unreachable!()
            };
            let mut rows = Vec::new();
            let mut disagreements = 0;
            let mut wellformed = 0;
            for mutation in shuffled_mutations(&m, *seed).into_iter().take(*count) {
                let report = verify(&mutation.instance);
                if report.is_wellformed() {
                    wellformed += 1;
                }
                if !report.agree {
                    disagreements += 1;
                }
                let failing: Vec<String> = report.failing().iter().map(|a| a.to_string()).collect();
                rows.push(json!({
                    "mutation": mutation.to_string(),
                    "wellformed": report.is_wellformed(),
                    "failing": failing,
                    "agree": report.agree,
                }));
            }
            let text = format!(
                "mutations: {}\nwell-formed: {wellformed}\ndisagreements: {disagreements}",
                rows.len()
            );
            Ok(Outcome::new(
                disagreements == 0,
                text,
                json!({ "seed": seed, "mutations": rows, "disagreements": disagreements }),
            ))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AxiomsFail(_) | Error::ConditionsFail(_) => EXIT_FAILED,
        _ => EXIT_INPUT,
    }
}

/// Runs one command, writing its report to `out`, and returns the exit code.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match run_command(&cli.command) {
        Ok(outcome) => {
            let code = if outcome.ok { EXIT_OK } else { EXIT_FAILED };
            let written = match cli.format {
                Format::Text => writeln!(out, "{}", outcome.text),
                Format::Structured => writeln!(
                    out,
                    "{}",
                    json!({ "ok": outcome.ok, "exit": code, "report": outcome.report })
                ),
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = match cli.format {
                Format::Text => writeln!(err, "error: {e}"),
                Format::Structured => writeln!(
                    out,
                    "{}",
                    json!({ "ok": false, "exit": code, "error": e.to_string() })
                ),
            };
            code
        }
    }
}
