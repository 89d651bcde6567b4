//! Command-line front end. Every subcommand builds a list of checks, runs it
//! through [`run_instance`], prints the JSON report on stdout and a summary
//! on stderr, and exits with 0 (all pass), 1 (a violation) or 2 (malformed
//! input or an unresolved reference).

pub mod load;
pub mod run;
pub mod schema;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::quantale::QuantaleKind;

pub use run::{run_instance, CheckResult, Report, Status, Summary};
pub use schema::{CheckKind, CheckSpec, InstanceFile};

use schema::{MapRef, MapSpec, QuantaleSpec};

#[derive(Debug, Parser)]
#[command(
    name = "quasivar",
    version,
    about = "Exhaustive finite-model checks for enriched categories and affine sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check listed in an instance file.
    Check { file: PathBuf },
    /// Run a built-in exhaustive suite.
    Enumerate {
        suite: Suite,
        /// Largest carrier to enumerate.
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Seed for the sampled suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled structures per sampled size.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Reflect a comma object onto its monic part, optionally verifying the
    /// universal property against a target.
    Reflect {
        file: PathBuf,
        object: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Search for a split structure on a parallel pair `f, g: X → Y`.
    SplitPair {
        /// Images of `f`, comma separated.
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        /// Images of `g`, comma separated.
        #[arg(long, value_delimiter = ',')]
        g: Vec<usize>,
        /// Size of `Y`.
        #[arg(long)]
        target: usize,
        /// Size of `V` in the absoluteness probe `V^(-)`.
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Zariski closure of a subset of an affine set declared in a file.
    Zariski {
        file: PathBuf,
        affine_set: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    QuantaleLaws,
    RoundtripIso,
    TopologyCensus,
}

pub fn read_instance_file(path: &Path) -> Result<InstanceFile> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::MalformedInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}

fn builtin_quantale(kind: QuantaleKind, n: usize) -> QuantaleSpec {
    QuantaleSpec {
        kind: Some(kind),
        n: Some(n),
        ..QuantaleSpec::default()
    }
}

/// The instance file behind `enumerate <suite>`.
pub fn suite_instance(suite: Suite, max_size: usize, seed: u64, samples: usize) -> InstanceFile {
    let mut file = InstanceFile::default();
    match suite {
        Suite::QuantaleLaws => {
            file.quantales
                .insert("boolean".into(), builtin_quantale(QuantaleKind::Boolean, 1));
            for n in 1..=max_size {
                file.quantales.insert(
                    format!("lukasiewicz_{n}"),
                    builtin_quantale(QuantaleKind::Lukasiewicz, n),
                );
                file.quantales.insert(
                    format!("truncated_addition_{n}"),
                    builtin_quantale(QuantaleKind::TruncatedAddition, n),
                );
            }
            file.checks = file
                .quantales
                .keys()
                .map(|q| CheckSpec::new(CheckKind::QuantaleLaws { quantale: q.clone() }))
                .collect();
        }
        Suite::RoundtripIso => {
            file.quantales
                .insert("boolean".into(), builtin_quantale(QuantaleKind::Boolean, 1));
            file.quantales
                .insert("lukasiewicz_2".into(), builtin_quantale(QuantaleKind::Lukasiewicz, 2));
            for q in ["boolean", "lukasiewicz_2"] {
                for points in 1..=max_size {
                    let sampled = points >= 3;
                    file.checks.push(CheckSpec::new(CheckKind::RoundtripCensus {
                        quantale: q.into(),
                        points,
                        samples: sampled.then_some(samples),
                        seed: sampled.then_some(seed),
                        count: None,
                    }));
                }
                for points in 1..=max_size.min(2) {
                    file.checks.push(CheckSpec::new(CheckKind::VccdCensus {
                        quantale: q.into(),
                        points,
                    }));
                }
            }
        }
        Suite::TopologyCensus => {
            for points in 0..=max_size.min(crate::instances::MAX_CENSUS_POINTS) {
                file.checks.push(CheckSpec::new(CheckKind::TopologyCensus {
                    points,
                    count: None,
                    t0: None,
                }));
                file.checks
                    .push(CheckSpec::new(CheckKind::ClosureSystemCensus { points, count: None }));
            }
        }
    }
    file
}

fn emit(report: &Report) -> i32 {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{json}");
    let mut err = std::io::stderr().lock();
    if let Some(msg) = &report.error {
        let _ = writeln!(err, "error: {msg}");
    }
    for c in &report.checks {
        if c.status != Status::Pass {
            let label = c.name.as_deref().unwrap_or(&c.op);
            let why = c
                .error
                .clone()
                .or_else(|| c.violations.first().map(|v| format!("{} at {:?}", v.law, v.witness)))
                .unwrap_or_else(|| format!("expected {}, found {:?}", c.expected, c.holds));
            let _ = writeln!(err, "{:?} #{} {label}: {why}", c.status, c.index);
        }
    }
    let s = &report.summary;
    let _ = writeln!(
        err,
        "{} checks: {} passed, {} failed, {} skipped ({:.1} ms)",
        s.total, s.passed, s.failed, s.skipped, report.wall_time_ms
    );
    report.exit_code
}

fn load_or_report(path: &Path) -> std::result::Result<InstanceFile, Report> {
    read_instance_file(path).map_err(|e| Report::malformed(&e, Instant::now()))
}

/// Runs a parsed command line and returns the process exit status.
pub fn execute(cli: Cli) -> i32 {
    let report = match cli.command {
        Command::Check { file } => match load_or_report(&file) {
            Ok(instance) => run_instance(&instance),
            Err(report) => report,
        },
        Command::Enumerate {
            suite,
            max_size,
            seed,
            samples,
        } => run_instance(&suite_instance(suite, max_size, seed, samples)),
        Command::Reflect { file, object, target } => match load_or_report(&file) {
            Ok(mut instance) => {
                instance.checks = vec![CheckSpec::new(CheckKind::Epireflect {
                    comma_object: object.clone(),
                    reflected_size: None,
                })];
                if let Some(target) = target {
                    instance.checks.push(CheckSpec::new(CheckKind::ReflectionUniversal {
                        comma_object: object,
                        target,
                    }));
                }
                run_instance(&instance)
            }
            Err(report) => report,
        },
        Command::SplitPair { f, g, target, power } => {
            let mut instance = InstanceFile::default();
            instance.checks.push(CheckSpec::new(CheckKind::SplitPair {
                f: MapRef::Inline(MapSpec { target, image: f }),
                g: MapRef::Inline(MapSpec { target, image: g }),
                power: Some(power),
            }));
            run_instance(&instance)
        }
        Command::Zariski {
            file,
            affine_set,
            subset,
        } => match load_or_report(&file) {
            Ok(mut instance) => {
                instance.checks = vec![CheckSpec::new(CheckKind::ZariskiClosure {
                    affine_set,
                    subset,
                    equals: None,
                })];
                run_instance(&instance)
            }
            Err(report) => report,
        },
    };
    emit(&report)
}
