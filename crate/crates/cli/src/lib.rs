//! `plext extend` builds a map from an instance file; `plext verify`
//! re-audits a saved map.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 the instance is not
//! non-expansive, 3 the sources span less than a triangle, 4 an audit failed
//! (or the construction could not produce a certifiable map). Errors are
//! also reported as one JSON object on standard error.

pub mod files;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use plext_core::extension::ExtensionError;
use plext_core::json::motion_to_json;
use plext_core::verification::{audit_all, AuditCheck, AuditConfig, AuditMode};
use plext_core::{extend_all, Motion, Rational};
use serde_json::{json, Value};

use files::{audit_to_json, instance_hash, map_file_to_json, parse_instance, parse_map_file, to_pretty};

/// Additive slack for `--mode approx` / `--verify approx`.
pub fn approx_tolerance() -> Rational {
    Rational::new(1.into(), 1_000_000_000.into())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("points {i} and {j} are farther apart in the target than in the source")]
    Violation { i: usize, j: usize },
    #[error("the sources span a {dimension}-dimensional hull")]
    DegenerateHull { dimension: u8, courtesy: Option<Motion> },
    #[error("audit failed: {}", .0.join(", "))]
    AuditFailure(Vec<String>),
    #[error("construction failed: {0}")]
    Construction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Usage(_) => 1,
            CliError::Violation { .. } => 2,
            CliError::DegenerateHull { .. } => 3,
            CliError::AuditFailure(_) | CliError::Construction(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
            CliError::Violation { .. } => "non_expansiveness_violation",
            CliError::DegenerateHull { .. } => "degenerate_hull",
            CliError::AuditFailure(_) => "audit_failure",
            CliError::Construction(_) => "construction_failure",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() });
        let obj = v.as_object_mut().expect("object");
        match self {
            CliError::Io { path, .. } => {
                obj.insert("path".into(), Value::from(path.display().to_string()));
            }
            CliError::Violation { i, j } => {
                obj.insert("i".into(), Value::from(*i));
                obj.insert("j".into(), Value::from(*j));
            }
            CliError::DegenerateHull { dimension, courtesy } => {
                obj.insert("dimension".into(), Value::from(*dimension));
                if let Some(m) = courtesy {
                    obj.insert("motion".into(), motion_to_json(m));
                }
            }
            CliError::AuditFailure(names) => {
                obj.insert("failed_checks".into(), Value::from(names.clone()));
            }
            _ => {}
        }
        v
    }
}

impl From<ExtensionError> for CliError {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::NonExpansivenessViolation { i, j } => CliError::Violation { i, j },
            ExtensionError::DegenerateHull { dimension, courtesy } => CliError::DegenerateHull { dimension, courtesy },
            ExtensionError::EmptyInstance | ExtensionError::LengthMismatch => CliError::Parse(e.to_string()),
            other => CliError::Construction(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Exact,
    Approx,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AuditModeArg {
    Exact,
    Approx,
}

#[derive(Debug, Parser)]
#[command(name = "plext", version, about = "Exact non-expansive piecewise-isometric extension of planar point maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a map from an instance file.
    Extend {
        #[arg(long)]
        input: PathBuf,
        /// Map file destination; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "exact")]
        verify: VerifyMode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-run all audits on a saved map file.
    Verify {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: AuditModeArg,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn audit_config(samples: usize, seed: u64, exact: bool) -> Result<AuditConfig, CliError> {
    let mode = if exact { AuditMode::Exact } else { AuditMode::Approximate(approx_tolerance()) };
    AuditConfig::new(samples, seed, mode).map_err(|e| CliError::Usage(e.to_string()))
}

fn failed(checks: &[AuditCheck]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
}

/// Writes the map file (and figure) even when an audit fails, so the
/// failing output can be inspected.
pub fn cmd_extend(
    input: &Path,
    output: Option<&Path>,
    svg_path: Option<&Path>,
    verify: VerifyMode,
    samples: usize,
    seed: u64,
    stdout: &mut dyn std::io::Write,
) -> Result<(), CliError> {
    let inst = parse_instance(&read(input)?)?;
    let cfg = match verify {
        VerifyMode::None => None,
        mode => Some(audit_config(samples, seed, mode == VerifyMode::Exact)?),
    };
    let f = extend_all(&inst)?;
    let report = cfg.as_ref().map(|c| audit_all(&f, &inst, c));
    let audit = report.as_ref().zip(cfg.as_ref()).map(|(r, c)| audit_to_json(r, &c.mode, c.sample_count, c.rng_seed));
    let text = to_pretty(&map_file_to_json(&inst, &f, audit));
    match output {
        Some(path) => write(path, &text)?,
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?,
    }
    if let Some(path) = svg_path {
        write(path, &svg::render_svg(&f, &inst))?;
    }
    match report {
        Some(r) if !r.all_passed() => Err(CliError::AuditFailure(failed(&r.checks))),
        _ => Ok(()),
    }
}

/// Prints the audit report; the instance hash is checked as one more audit.
pub fn cmd_verify(
    map: &Path,
    instance: &Path,
    samples: usize,
    seed: u64,
    mode: AuditModeArg,
    stdout: &mut dyn std::io::Write,
) -> Result<(), CliError> {
    let file = parse_map_file(&read(map)?)?;
    let inst = parse_instance(&read(instance)?)?;
    let cfg = audit_config(samples, seed, mode == AuditModeArg::Exact)?;
    let mut report = audit_all(&file.map, &inst, &cfg);
    let hash_ok = file.instance_hash == instance_hash(&inst);
    report.checks.push(AuditCheck {
        name: "instance_hash".into(),
        passed: hash_ok,
        witness: None,
    });
    let text = to_pretty(&audit_to_json(&report, &cfg.mode, cfg.sample_count, cfg.rng_seed));
    stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::AuditFailure(failed(&report.checks)))
    }
}

/// Parses arguments, runs a command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit_code();
        }
    };
    let result = match cli.command {
        Command::Extend {
            input,
            output,
            svg,
            verify,
            samples,
            seed,
        } => cmd_extend(&input, output.as_deref(), svg.as_deref(), verify, samples, seed, stdout),
        Command::Verify {
            map,
            instance,
            samples,
            seed,
            mode,
        } => cmd_verify(&map, &instance, samples, seed, mode, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}
