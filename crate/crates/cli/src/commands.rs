//! Command implementations shared by the binary and the integration tests.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use qproc_core::builtins;
use qproc_core::classical::{classical_equivalent, verify_equivalence};
use qproc_core::generator::{MeasurementProtocol, QuantumGenerator};
use qproc_core::infotheory::{analyze_with, default_l_max, AnalyzeOptions};
use qproc_core::process::{
    empirical_distribution, sample_trajectory, DEFAULT_MAX_LIVE_PREFIXES, DEFAULT_PRUNE_TOL,
};

use crate::report;
use crate::specfile::GeneratorSpec;

/// Environment variable capping live enumeration prefixes.
pub const MAX_PREFIXES_ENV: &str = "QPROC_MAX_PREFIXES";

/// Error categories, each with a fixed exit code and a one-line rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Io(String),
    Resource(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn category(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
            CliError::Resource(_) => "resource",
            CliError::Numerical(_) => "numerical",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Validation(m)
            | CliError::Io(m)
            | CliError::Resource(m)
            | CliError::Numerical(m) => m,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Single machine-parsable line.
        let flat = self.message().replace('\n', "; ");
        write!(f, "error[{}]: {}", self.category(), flat)
    }
}

impl From<qproc_core::Error> for CliError {
    fn from(e: qproc_core::Error) -> Self {
        use qproc_core::Error::*;
        match e {
            PrefixCapExceeded { .. } => CliError::Resource(e.to_string()),
            EigenNoConvergence { .. }
            | StationarityViolated { .. }
            | DegenerateOutcome { .. }
            | NotNormalized { .. }
            | CurveOrigin { .. }
            | CurveShape { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Common knobs collected from flags and the environment.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub l_max: Option<usize>,
    pub prune_tol: f64,
    pub seed: u64,
    pub steps: usize,
    pub out_dir: PathBuf,
    pub max_live_prefixes: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            l_max: None,
            prune_tol: DEFAULT_PRUNE_TOL,
            seed: 1,
            steps: 100_000,
            out_dir: PathBuf::from("."),
            max_live_prefixes: DEFAULT_MAX_LIVE_PREFIXES,
        }
    }
}

/// Reads the prefix cap from the environment, defaulting when unset.
pub fn max_prefixes_from_env() -> Result<usize, CliError> {
    match std::env::var(MAX_PREFIXES_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{MAX_PREFIXES_ENV} must be a positive integer, got `{text}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_LIVE_PREFIXES),
    }
}

/// A generator plus protocol, plus the stem used for output file names.
pub struct Target {
    pub name: String,
    pub generator: QuantumGenerator,
    pub protocol: MeasurementProtocol,
}

/// Loads a builtin (`--example`) or a spec file (`--spec`).
pub fn load_target(example: Option<&str>, spec: Option<&Path>) -> Result<Target, CliError> {
    match (example, spec) {
        (Some(name), None) => {
            let (generator, protocol) = builtins::builtin(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown builtin `{name}`; run `qproc examples` for the list"
                ))
            })?;
            Ok(Target {
                name: name.to_string(),
                generator,
                protocol,
            })
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let spec = GeneratorSpec::parse(&text)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let (generator, protocol) = spec
                .build()
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "spec".to_string());
            let name = stem
                .chars()
                .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
                .collect();
            Ok(Target {
                name,
                generator,
                protocol,
            })
        }
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--example and --spec are mutually exclusive".to_string(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --example or --spec is required".to_string(),
        )),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// `analyze`: summary to stdout, summary + entropy-curve table to files.
pub fn cmd_analyze(target: &Target, config: &RunConfig) -> Result<(), CliError> {
    let l_max = config
        .l_max
        .unwrap_or_else(|| default_l_max(target.generator.dim()));
    if l_max == 0 {
        return Err(CliError::Usage("--lmax must be at least 1".to_string()));
    }
    let mut options = AnalyzeOptions::new(l_max);
    options.prune_tol = config.prune_tol;
    options.max_live_prefixes = config.max_live_prefixes;
    let report = analyze_with(&target.generator, &target.protocol, &options)?;

    let summary = report::summary_text(&report);
    print!("{summary}");
    write_file(
        &config.out_dir.join(format!("{}_summary.txt", target.name)),
        &summary,
    )?;
    write_file(
        &config.out_dir.join(format!("{}_curve.csv", target.name)),
        &report::curve_csv(&report),
    )?;
    Ok(())
}

/// `sample`: seeded trajectory plus an empirical block table.
pub fn cmd_sample(target: &Target, config: &RunConfig) -> Result<(), CliError> {
    if config.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".to_string()));
    }
    let block = config.l_max.unwrap_or(4);
    if block == 0 {
        return Err(CliError::Usage("--lmax must be at least 1".to_string()));
    }
    if config.steps < block {
        return Err(CliError::Validation(format!(
            "--steps {} is smaller than the block length {block}",
            config.steps
        )));
    }

    let trajectory = sample_trajectory(
        &target.generator,
        &target.protocol,
        config.steps,
        config.seed,
    )?;
    let alphabet = target.generator.alphabet();
    let line = trajectory
        .symbols()
        .iter()
        .map(|&s| alphabet[usize::from(s)].as_str())
        .collect::<Vec<_>>()
        .join(" ");
    write_file(
        &config
            .out_dir
            .join(format!("{}_trajectory.txt", target.name)),
        &format!("{line}\n"),
    )?;

    let empirical = empirical_distribution(&trajectory, block)?;
    write_file(
        &config.out_dir.join(format!("{}_blocks.csv", target.name)),
        &report::empirical_csv(&empirical, alphabet),
    )?;

    println!(
        "sampled {} symbols from {} (pattern {}, seed {}, initial state {}); {} distinct length-{block} blocks",
        config.steps,
        target.name,
        target.protocol,
        config.seed,
        trajectory.initial_state_index(),
        empirical.support_size(),
    );
    Ok(())
}

/// `compare`: classical-equivalent matrices and the worst word-probability gap.
pub fn cmd_compare(target: &Target, config: &RunConfig) -> Result<(), CliError> {
    let l_max = config.l_max.unwrap_or(12);
    let effective = target.generator.effective(&target.protocol)?;
    let cg = classical_equivalent(&effective)?;
    let gap = verify_equivalence(&effective, &cg, l_max)?;
    print!(
        "{}",
        report::compare_text(
            &target.name,
            &target.protocol.to_string(),
            &cg,
            l_max,
            gap
        )
    );
    Ok(())
}

/// `examples`: the builtin catalogue.
pub fn cmd_examples() {
    for (name, description) in builtins::BUILTIN_NAMES
        .iter()
        .zip(builtins::BUILTIN_DESCRIPTIONS)
    {
        println!("{name:<16} {description}");
    }
}
