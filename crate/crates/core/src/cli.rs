//! The `acr` command line.
//!
//! ```text
//! acr solve --tsp a.tsp --alsp airland1.txt --runways 2 --repeats 10 --seed 1
//! acr oracle-check --tsp small.tsp
//! acr gen tsp-random --n 50 --seed 1
//! ```
//!
//! Exit codes: 0 success, 1 usage, 2 parse or validation failure, 3 internal
//! invariant failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generate;
use crate::harness;
use crate::io::config::{parse_config, GroupEntry, DEFAULT_CAPACITY};
use crate::io::report::{write_report, ReportFormat};
use crate::io::{airland, rh_panel, tsplib};
use crate::oracle;
use crate::problems::{Instance, ProblemKind};
use crate::reactor::{GroupSpec, ReactorConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Gap below which the reactor and the oracle are considered equal.
const GAP_EPS: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "acr", version, about = "Artificial chemical reactor for permutation problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the reactor on every given instance in one shared universe.
    Solve(SolveArgs),
    /// Compare the reactor against exhaustive search on small instances.
    OracleCheck(SolveArgs),
    /// Write a seeded synthetic instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// TOML run configuration; instances given on the command line are added to its groups.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// TSPLIB instance (repeatable).
    #[arg(long)]
    pub tsp: Vec<PathBuf>,
    /// OR-Library airland instance (repeatable).
    #[arg(long)]
    pub alsp: Vec<PathBuf>,
    /// Runway count for every --alsp instance.
    #[arg(long)]
    pub runways: Option<usize>,
    /// Radiation-hybrid panel (repeatable).
    #[arg(long)]
    pub rh: Vec<PathBuf>,
    /// Molecules per group for command-line instances.
    #[arg(long)]
    pub capacity: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    /// Overrides the configured seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Machine,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Machine => ReportFormat::Machine,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    /// Uniform points in the unit square, scaled by 1000.
    TspRandom {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Panel with a known best marker order 0..m-1.
    RhPlanted {
        #[arg(long)]
        markers: usize,
        #[arg(long)]
        hybrids: usize,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Landing problem in airland format.
    AlspRandom {
        #[arg(long)]
        aircraft: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Fully resolved inputs of a solve or oracle-check run.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub config: ReactorConfig,
    pub groups: Vec<GroupSpec>,
    pub repeats: usize,
    pub format: ReportFormat,
}

pub fn exit_code(err: &Error) -> i32 {
    match err.root() {
        Error::Usage(_) => EXIT_USAGE,
        Error::Parse { .. }
        | Error::Validation(_)
        | Error::Config(_)
        | Error::OracleRefused(_)
        | Error::Io(_) => EXIT_INPUT,
        Error::Contract(_) | Error::Invariant(_) => EXIT_INVARIANT,
        Error::InFile { .. } => unreachable!("root strips file tags"),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path.display().to_string()))
}

pub fn load_instance(kind: ProblemKind, path: &Path, runways: Option<usize>) -> Result<Instance> {
    let text = read(path)?;
    let parsed = match kind {
        ProblemKind::Tsp => tsplib::parse_tsplib(&text).map(Instance::Tsp),
        ProblemKind::Rh => rh_panel::parse_rh_panel(&text).map(Instance::Rh),
        ProblemKind::Alsp => airland::parse_airland(&text).and_then(|a| match runways {
            Some(r) => a.with_runways(r),
            None => Ok(a),
        })
        .map(Instance::Alsp),
    };
    parsed.map_err(|e| e.in_file(path.display().to_string()))
}

fn group_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

impl RunSpec {
    pub fn from_args(args: &SolveArgs) -> Result<RunSpec> {
        if args.repeats == 0 {
            return Err(Error::Usage("--repeats must be at least 1".into()));
        }
        let (mut config, mut entries) = match &args.config {
            Some(path) => {
                let file = parse_config(&read(path)?).map_err(|e| e.in_file(path.display().to_string()))?;
                // group paths in a config file are relative to the file
                let base = path.parent().unwrap_or(Path::new(""));
                let groups = file
                    .groups
                    .into_iter()
                    .map(|g| GroupEntry { path: base.join(&g.path), ..g })
                    .collect();
                (file.reactor, groups)
            }
            None => (ReactorConfig::default(), Vec::new()),
        };
        let capacity = args.capacity.unwrap_or(DEFAULT_CAPACITY);
        let cli_inputs = [(ProblemKind::Tsp, &args.tsp), (ProblemKind::Alsp, &args.alsp), (ProblemKind::Rh, &args.rh)];
        for (kind, paths) in cli_inputs {
            for path in paths {
                entries.push(GroupEntry {
                    kind,
                    path: path.clone(),
                    name: None,
                    capacity,
                    runways: if kind == ProblemKind::Alsp { args.runways } else { None },
                });
            }
        }
        if entries.is_empty() {
            return Err(Error::Usage("no instances given (use --tsp, --alsp, --rh or --config)".into()));
        }
        if let Some(seed) = args.seed {
            config.seed = seed;
        }
        config.validate()?;

        let mut groups: Vec<GroupSpec> = Vec::with_capacity(entries.len());
        for e in entries {
            let instance = load_instance(e.kind, &e.path, e.runways)?;
            let mut name = e.name.unwrap_or_else(|| group_name(&e.path));
            if groups.iter().any(|g| g.name == name) {
                name = format!("{name}#{}", groups.len());
            }
            groups.push(GroupSpec::new(name, instance, e.capacity));
        }
        Ok(RunSpec { config, groups, repeats: args.repeats, format: args.format.into() })
    }
}

pub fn cmd_solve(spec: &RunSpec) -> Result<String> {
    let doc = harness::run_batch(&spec.groups, &spec.config, spec.repeats)?;
    Ok(write_report(&doc, spec.format))
}

/// Runs the reactor and the oracle on every group. The text lists both bests
/// and their gap; the flag is false when the reactor claims a mass below the
/// exhaustive optimum, which can only mean a bug.
pub fn cmd_oracle_check(spec: &RunSpec) -> Result<(String, bool)> {
    let exact: Vec<_> = spec
        .groups
        .iter()
        .map(|g| oracle::solve_exact(&g.instance).map_err(|e| e.in_file(g.name.clone())))
        .collect::<Result<_>>()?;
    let doc = harness::run_batch(&spec.groups, &spec.config, spec.repeats)?;
    let mut out = String::new();
    let mut sane = true;
    let width = spec.groups.iter().map(|g| g.name.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(out, "{:<width$}  {:>14}  {:>14}  {:>12}  status", "group", "oracle", "acr", "gap");
    for (summary, ex) in doc.groups.iter().zip(&exact) {
        let gap = summary.best_mass - ex.best_mass;
        let status = if gap < -GAP_EPS {
            sane = false;
            "below-oracle"
        } else if gap <= GAP_EPS {
            "optimal"
        } else {
            "gap"
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:>14.4}  {:>14.4}  {:>12.4}  {status}",
            summary.name, ex.best_mass, summary.best_mass, gap
        );
    }
    Ok((out, sane))
}

pub fn cmd_gen(kind: &GenKind) -> Result<String> {
    let usage = |e: Error| match e {
        Error::Validation(m) => Error::Usage(m),
        other => other,
    };
    match *kind {
        GenKind::TspRandom { n, seed } => generate::tsp_random(n, seed).map(|t| tsplib::write_tsplib(&t)),
        GenKind::RhPlanted { markers, hybrids, noise, seed } => {
            generate::rh_planted(markers, hybrids, noise, seed).map(|p| rh_panel::write_rh_panel(&p))
        }
        GenKind::AlspRandom { aircraft, seed } => generate::alsp_random(aircraft, seed).map(|a| airland::write_airland(&a)),
    }
    .map_err(usage)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::from(e).in_file(path.display().to_string())),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Executes a parsed command line and returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Solve(args) => RunSpec::from_args(args)
            .and_then(|spec| cmd_solve(&spec))
            .and_then(|text| emit(&text, args.out.as_deref()))
            .map(|_| EXIT_OK),
        Command::OracleCheck(args) => RunSpec::from_args(args)
            .and_then(|spec| cmd_oracle_check(&spec))
            .and_then(|(text, sane)| {
                emit(&text, args.out.as_deref())?;
                Ok(if sane { EXIT_OK } else { EXIT_INVARIANT })
            }),
        Command::Gen(args) => cmd_gen(&args.kind)
            .and_then(|text| emit(&text, args.out.as_deref()))
            .map(|_| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("acr: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() { EXIT_USAGE } else { EXIT_OK }
        }
    }
}
