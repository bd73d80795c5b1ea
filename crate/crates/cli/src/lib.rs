//! Command-line pipelines: sample, generate, profile, validate, report.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::LevelFilter;
use simprof::artifact::ArtifactHeader;
use simprof::{Error, Result};

pub mod commands;
pub mod config;
pub mod providers;

use config::RunConfig;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const PROVIDER: i32 = 3;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ConfigInvalid(_)
        | Error::BudgetExceedsCorpus { .. }
        | Error::MissingSlot(_)
        | Error::InvalidAxes(_)
        | Error::InvalidRuleSet(_)
        | Error::UnknownFeature(_)
        | Error::DegenerateTask { .. }
        | Error::MissingAnnotation { .. } => exit::CONFIG,
        e if e.is_provider_failure() => exit::PROVIDER,
        _ => exit::IO,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "simprof",
    version,
    about = "Reference-free fingerprints for German text simplifications"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for all outputs.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value = "warn")]
    pub log_level: LevelFilter,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cut excerpts from a corpus and pick a rule-diverse subset.
    Sample(commands::sample::SampleArgs),
    /// Simplify excerpts under every configuration.
    Generate(commands::generate::GenerateArgs),
    /// Compute fingerprints and the feature matrix.
    Profile(commands::profile::ProfileArgs),
    /// Run the distinguishability study.
    Validate(commands::validate::ValidateArgs),
    /// Aggregate fingerprints and draw spider charts.
    Report(commands::report::ReportArgs),
}

/// Settings shared by every command.
pub struct Context {
    pub config: RunConfig,
    pub config_hash: String,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Context {
    pub fn header(&self) -> ArtifactHeader {
        ArtifactHeader::new(self.config_hash.clone(), self.seed)
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    pub fn create(&self, name: &str) -> Result<BufWriter<File>> {
        Ok(BufWriter::new(File::create(self.out_path(name))?))
    }
}

pub fn open_input(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_config(global: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match &global.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.apply_env(|k| std::env::var(k).ok());
    if let Some(seed) = global.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<()> {
    let mut config = load_config(&cli.global)?;
    match &cli.command {
        Command::Sample(a) => a.apply(&mut config),
        Command::Validate(a) => a.apply(&mut config),
        _ => {}
    }
    config.validate()?;
    if let Some(jobs) = cli.global.jobs {
        // Fails only when a pool already exists, as in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    std::fs::create_dir_all(&cli.global.out_dir)?;
    let ctx = Context {
        config_hash: config.hash()?,
        seed: config.seed,
        config,
        out_dir: cli.global.out_dir.clone(),
    };
    match cli.command {
        Command::Sample(a) => commands::sample::run(&ctx, &a),
        Command::Generate(a) => commands::generate::run(&ctx, &a),
        Command::Profile(a) => commands::profile::run(&ctx, &a),
        Command::Validate(a) => commands::validate::run(&ctx, &a),
        Command::Report(a) => commands::report::run(&ctx, &a),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::CONFIG
            } else {
                exit::OK
            };
        }
    };
    let _ = env_logger::Builder::new()
        .filter_level(cli.global.log_level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
    match execute(cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            let code = exit_code(&e);
            let _ = writeln!(std::io::stderr(), "error: {e}");
            code
        }
    }
}
