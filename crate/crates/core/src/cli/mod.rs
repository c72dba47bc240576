//! Command-line front end: argument parsing, config merging, dispatch and
//! exit codes.

mod args;
mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

pub use args::{Cli, Command};
pub use config::{ConfigError, Resolution, RunConfig};
pub use output::{OutputDir, OUT_ENV};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PRECONDITION: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const USAGE: i32 = 64;
    pub const DATA: i32 = 65;
}

#[derive(Debug)]
pub enum Failure {
    UnknownCommand(String),
    Config(ConfigError),
    Run(crate::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::UnknownCommand(_) => exit::USAGE,
            Failure::Config(_) => exit::DATA,
            Failure::Run(e) if e.is_precondition() => exit::PRECONDITION,
            Failure::Run(_) => exit::NUMERICAL,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::UnknownCommand(c) if c.is_empty() => write!(f, "no command given"),
            Failure::UnknownCommand(c) => write!(f, "unknown command {c:?}"),
            Failure::Config(e) => write!(f, "{e}"),
            Failure::Run(e) => write!(f, "{e}"),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Run(e)
    }
}

/// Runtime settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub quiet: bool,
}

fn without_nulls(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().filter(|(_, v)| !v.is_null()).collect(),
        _ => Map::new(),
    }
}

pub(crate) fn typed<T: DeserializeOwned>(params: Map<String, Value>) -> Result<T, Failure> {
    serde_json::from_value(Value::Object(params))
        .map_err(|e| Failure::Config(ConfigError::Malformed(e.to_string())))
}

/// Builds the effective configuration from the parsed command line.
pub fn resolve(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p).map_err(Failure::Config)?,
        None => RunConfig::default(),
    };
    cfg.normalize().map_err(Failure::Config)?;
    if let Some(cmd) = &cli.command {
        let (name, params) = cmd.parts();
        if !cfg.command.is_empty() && cfg.command != name {
            return Err(Failure::Config(ConfigError::Malformed(format!(
                "config is for {:?} but the command line asks for {name:?}",
                cfg.command
            ))));
        }
        cfg.command = name.to_string();
        cfg.override_with(without_nulls(params))
            .map_err(Failure::Config)?;
    }
    if cfg.command.is_empty() {
        return Err(Failure::UnknownCommand(String::new()));
    }
    if let Some(o) = &cli.out {
        cfg.output_dir = Some(o.display().to_string());
    }
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.workers.is_some() {
        cfg.workers = cli.workers;
    }
    Ok(cfg)
}

fn output_dir(cfg: &RunConfig) -> PathBuf {
    if let Some(d) = &cfg.output_dir {
        return PathBuf::from(d);
    }
    let root = std::env::var_os(OUT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("periwave-out"));
    root.join(cfg.command.replace(' ', "-"))
}

/// Runs a resolved configuration and returns the output directory.
pub fn execute(cfg: &RunConfig, quiet: bool) -> Result<PathBuf, Failure> {
    let ctx = Context {
        out_dir: output_dir(cfg),
        seed: cfg.seed.unwrap_or(0),
        quiet,
    };
    let job = || commands::dispatch(cfg, &ctx);
    match cfg.workers {
        Some(w) if w > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Failure::Run(crate::Error::InvalidParameter(e.to_string())))?;
            pool.install(job)
        }
        Some(_) => Err(Failure::Run(crate::Error::InvalidParameter(
            "workers must be positive".into(),
        ))),
        None => job(),
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    exit::OK
                }
                _ => exit::USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = resolve(&cli).and_then(|cfg| execute(&cfg, cli.quiet));
    match result {
        Ok(dir) => {
            if !cli.quiet {
                println!("outputs in {}", dir.display());
            }
            exit::OK
        }
        Err(f) => {
            eprintln!("periwave: {f}");
            f.exit_code()
        }
    }
}
