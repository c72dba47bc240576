use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(
    name = "periwave",
    version,
    about = "Periodic travelling waves of the regularized Benjamin-Ono and BBM equations"
)]
pub struct Cli {
    /// JSON run configuration; flags given here override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory for this run.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Only report errors.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a travelling-wave profile.
    #[command(subcommand)]
    Wave(WaveCmd),
    /// Spectrum of the truncated linearized operator.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Discrete PF(2) test of a coefficient sequence.
    #[command(subcommand)]
    Pf2(Pf2Cmd),
    /// Constrained minima and coercivity for the rBO linearization.
    #[command(name = "lemma71")]
    Constrained(ConstrainedArgs),
    /// Time evolution with RK4.
    #[command(subcommand)]
    Evolve(EvolveCmd),
    /// Fixed-point solve of the integral equation.
    Picard(PicardArgs),
    /// Orbital-stability runs.
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Ill-posedness witnesses.
    #[command(subcommand)]
    Illposed(IllposedCmd),
    /// Stability index -dF/dc.
    #[command(subcommand)]
    Index(IndexCmd),
}

#[derive(Debug, Subcommand)]
pub enum WaveCmd {
    Rbo(RboWaveArgs),
    Bbm(BbmWaveArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCmd {
    Rbo(RboSpectrumArgs),
    Bbm(BbmSpectrumArgs),
}

#[derive(Debug, Subcommand)]
pub enum Pf2Cmd {
    /// `exp(-eta |n|)`.
    Exp(Pf2ExpArgs),
    /// rBO wave coefficients.
    Rbo(Pf2RboArgs),
    /// BBM csch kernel.
    Bbm(Pf2BbmArgs),
    /// `1 + |n|`, which is not PF(2).
    Linear(Pf2LinearArgs),
}

#[derive(Debug, Subcommand)]
pub enum EvolveCmd {
    Rbo(RboEvolveArgs),
    Bbm(BbmEvolveArgs),
}

#[derive(Debug, Subcommand)]
pub enum StabilityCmd {
    Rbo(RboStabilityArgs),
    Bbm(BbmStabilityArgs),
}

#[derive(Debug, Subcommand)]
pub enum IllposedCmd {
    /// Periodic ratio growth and slope fit.
    Scan(ScanArgs),
    /// Lower bound on the line.
    Nonperiodic(NonperiodicArgs),
}

#[derive(Debug, Subcommand)]
pub enum IndexCmd {
    Rbo(RboIndexArgs),
    Bbm(BbmIndexArgs),
}

macro_rules! params {
    ($(#[$m:meta])* $name:ident { $($(#[$fm:meta])* $field:ident : $ty:ty),* $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $($(#[$fm])* pub $field: Option<$ty>,)*
        }
    };
}

params!(RboWaveArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
});

params!(BbmWaveArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    /// `plus` or `minus`.
    #[arg(long)]
    branch: String,
});

params!(RboSpectrumArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(BbmSpectrumArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(Pf2ExpArgs {
    #[arg(long)]
    eta: f64,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(Pf2RboArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(Pf2BbmArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(Pf2LinearArgs {
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(ConstrainedArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    m: usize,
});

params!(RboEvolveArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    /// Final time; defaults to one spatial period of travel.
    #[arg(long = "T")]
    #[serde(rename = "T")]
    t: f64,
    #[arg(long)]
    dt: f64,
    /// Amplitude of an added first-harmonic cosine.
    #[arg(long)]
    amp: f64,
    /// Time between stored states.
    #[arg(long)]
    record: f64,
});

params!(BbmEvolveArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    #[arg(long = "T")]
    #[serde(rename = "T")]
    t: f64,
    #[arg(long)]
    dt: f64,
    #[arg(long)]
    amp: f64,
    #[arg(long)]
    record: f64,
});

params!(PicardArgs {
    /// Target `H^1` norm of the initial data.
    #[arg(long)]
    norm: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    /// Spatial period.
    #[arg(long = "P")]
    #[serde(rename = "P")]
    p: f64,
    /// Final time; defaults to the guaranteed contraction window.
    #[arg(long = "T")]
    #[serde(rename = "T")]
    t: f64,
    /// Iterate even beyond the guaranteed window.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    force: bool,
    /// Step of the RK4 comparison run.
    #[arg(long)]
    dt: f64,
});

params!(RboStabilityArgs {
    #[arg(long)] c: f64,
    #[arg(long = "L")] #[serde(rename = "L")] l: f64,
    #[arg(long = "N")] #[serde(rename = "N")] n: usize,
    /// Comma-separated perturbation sizes.
    #[arg(long, value_delimiter = ',')] delta: Vec<f64>,
    #[arg(long = "T")] #[serde(rename = "T")] t: f64,
    #[arg(long)] dt: f64,
    #[arg(long)] every: f64,
    /// Harmonic of the cosine perturbation.
    #[arg(long)] harmonic: u32,
    /// `half`, `h1` or `weighted`.
    #[arg(long)] norm: String,
});

params!(BbmStabilityArgs {
    #[arg(long = "L")] #[serde(rename = "L")] l: f64,
    #[arg(long)] k: f64,
    #[arg(long = "N")] #[serde(rename = "N")] n: usize,
    #[arg(long, value_delimiter = ',')] delta: Vec<f64>,
    #[arg(long = "T")] #[serde(rename = "T")] t: f64,
    #[arg(long)] dt: f64,
    #[arg(long)] every: f64,
    #[arg(long)] harmonic: u32,
    #[arg(long)] norm: String,
});

params!(ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long)]
    t: f64,
    #[arg(long = "Nmin")]
    #[serde(rename = "Nmin")]
    n_min: u32,
    #[arg(long = "Nmax")]
    #[serde(rename = "Nmax")]
    n_max: u32,
});

params!(NonperiodicArgs {
    #[arg(long, allow_hyphen_values = true)] s: f64,
    #[arg(long)] eps: f64,
    /// Comma-separated list of `N`.
    #[arg(long = "Ns", value_delimiter = ',')] #[serde(rename = "Ns")] ns: Vec<u32>,
    /// Random samples for the resonance bound.
    #[arg(long)] samples: u64,
});

params!(RboIndexArgs {
    #[arg(long)]
    c: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    /// Finite-difference step in `c`.
    #[arg(long)]
    h: f64,
});

params!(BbmIndexArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    l: f64,
    #[arg(long)]
    k: f64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    n: usize,
    #[arg(long)]
    h: f64,
});

fn value(a: &impl Serialize) -> Value {
    serde_json::to_value(a).expect("argument structs serialize")
}

impl Command {
    /// Command path and the flags that were given.
    pub fn parts(&self) -> (&'static str, Value) {
        match self {
            Command::Wave(WaveCmd::Rbo(a)) => ("wave rbo", value(a)),
            Command::Wave(WaveCmd::Bbm(a)) => ("wave bbm", value(a)),
            Command::Spectrum(SpectrumCmd::Rbo(a)) => ("spectrum rbo", value(a)),
            Command::Spectrum(SpectrumCmd::Bbm(a)) => ("spectrum bbm", value(a)),
            Command::Pf2(Pf2Cmd::Exp(a)) => ("pf2 exp", value(a)),
            Command::Pf2(Pf2Cmd::Rbo(a)) => ("pf2 rbo", value(a)),
            Command::Pf2(Pf2Cmd::Bbm(a)) => ("pf2 bbm", value(a)),
            Command::Pf2(Pf2Cmd::Linear(a)) => ("pf2 linear", value(a)),
            Command::Constrained(a) => ("lemma71", value(a)),
            Command::Evolve(EvolveCmd::Rbo(a)) => ("evolve rbo", value(a)),
            Command::Evolve(EvolveCmd::Bbm(a)) => ("evolve bbm", value(a)),
            Command::Picard(a) => ("picard", value(a)),
            Command::Stability(StabilityCmd::Rbo(a)) => ("stability rbo", value(a)),
            Command::Stability(StabilityCmd::Bbm(a)) => ("stability bbm", value(a)),
            Command::Illposed(IllposedCmd::Scan(a)) => ("illposed scan", value(a)),
            Command::Illposed(IllposedCmd::Nonperiodic(a)) => ("illposed nonperiodic", value(a)),
            Command::Index(IndexCmd::Rbo(a)) => ("index rbo", value(a)),
            Command::Index(IndexCmd::Bbm(a)) => ("index bbm", value(a)),
        }
    }
}
