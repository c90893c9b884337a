use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gravtangle_core::measures::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "gravtangle", version, about = "Gravity-induced multiqubit entanglement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regenerate table or figure data and check it against the published values.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        /// Figure panel for fig7 and fig8.
        #[arg(long, value_enum, default_value_t = Panel::Map)]
        panel: Panel,
        #[command(flatten)]
        opts: Opts,
    },
    /// Inspect a single configuration.
    Analyze {
        #[arg(value_enum)]
        what: Analysis,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Panel {
    /// Grid over (Δφ₂, Δφ₃).
    Map,
    /// Series over the interaction time.
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Phases,
    Build,
    Classify,
    Gm,
    Negativity,
    GhzConstruct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Symmetric,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Main,
    Backup,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Number of masses (qubits).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Neighbour spacing, m.
    #[arg(long, default_value_t = 200e-6)]
    pub d: f64,
    /// Split width, m. Overrides --l-over-d.
    #[arg(long)]
    pub l: Option<f64>,
    /// Split width in units of d.
    #[arg(long, default_value_t = 20.0)]
    pub l_over_d: f64,
    /// Mass of every particle, kg.
    #[arg(long, default_value_t = 1e-14)]
    pub mass: f64,
    /// Interaction time, s.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Start of the τ sweep, s.
    #[arg(long, default_value_t = 0.0)]
    pub tau_min: f64,
    /// End of the τ sweep, s (default 60, or 20 for fig9).
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long, value_enum, default_value_t = GeometryArg::Symmetric)]
    pub geometry: GeometryArg,
    #[arg(long, value_enum, default_value_t = Switch::Off)]
    pub corrections: Switch,
    /// Points per axis (default depends on the target).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Random restarts of the general optimizer.
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, env = "GRAVTANGLE_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Optimizer convergence threshold on Λ².
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dimensionless units: G m² τ / ħ = 1 and d = 1.
    #[arg(long)]
    pub unit_scale: bool,
    /// CSV of `bitstring,phase_rad` rows giving every branch phase.
    #[arg(long)]
    pub phase_file: Option<PathBuf>,
    /// Member of the recursive GHZ-type pair.
    #[arg(long, value_enum, default_value_t = WhichArg::Main)]
    pub which: WhichArg,
    /// Relative phase of the {001,011,100,110} class (with --dphi3).
    #[arg(long, requires = "dphi3", allow_hyphen_values = true)]
    pub dphi2: Option<f64>,
    /// Relative phase of the {010,101} class (with --dphi2).
    #[arg(long, requires = "dphi2", allow_hyphen_values = true)]
    pub dphi3: Option<f64>,
}
