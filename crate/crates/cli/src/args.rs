// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Decoherent quantum walk on the hypercube: sweeps, queries and validation"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Each may also be given in the
/// `--config` file as `key = value`; flags win over the file.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Decoherence rate γ.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    /// Hopping amplitude Δ [default: 1].
    #[arg(long, global = true)]
    pub delta: Option<f64>,

    /// Polar angle of the decoherence axis.
    #[arg(long, global = true)]
    pub theta: Option<f64>,

    /// Azimuth of the decoherence axis [default: 0].
    #[arg(long, global = true)]
    pub phi: Option<f64>,

    /// Decoherence axis as `x,y,z`; normalized before use [default: 0,0,1].
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub axis: Option<String>,

    /// Randomize the decoherence axis (depolarizing channel).
    #[arg(long, global = true)]
    pub depolarizing: bool,

    /// Mixing threshold ε [default: 0.001].
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for stochastic checks [default: 1].
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads; 0 picks the number of cores [default: 0].
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Output format [default: csv for datasets, json for reports].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// File of `key = value` lines supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch trajectory from |0⟩ as columns t, x, y, z.
    Dynamics(DynamicsArgs),
    /// Region and discriminant over a (γ/Δ, r_x) grid.
    PhaseDiagram(PhaseArgs),
    /// Classical mixing time over Fibonacci-sphere axes.
    SphereMap(SphereArgs),
    /// Classical mixing time over log-spaced γ/Δ for one axis.
    GammaSweep(SweepArgs),
    /// Register mixing report.
    Register(RegisterArgs),
    /// Oracle cross-checks with a pass/fail report.
    Validate,
}

#[derive(Debug, Clone, Args)]
pub struct DynamicsArgs {
    /// Final time [default: 10].
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Time step [default: 0.01].
    #[arg(long)]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    /// Smallest γ/Δ [default: 0.1].
    #[arg(long)]
    pub ratio_min: Option<f64>,

    /// Largest γ/Δ [default: 10].
    #[arg(long)]
    pub ratio_max: Option<f64>,

    /// Number of log-spaced γ/Δ values [default: 100].
    #[arg(long)]
    pub ratio_points: Option<usize>,

    /// Explicit γ/Δ values; replaces the log-spaced range.
    #[arg(long, value_delimiter = ',')]
    pub ratios: Option<Vec<f64>>,

    /// Number of r_x values on [−1, 1] [default: 201].
    #[arg(long)]
    pub rx_points: Option<usize>,

    /// Boundary-curve file [default: next to --out with a `.boundary` suffix].
    #[arg(long)]
    pub boundary_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SphereArgs {
    /// Number of Fibonacci-sphere axes [default: 1000].
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Smallest γ/Δ [default: 0.01].
    #[arg(long)]
    pub ratio_min: Option<f64>,

    /// Largest γ/Δ [default: 100].
    #[arg(long)]
    pub ratio_max: Option<f64>,

    /// Number of log-spaced γ/Δ values [default: 161].
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RegisterArgs {
    /// Register sizes, comma separated [default: 1].
    #[arg(long, value_delimiter = ',')]
    pub qubits: Option<Vec<u64>>,

    /// Cross-check against the dense density-matrix oracle (n ≤ 3).
    #[arg(long)]
    pub oracle: bool,

    /// Samples in the distance trace [default: 50].
    #[arg(long)]
    pub trace_points: Option<usize>,
}
