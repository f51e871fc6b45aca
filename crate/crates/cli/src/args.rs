use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "crystal", version, about = "Checkerboard crystal growth on the square lattice")]
pub struct Cli {
    /// Comparison tolerance for floating-point runs; overrides CRYSTAL_TOL.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report the first-step nucleus, its limit polygon and the hypothesis checks.
    Nucleus(Target),
    /// Run the scheme from the origin cell and write trace.csv (and SVG frames).
    Evolve(EvolveArgs),
    /// Run the cross-engine and identity checks; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Print the limit set at time t.
    Limit(LimitArgs),
    /// Print the singular values of alpha down to a cutoff.
    Singular(SingularArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// linf | l1 | l2 | lp:<p> | elliptic:<a11>,<a12> | wl1:<w1>,<w2> | rectmax
    #[arg(long)]
    pub norm: String,
    /// Time-step parameter; "p/q" and decimals are read exactly for exact norms.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Args, Debug, Clone)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value = "auto", value_parser = ["closed_form", "mincut", "brute", "auto"])]
    pub engine: String,
    /// Constrained scheme (the default): cells are never removed.
    #[arg(long, conflicts_with = "unconstrained")]
    pub constrained: bool,
    #[arg(long)]
    pub unconstrained: bool,
    #[arg(long, default_value = "crystal-out")]
    pub out_dir: PathBuf,
    /// Write one SVG frame per step.
    #[arg(long)]
    pub render: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Restrict the suite to one norm (default: linf, l1 and l2).
    #[arg(long)]
    pub norm: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random instances per randomized check.
    #[arg(long, default_value_t = 24)]
    pub samples: usize,
    /// Swap the candidate engine for a deliberately broken one.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Minimize −Per − α·D instead of −Per + α·D.
    DissipationSign,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Fixed alpha: growth by the nucleus polygon.
    Nucleation,
    /// alpha → 0: the ball of radius 4t.
    Fast,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    #[arg(long)]
    pub norm: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = Regime::Nucleation)]
    pub regime: Regime,
    /// Boundary samples for the fast-regime ball.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SingularArgs {
    #[arg(long)]
    pub norm: String,
    #[arg(long)]
    pub alpha_min: String,
}
