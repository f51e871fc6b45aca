//! Crystalline growth of checkerboard sets on the square lattice.
//!
//! Each step minimizes `−Per(E) + α·D(E, E')` over finite unions of unit
//! cells, where `D` charges every flipped cell its norm distance to the
//! previous set (or to its complement). The crate provides the lattice
//! geometry, the norms and their hypotheses, three exact step engines, and
//! the limit motion built from the first-step nucleus.
//!
//! Everything numeric is generic over [`Scalar`], implemented for `f64`,
//! `f32` and [`Exact`] (`Rational64`). Norms that are rational on integer
//! points (ℓ1, ℓ∞, weighted ℓ1, rect-max) can run exactly end to end.

pub mod energy;
pub mod error;
pub mod lattice;
pub mod limit;
pub mod norms;
pub mod scalar;
pub mod solver;

pub use energy::{dissipation, scaled_energy, toggle_delta, EnergyBreakdown};
pub use error::{Error, Hypothesis, Result};
pub use lattice::{LatticeSet, Parity, Point, SetParity};
pub use limit::{nucleus, LimitMotion, MotionKind, NucleusReport};
pub use norms::{pinning_threshold, NormKind, NormSpec};
pub use scalar::{format_rational, parse_rational, Scalar};
pub use solver::{evolve, step, Engine, EvolutionTrace, SolverOptions, StepResult};

/// Exact rational scalar.
pub type Exact = num_rational::Rational64;

pub type EnergyF64 = EnergyBreakdown<f64>;
pub type EnergyExact = EnergyBreakdown<Exact>;
pub type StepResultF64 = StepResult<f64>;
pub type StepResultExact = StepResult<Exact>;
pub type TraceF64 = EvolutionTrace<f64>;
pub type TraceExact = EvolutionTrace<Exact>;
pub type NucleusReportF64 = NucleusReport<f64>;
pub type NucleusReportExact = NucleusReport<Exact>;
pub type SolverOptionsF64 = SolverOptions<f64>;
pub type SolverOptionsExact = SolverOptions<Exact>;
