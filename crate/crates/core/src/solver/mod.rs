//! Exact single-step minimization of the scaled energy and the evolution
//! driver built on it.
//!
//! Three engines solve the same problem: a closed form valid under checked
//! hypotheses, a min-cut on the bipartite spin-flipped grid, and exhaustive
//! enumeration for small windows.

mod brute;
mod closed_form;
mod evolve;
mod fast;
mod maxflow;
mod mincut;
mod window;

use std::fmt;
use std::str::FromStr;

use crate::energy::{toggle_delta, EnergyBreakdown};
use crate::error::{Error, Result};
use crate::lattice::{LatticeSet, Point};
use crate::norms::DistanceOracle;
use crate::scalar::Scalar;

pub use brute::step_brute;
pub use closed_form::{closed_form_precheck, step_closed_form};
pub use evolve::{evolve, step, EngineSwitch, EvolutionTrace, TraceStep};
pub use fast::{fast_forward, parity_flip_bound, parity_flip_constants, parity_flip_k0, ParityFlipConstants};
pub use maxflow::FlowNetwork;
pub use mincut::step_mincut;
pub use window::{candidate_window, Window};

/// Default window cap for exhaustive enumeration.
pub const DEFAULT_BRUTE_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    ClosedForm,
    Mincut,
    Brute,
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::ClosedForm => "closed_form",
            Engine::Mincut => "mincut",
            Engine::Brute => "brute",
            Engine::Auto => "auto",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" => Ok(Engine::ClosedForm),
            "mincut" => Ok(Engine::Mincut),
            "brute" => Ok(Engine::Brute),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::InvalidArgument(format!("unknown engine '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions<S> {
    pub tol: S,
    pub brute_cap: usize,
}

impl<S: Scalar> Default for SolverOptions<S> {
    fn default() -> Self {
        SolverOptions { tol: S::default_tol(), brute_cap: DEFAULT_BRUTE_CAP }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepResult<S> {
    pub minimizer: LatticeSet,
    pub energy: EnergyBreakdown<S>,
    pub solver: Engine,
    /// Cells whose toggle at the optimum changes the energy by at most `tol`,
    /// together with window cells sitting exactly at the `4/α` threshold.
    pub zero_margin_cells: Vec<Point>,
    /// False when a single toggle leaves the energy unchanged or the engine
    /// found another set with the same energy (ties may involve several cells
    /// at once). Threshold cells alone do not break uniqueness.
    pub unique: bool,
}

/// Local-optimality audit shared by all engines.
///
/// Fails if any single toggle in the window or its padding lowers the energy
/// by more than `tol`. Returns the zero-margin cells and whether one of them
/// has a zero toggle (an actual tie rather than a threshold cell).
pub(crate) fn audit<S: Scalar>(
    oracle: &DistanceOracle<'_, S>,
    alpha: &S,
    window: &Window,
    minimizer: &LatticeSet,
    tol: &S,
) -> Result<(Vec<Point>, bool)> {
    let four = S::from_i64(4);
    let mut zero = Vec::new();
    let mut tie = false;
    for p in window.free.iter().chain(window.padding.iter()) {
        let delta = toggle_delta(oracle, alpha, minimizer, p)?;
        if delta < -tol.clone() {
            if window.padding.contains(p) {
                return Err(Error::WindowTruncation(p));
            }
            return Err(Error::SolverInvariant(format!(
                "toggling {p} lowers the energy by {}",
                -delta.to_f64()
            )));
        }
        let at_threshold = window.free.contains(p)
            && (alpha.clone() * oracle.cell_distance(p)?).near(&four, tol);
        let flat = delta.near(&S::zero(), tol);
        tie |= flat;
        if flat || at_threshold {
            zero.push(p);
        }
    }
    zero.sort_unstable();
    Ok((zero, tie))
}

/// Per-cell data of the quadratic model `E0 + Σ aᵢxᵢ + Σ 2xᵢxⱼ` over the
/// free cells, in the order of `window.free`.
pub(crate) struct QuadraticModel<S> {
    pub cells: Vec<Point>,
    pub unary: Vec<S>,
    /// Free-free nearest-neighbor pairs `(i, j)` with `i < j`.
    pub pairs: Vec<(usize, usize)>,
}

impl<S: Scalar> QuadraticModel<S> {
    pub fn build(oracle: &DistanceOracle<'_, S>, alpha: &S, window: &Window) -> Result<Self> {
        let cells: Vec<Point> = window.free.iter().collect();
        let index = |p: Point| cells.binary_search(&p).ok();
        let mut unary = Vec::with_capacity(cells.len());
        let mut pairs = Vec::new();
        for (k, &p) in cells.iter().enumerate() {
            for q in p.neighbors4() {
                if let Some(j) = index(q) {
                    if k < j {
                        pairs.push((k, j));
                    }
                }
            }
            // adding p to the fixed part alone
            unary.push(toggle_delta(oracle, alpha, &window.fixed_in, p)?);
        }
        Ok(QuadraticModel { cells, unary, pairs })
    }
}

pub(crate) fn finish<S: Scalar>(
    oracle: &DistanceOracle<'_, S>,
    alpha: &S,
    window: &Window,
    minimizer: LatticeSet,
    engine: Engine,
    tol: &S,
    tied: bool,
) -> Result<StepResult<S>> {
    let (zero_margin_cells, flat) = audit(oracle, alpha, window, &minimizer, tol)?;
    let d = crate::energy::dissipation_with(oracle, &minimizer)?;
    let energy = EnergyBreakdown::new(crate::lattice::lattice_perimeter(&minimizer), d, alpha.clone());
    Ok(StepResult {
        unique: !flat && !tied,
        minimizer,
        energy,
        solver: engine,
        zero_margin_cells,
    })
}

pub(crate) fn oracle_for<'a, S: Scalar>(
    n: &'a crate::norms::NormSpec,
    alpha: &S,
    eprev: &'a LatticeSet,
) -> Result<DistanceOracle<'a, S>> {
    let reach = n.box_radius((S::from_i64(4) / alpha.clone()).to_f64()) + 2;
    DistanceOracle::new(n, eprev, reach)
}
