use super::{
    candidate_window, closed_form_precheck, finish, oracle_for, step_brute, step_closed_form, step_mincut,
    Engine, SolverOptions, StepResult,
};
use crate::energy::{scaled_energy, EnergyBreakdown};
use crate::error::{Error, Hypothesis, Result};
use crate::lattice::{check_monotone_edges, LatticeSet, SetParity};
use crate::norms::NormSpec;
use crate::scalar::Scalar;

/// One minimization step with the requested engine.
///
/// `Auto` uses the closed form whenever its hypotheses are verified and the
/// min-cut engine otherwise; the closed form only covers the constrained
/// scheme.
pub fn step<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    eprev: &LatticeSet,
    constrained: bool,
    engine: Engine,
    opts: &SolverOptions<S>,
) -> Result<StepResult<S>> {
    match engine {
        Engine::Brute => step_brute(n, alpha, eprev, constrained, opts),
        Engine::Mincut => step_mincut(n, alpha, eprev, constrained, opts),
        Engine::ClosedForm => {
            if !constrained {
                return Err(Error::InvalidArgument("the closed form covers the constrained scheme only".into()));
            }
            let set = step_closed_form(n, alpha, eprev, &opts.tol)?;
            closed_form_result(n, alpha, eprev, set, opts)
        }
        Engine::Auto => {
            if constrained && closed_form_precheck(n, alpha, eprev, &opts.tol)?.is_none() {
                step(n, alpha, eprev, constrained, Engine::ClosedForm, opts)
            } else {
                step_mincut(n, alpha, eprev, constrained, opts)
            }
        }
    }
}

fn closed_form_result<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    eprev: &LatticeSet,
    set: LatticeSet,
    opts: &SolverOptions<S>,
) -> Result<StepResult<S>> {
    let oracle = oracle_for(n, alpha, eprev)?;
    let window = candidate_window(&oracle, n, alpha, true, &opts.tol)?;
    // the audit inside `finish` doubles as a local check of the closed form;
    // uniqueness itself is part of what the verified hypotheses guarantee
    finish(&oracle, alpha, &window, set, Engine::ClosedForm, &opts.tol, false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep<S> {
    pub k: usize,
    pub set: LatticeSet,
    pub energy: EnergyBreakdown<S>,
    pub parity: SetParity,
    pub checkerboard: bool,
    /// False also when the effective boundary is degenerate.
    pub monotone_edges_ok: bool,
    pub unique: bool,
    /// `None` for the initial datum.
    pub solver: Option<Engine>,
    pub zero_margin_cells: Vec<crate::lattice::Point>,
}

/// Engine change in an `Auto` run, with the hypothesis that forced it.
#[derive(Clone, Debug, PartialEq)]
pub struct EngineSwitch {
    pub k: usize,
    pub from: Engine,
    pub to: Engine,
    pub reason: Option<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionTrace<S> {
    pub steps: Vec<TraceStep<S>>,
    pub alpha: S,
    pub norm: String,
    pub constrained: bool,
    pub engine: Engine,
    pub switches: Vec<EngineSwitch>,
    pub non_unique_steps: Vec<usize>,
}

impl<S> EvolutionTrace<S> {
    pub fn sets(&self) -> impl Iterator<Item = &LatticeSet> {
        self.steps.iter().map(|s| &s.set)
    }
}

fn monotone_ok(s: &LatticeSet) -> bool {
    check_monotone_edges(s).map(|c| c.is_ok()).unwrap_or(false)
}

/// Iterates the scheme `k_max` times from `initial`.
pub fn evolve<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    k_max: usize,
    engine: Engine,
    constrained: bool,
    initial: &LatticeSet,
    opts: &SolverOptions<S>,
) -> Result<EvolutionTrace<S>> {
    if initial.is_empty() {
        return Err(Error::EmptyPrevious);
    }
    let e0 = scaled_energy(n, alpha, initial, initial)?;
    let mut trace = EvolutionTrace {
        steps: vec![TraceStep {
            k: 0,
            set: initial.clone(),
            energy: e0,
            parity: initial.parity(),
            checkerboard: initial.is_checkerboard(),
            monotone_edges_ok: monotone_ok(initial),
            unique: true,
            solver: None,
            zero_margin_cells: Vec::new(),
        }],
        alpha: alpha.clone(),
        norm: n.to_string(),
        constrained,
        engine,
        switches: Vec::new(),
        non_unique_steps: Vec::new(),
    };
    let mut last_engine: Option<Engine> = None;
    for k in 1..=k_max {
        let prev = &trace.steps[k - 1].set;
        let wrap = |e: Error| Error::Step { k, source: Box::new(e) };
        let reason = if engine == Engine::Auto && constrained {
            closed_form_precheck(n, alpha, prev, &opts.tol).map_err(wrap)?
        } else {
            None
        };
        let r = step(n, alpha, prev, constrained, engine, opts).map_err(wrap)?;
        if let Some(from) = last_engine {
            if from != r.solver {
                trace.switches.push(EngineSwitch { k, from, to: r.solver, reason });
            }
        }
        last_engine = Some(r.solver);
        if !r.unique {
            trace.non_unique_steps.push(k);
        }
        trace.steps.push(TraceStep {
            k,
            parity: r.minimizer.parity(),
            checkerboard: r.minimizer.is_checkerboard(),
            monotone_edges_ok: monotone_ok(&r.minimizer),
            set: r.minimizer,
            energy: r.energy,
            unique: r.unique,
            solver: Some(r.solver),
            zero_margin_cells: r.zero_margin_cells,
        });
    }
    Ok(trace)
}
