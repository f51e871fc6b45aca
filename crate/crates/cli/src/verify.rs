//! Cross-engine and identity checks behind `crystal verify`.

use crystal_core::lattice::{
    convex_hull, fast_scaled_hull_points, lattice_perimeter, lattice_points_in_scaled, mfold_identity_check,
    minkowski_power, pick_count, ConvexLatticePolygon, Sublattice,
};
use crystal_core::norms::{is_singular, DistanceOracle};
use crystal_core::solver::{candidate_window, fast_forward, step_brute, step_mincut, Engine};
use crystal_core::{
    dissipation, evolve, nucleus, scaled_energy, Error, Exact, LatticeSet, NormSpec, Parity, Point, SolverOptions,
    StepResult,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::Fault;
use crate::config::Alpha;
use crate::render::{points_json, Render};

/// Largest free window the mutated engine enumerates.
const MUTANT_CAP: usize = 16;
const STRUCTURE_STEPS: usize = 4;
const HYPOTHESIS_WINDOW: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub norm: Option<String>,
    pub alpha: Value,
    pub status: Status,
    pub detail: String,
    pub witness: Value,
}

impl Check {
    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "norm": self.norm,
            "alpha": self.alpha,
            "status": self.status.as_str(),
            "detail": self.detail,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub norm: NormSpec,
    pub alpha: Alpha,
}

pub struct Suite {
    pub cases: Vec<Case>,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub fault: Option<Fault>,
}

pub struct Report {
    pub checks: Vec<Check>,
    pub json: Value,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }
}

pub fn run(suite: &Suite) -> Report {
    // cases are independent; each gets its own seeded generator
    let mut checks: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> = suite
            .cases
            .iter()
            .enumerate()
            .map(|(i, case)| {
                let seed = suite.seed.wrapping_add(i as u64);
                s.spawn(move || run_case(case, suite, seed))
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("verification thread panicked")).collect()
    });
    checks.push(pick_and_mfold(suite.seed, suite.samples));

    let count = |st: Status| checks.iter().filter(|c| c.status == st).count();
    let json = json!({
        "seed": suite.seed,
        "samples": suite.samples,
        "tol": suite.tol,
        "fault": suite.fault.map(|_| "dissipation-sign"),
        "cases": suite.cases.iter().map(|c| json!({"norm": c.norm.to_string(), "alpha": alpha_json(&c.alpha)})).collect::<Vec<_>>(),
        "checks": checks.iter().map(Check::json).collect::<Vec<_>>(),
        "passed": count(Status::Pass),
        "failed": count(Status::Fail),
        "skipped": count(Status::Skipped),
        "all_pass": count(Status::Fail) == 0,
    });
    Report { checks, json }
}

fn alpha_json(a: &Alpha) -> Value {
    match a {
        Alpha::Exact(r) => r.json(),
        Alpha::Real(x) => x.json(),
    }
}

fn run_case(case: &Case, suite: &Suite, seed: u64) -> Vec<Check> {
    match &case.alpha {
        Alpha::Exact(a) => case_typed(&case.norm, a, Exact::zero(), suite, seed),
        Alpha::Real(a) => case_typed(&case.norm, a, suite.tol, suite, seed),
    }
}

fn case_typed<S: Render>(n: &NormSpec, alpha: &S, tol: S, suite: &Suite, seed: u64) -> Vec<Check> {
    let ctx = Ctx { n, alpha, opts: SolverOptions { tol, ..SolverOptions::default() } };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        ctx.oracle_equivalence(&mut rng, suite.samples, suite.fault),
        ctx.non_uniqueness(),
        ctx.structure_theorem(),
        ctx.fast_forward_identity(),
        hypotheses(n, suite.tol),
        submodularity(n, suite.tol),
    ]
}

struct Ctx<'a, S> {
    n: &'a NormSpec,
    alpha: &'a S,
    opts: SolverOptions<S>,
}

fn set_json(s: &LatticeSet) -> Value {
    points_json(s)
}

impl<S: Render> Ctx<'_, S> {
    fn check(&self, name: &'static str, status: Status, detail: String, witness: Value) -> Check {
        Check { name, norm: Some(self.n.to_string()), alpha: self.alpha.json(), status, detail, witness }
    }

    /// The engine under test: min-cut, or the mutated enumerator.
    fn candidate(&self, prev: &LatticeSet, constrained: bool, fault: Option<Fault>) -> crystal_core::Result<LatticeSet> {
        match fault {
            None => step_mincut(self.n, self.alpha, prev, constrained, &self.opts).map(|r| r.minimizer),
            Some(Fault::DissipationSign) => self.wrong_sign(prev, constrained),
        }
    }

    /// Exhaustive minimization of `−Per − α·D`.
    fn wrong_sign(&self, prev: &LatticeSet, constrained: bool) -> crystal_core::Result<LatticeSet> {
        let reach = self.n.box_radius((S::from_i64(4) / self.alpha.clone()).to_f64()) + 2;
        let oracle = DistanceOracle::<S>::new(self.n, prev, reach)?;
        let w = candidate_window(&oracle, self.n, self.alpha, constrained, &self.opts.tol)?;
        let cells: Vec<Point> = w.free.iter().collect();
        if cells.len() > MUTANT_CAP {
            return Err(Error::WindowTooLarge { free: cells.len(), cap: MUTANT_CAP });
        }
        let mut best: Option<(S, LatticeSet)> = None;
        for mask in 0u32..(1 << cells.len()) {
            let mut e = w.fixed_in.clone();
            for (k, p) in cells.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    e.insert(*p);
                }
            }
            if e.is_empty() {
                continue;
            }
            let d: S = dissipation(self.n, &e, prev)?;
            let f = -S::from_i64(lattice_perimeter(&e) as i64) - self.alpha.clone() * d;
            if best.as_ref().is_none_or(|(b, _)| f < *b) {
                best = Some((f, e));
            }
        }
        best.map(|(_, e)| e).ok_or(Error::EmptySet)
    }

    fn oracle_equivalence(&self, rng: &mut ChaCha8Rng, samples: usize, fault: Option<Fault>) -> Check {
        let origin = LatticeSet::origin();
        let mut instances: Vec<(LatticeSet, bool)> = vec![(origin.clone(), true), (origin, false)];
        for _ in 0..samples {
            let k = rng.gen_range(1..=4);
            let pairs: Vec<(i64, i64)> = (0..k).map(|_| (rng.gen_range(-1..=1), rng.gen_range(-1..=1))).collect();
            instances.push((LatticeSet::from_pairs(&pairs), rng.gen_bool(0.5)));
        }
        let (mut compared, mut skipped) = (0, 0);
        for (prev, constrained) in &instances {
            let brute = match step_brute(self.n, self.alpha, prev, *constrained, &self.opts) {
                Ok(b) => b,
                Err(Error::WindowTooLarge { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return self.error_check("oracle_equivalence", e),
            };
            let cand = match self.candidate(prev, *constrained, fault) {
                Ok(c) => c,
                Err(Error::WindowTooLarge { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return self.error_check("oracle_equivalence", e),
            };
            let cand_energy = match scaled_energy(self.n, self.alpha, &cand, prev) {
                Ok(e) => e.total,
                Err(e) => return self.error_check("oracle_equivalence", e),
            };
            compared += 1;
            let same_energy = cand_energy.near(&brute.energy.total, &self.opts.tol);
            let same_set = !brute.unique || cand == brute.minimizer;
            if !(same_energy && same_set) {
                let witness = json!({
                    "previous": set_json(prev),
                    "constrained": constrained,
                    "brute": set_json(&brute.minimizer),
                    "brute_energy": brute.energy.total.json(),
                    "candidate": set_json(&cand),
                    "candidate_energy": cand_energy.json(),
                });
                return self.check(
                    "oracle_equivalence",
                    Status::Fail,
                    format!("candidate disagrees with exhaustive search after {compared} instances"),
                    witness,
                );
            }
        }
        let status = if compared == 0 { Status::Skipped } else { Status::Pass };
        self.check(
            "oracle_equivalence",
            status,
            format!("{compared} instances agree with exhaustive search, {skipped} windows too large"),
            Value::Null,
        )
    }

    fn error_check(&self, name: &'static str, e: Error) -> Check {
        self.check(name, Status::Fail, format!("error: {e}"), Value::Null)
    }

    fn first_step(&self) -> crystal_core::Result<StepResult<S>> {
        let origin = LatticeSet::origin();
        match step_brute(self.n, self.alpha, &origin, true, &self.opts) {
            Err(Error::WindowTooLarge { .. }) => step_mincut(self.n, self.alpha, &origin, true, &self.opts),
            other => other,
        }
    }

    fn non_uniqueness(&self) -> Check {
        let name = "non_uniqueness_detection";
        let singular = match is_singular(self.n, self.alpha, &self.opts.tol) {
            Ok(s) => s,
            Err(e) => return self.error_check(name, e),
        };
        let step = match self.first_step() {
            Ok(s) => s,
            Err(e) => return self.error_check(name, e),
        };
        let expected = if singular { "NonUniqueStep expected" } else { "unique step expected" };
        self.check(
            name,
            Status::of(step.unique != singular),
            format!("{expected}; first step reported unique = {} by {}", step.unique, step.solver),
            json!({ "singular": singular, "zero_margin_cells": step.zero_margin_cells.iter().map(|p| json!([p.i1, p.i2])).collect::<Vec<_>>() }),
        )
    }

    fn structure_theorem(&self) -> Check {
        let name = "structure_theorem";
        let r = match nucleus(self.n, self.alpha, &self.opts.tol) {
            Ok(r) => r,
            Err(Error::SingularAlpha { .. }) => {
                return self.check(name, Status::Skipped, "singular alpha".into(), Value::Null)
            }
            Err(e) => return self.error_check(name, e),
        };
        let h = &r.hypotheses;
        let holds = h.absolute
            && h.h1
            && h.h2
            && h.h3
            && h.submodular
            && h.sublattice_convex
            && h.nondegenerate != Some(false)
            && h.monotone_edges != Some(false)
            && h.symmetric;
        if !holds {
            return self.check(name, Status::Skipped, "hypotheses do not hold for this nucleus".into(), Value::Null);
        }
        // min-cut, so the closed form is not compared with itself
        let origin = LatticeSet::origin();
        let trace = match evolve(self.n, self.alpha, STRUCTURE_STEPS, Engine::Mincut, true, &origin, &self.opts) {
            Ok(t) => t,
            Err(e) => return self.error_check(name, e),
        };
        for s in &trace.steps {
            let predicted = match fast_forward(&r.nucleus, s.k as u32) {
                Ok(p) => p,
                Err(e) => return self.error_check(name, e),
            };
            if predicted != s.set {
                return self.check(
                    name,
                    Status::Fail,
                    format!("step {} differs from the {}-fold sum of the nucleus", s.k, s.k),
                    json!({ "k": s.k, "orbit": set_json(&s.set), "predicted": set_json(&predicted) }),
                );
            }
        }
        self.check(
            name,
            Status::Pass,
            format!("min-cut orbit equals k·N for k ≤ {STRUCTURE_STEPS} (|N| = {})", r.nucleus.len()),
            Value::Null,
        )
    }

    fn fast_forward_identity(&self) -> Check {
        let name = "minkowski_fast_forward";
        let nuc = match nucleus(self.n, self.alpha, &self.opts.tol) {
            Ok(r) => r.nucleus,
            Err(Error::SingularAlpha { .. }) => {
                return self.check(name, Status::Skipped, "singular alpha".into(), Value::Null)
            }
            Err(e) => return self.error_check(name, e),
        };
        for k in 1..=STRUCTURE_STEPS as u32 {
            let routes = (fast_forward(&nuc, k), fast_scaled_hull_points(&nuc, k as i64));
            let (Ok(ff), Ok(hull)) = routes else {
                return self.check(name, Status::Fail, format!("k = {k}: a route errored"), Value::Null);
            };
            let direct = minkowski_power(&nuc, k);
            if ff != direct || hull != direct {
                return self.check(
                    name,
                    Status::Fail,
                    format!("k = {k}: fast-forward, repeated sums and hull filling disagree"),
                    json!({ "k": k, "fast_forward": ff.len(), "repeated_sums": direct.len(), "hull": hull.len() }),
                );
            }
        }
        self.check(
            name,
            Status::Pass,
            format!("three routes agree for k ≤ {STRUCTURE_STEPS}"),
            Value::Null,
        )
    }
}

fn norm_check(n: &NormSpec, name: &'static str, status: Status, detail: String, witness: Value) -> Check {
    Check { name, norm: Some(n.to_string()), alpha: Value::Null, status, detail, witness }
}

/// Recomputes absoluteness and H1–H3 from plain floating-point evaluation.
fn hypotheses(n: &NormSpec, tol: f64) -> Check {
    let tol = tol.max(1e-12);
    let phi = |x: i64, y: i64| n.evaluate([x as f64, y as f64]);
    let near = |a: f64, b: f64| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()));
    let w = HYPOTHESIS_WINDOW;
    let grid = || (-w..=w).flat_map(move |x| (-w..=w).map(move |y| (x, y)));
    let absolute = grid().all(|(x, y)| near(phi(x, y), phi(x.abs(), y.abs())));
    let h1 = grid().all(|(x, y)| near(phi(x, y), phi(y, x)));
    let h2 = near(phi(1, 0), 1.0) && near(phi(0, 1), 1.0);
    let h3 = (0..=n.flags.h3_checked_up_to as i64).all(|h| phi(h, h + 1) - phi(h, h) >= 0.5 - tol);
    let f = &n.flags;
    let ours = [absolute, h1, h2, h3];
    let lib = [f.absolute, f.h1_symmetric, f.h2_normalized, f.h3];
    let witness = json!({
        "absolute": absolute, "h1": h1, "h2": h2, "h3": h3,
        "library": { "absolute": f.absolute, "h1": f.h1_symmetric, "h2": f.h2_normalized, "h3": f.h3 },
        "counterexample": f.counterexample.map(|(h, p)| json!({ "hypothesis": h.to_string(), "point": [p.i1, p.i2] })),
    });
    norm_check(
        n,
        "hypotheses",
        Status::of(ours == lib),
        format!("absolute={absolute} H1={h1} H2={h2} H3={h3} (independent recomputation)"),
        witness,
    )
}

/// Scans `φ(x) + φ(x + e) ≤ φ(x + e₁) + φ(x + e₂)` with `e = (sgn x₁, sgn x₂)`,
/// `sgn 0 = +1`; absolute norms must pass.
fn submodularity(n: &NormSpec, tol: f64) -> Check {
    let tol = tol.max(1e-12);
    let phi = |x: i64, y: i64| n.evaluate([x as f64, y as f64]);
    let sgn = |v: i64| if v < 0 { -1 } else { 1 };
    let w = HYPOTHESIS_WINDOW;
    let mut violation = None;
    'scan: for x in -w..=w {
        for y in -w..=w {
            let (a, b) = (sgn(x), sgn(y));
            let lhs = phi(x, y) + phi(x + a, y + b);
            let rhs = phi(x + a, y) + phi(x, y + b);
            if lhs > rhs + tol * (1.0 + rhs.abs()) {
                violation = Some([x, y]);
                break 'scan;
            }
        }
    }
    let ours = violation.is_none();
    let consistent = ours == n.flags.submodular && (!n.flags.absolute || ours);
    norm_check(
        n,
        "submodularity",
        Status::of(consistent),
        format!("scan on [-{w},{w}]² submodular = {ours}, library = {}", n.flags.submodular),
        json!({ "violation": violation }),
    )
}

fn random_polygon(rng: &mut ChaCha8Rng, even: bool) -> Option<ConvexLatticePolygon> {
    let k = rng.gen_range(3..8);
    let pts: LatticeSet = (0..k)
        .map(|_| {
            let (a, b) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
            if even {
                Point::new(a + b, a - b)
            } else {
                Point::new(a, b)
            }
        })
        .collect();
    let h = convex_hull(&pts).ok()?;
    (!h.is_degenerate() && h.area2 <= 160).then_some(h)
}

/// Pick counts and the m-fold identity on seeded random polygons.
fn pick_and_mfold(seed: u64, samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let samples = samples.max(1);
    let mut counted = 0;
    for lattice in [Sublattice::Z2, Sublattice::Z2Even] {
        let even = lattice == Sublattice::Z2Even;
        let mut done = 0;
        while done < samples {
            let Some(h) = random_polygon(&mut rng, even) else { continue };
            done += 1;
            for m in 1..=3u64 {
                let parity = even.then_some(Parity::Even);
                let direct = lattice_points_in_scaled(&h, m as i64, parity).len() as u64;
                counted += 1;
                let pick = pick_count(&h, lattice, m);
                if pick.as_ref().ok() != Some(&direct) {
                    return Check {
                        name: "pick_and_mfold",
                        norm: None,
                        alpha: Value::Null,
                        status: Status::Fail,
                        detail: format!("Pick count disagrees with enumeration at m = {m}"),
                        witness: json!({ "vertices": h.vertices.iter().map(|p| json!([p.i1, p.i2])).collect::<Vec<_>>(), "pick": pick.ok(), "enumerated": direct }),
                    };
                }
            }
        }
    }
    let mut mfold = 0;
    while mfold < samples {
        let Some(h) = random_polygon(&mut rng, true) else { continue };
        if h.area2 > 48 {
            continue;
        }
        mfold += 1;
        let s = lattice_points_in_scaled(&h, 1, Some(Parity::Even));
        for m in 1..=3u32 {
            let direct = minkowski_power(&s, m);
            let filled = lattice_points_in_scaled(&h, m as i64, Some(Parity::Even));
            let lib = mfold_identity_check(&s, m);
            if direct != filled || lib.as_ref().ok() != Some(&true) {
                return Check {
                    name: "pick_and_mfold",
                    norm: None,
                    alpha: Value::Null,
                    status: Status::Fail,
                    detail: format!("m-fold identity fails at m = {m}"),
                    witness: json!({ "set": set_json(&s), "library": lib.ok() }),
                };
            }
        }
    }
    Check {
        name: "pick_and_mfold",
        norm: None,
        alpha: Value::Null,
        status: Status::Pass,
        detail: format!("{counted} Pick counts and {mfold} m-fold sets (m ≤ 3) agree with enumeration"),
        witness: Value::Null,
    }
}
