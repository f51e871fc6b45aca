//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p crystal-core --test acceptance`. Criteria listed in
//! `DOCUMENTED` are known to be unreachable as stated; they still run in
//! full and print their analysis, but do not fail the process.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use crystal_core::lattice::{
    check_monotone_edges, clockwise_boundary, convex_hull, effective_boundary, is_nondegenerate,
    lattice_points_in_scaled, minkowski_power, minkowski_sum, mfold_identity_check, pick_count,
    ConvexLatticePolygon, Nondegeneracy, Sublattice,
};
use crystal_core::limit::{alpha_c, hausdorff_gap, l1_parity_analysis};
use crystal_core::norms::{ball_points, is_singular, BallLattice, DistanceOracle};
use crystal_core::solver::{
    candidate_window, closed_form_precheck, fast_forward, parity_flip_k0, step_brute, step_closed_form, step_mincut,
};
use crystal_core::{
    evolve, nucleus, pinning_threshold, scaled_energy, Engine, Error, Exact, Hypothesis, LatticeSet, NormSpec,
    Parity, Point, Scalar, SolverOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Tolerances and budgets, pinned here.
const TOL_F64: f64 = 1e-9;
const PIN_TOL_L2: f64 = 1e-12;
const DENSITY_TOL: f64 = 0.05;
const BUDGET_C1: Duration = Duration::from_secs(60);
const BUDGET_C2: Duration = Duration::from_secs(30);
const BUDGET_C9: Duration = Duration::from_secs(60);
const SEED: u64 = 0x5eed_c0de;

/// Criteria that cannot hold as stated (see the printed analysis).
const DOCUMENTED: &[&str] = &["7", "8b"];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn q(n: i64, d: i64) -> Exact {
    Exact::new(n, d)
}

fn set(pairs: &[(i64, i64)]) -> LatticeSet {
    LatticeSet::from_pairs(pairs)
}

fn fmt_set(s: &LatticeSet) -> String {
    let v: Vec<String> = s.iter().map(|p| format!("({},{})", p.i1, p.i2)).collect();
    format!("{{{}}}", v.join(","))
}

// ---------------------------------------------------------------- criterion 1

fn window_size<S: Scalar>(n: &NormSpec, alpha: &S) -> Option<usize> {
    let origin = LatticeSet::origin();
    let reach = n.box_radius((S::from_i64(4) / alpha.clone()).to_f64()) + 2;
    let oracle = DistanceOracle::<S>::new(n, &origin, reach).ok()?;
    candidate_window(&oracle, n, alpha, true, &S::default_tol()).ok().map(|w| w.free.len())
}

/// Ten well-spread α from a grid: below the pinning threshold, off the
/// singular set (with margin) and with a first-step window of at most 20
/// cells.
fn pick_alphas<S: Scalar>(n: &NormSpec, grid: &[S]) -> Vec<S> {
    let margin = S::from_rational(q(1, 50));
    let pin: S = pinning_threshold(n).unwrap();
    let ok: Vec<S> = grid
        .iter()
        .filter(|a| **a < pin.clone() - margin.clone())
        .filter(|a| {
            let lo = (*a).clone() - margin.clone();
            let hi = (*a).clone() + margin.clone();
            // no 4/φ(p) strictly inside [a − margin, a + margin]
            let clean = !is_singular(n, *a, &margin).unwrap_or(true)
                && !crosses_singular(n, &lo, &hi);
            clean && window_size(n, *a).is_some_and(|w| w <= 20)
        })
        .cloned()
        .collect();
    if ok.len() <= 10 {
        return ok;
    }
    (0..10).map(|j| ok[j * (ok.len() - 1) / 9].clone()).collect()
}

fn crosses_singular<S: Scalar>(n: &NormSpec, lo: &S, hi: &S) -> bool {
    let r = n.box_radius(4.0 / lo.to_f64().max(1e-3)) + 1;
    for i1 in -r..=r {
        for i2 in -r..=r {
            let p = Point::new(i1, i2);
            if p == Point::ORIGIN || p.parity() != Parity::Even {
                continue;
            }
            let v: S = match n.value(p) {
                Ok(v) => v,
                Err(_) => return true,
            };
            let a = S::from_i64(4) / v;
            if a >= *lo && a <= *hi {
                return true;
            }
        }
    }
    false
}

fn first_step_three_way<S: Scalar>(n: &NormSpec, alphas: &[S]) -> (bool, String) {
    let opts = SolverOptions::<S>::default();
    let origin = LatticeSet::origin();
    let mut notes = Vec::new();
    let mut all = true;
    for a in alphas {
        let b = step_brute(n, a, &origin, true, &opts);
        let m = step_mincut(n, a, &origin, true, &opts);
        let c = step_closed_form(n, a, &origin, &opts.tol);
        match (b, m, c) {
            (Ok(b), Ok(m), Ok(c)) if b.minimizer == m.minimizer && m.minimizer == c => {}
            (b, m, c) => {
                all = false;
                notes.push(format!(
                    "α={a}: brute {:?} mincut {:?} closed {:?}",
                    b.map(|r| r.minimizer.len()),
                    m.map(|r| r.minimizer.len()),
                    c.map(|s| s.len())
                ));
            }
        }
    }
    let list: Vec<String> = alphas.iter().map(|a| format!("{:.3}", a.to_f64())).collect();
    let mut d = format!("{} α [{}]", n, list.join(" "));
    if alphas.len() < 10 {
        all = false;
        d.push_str(&format!(" only {} admissible α", alphas.len()));
    }
    if !notes.is_empty() {
        d.push_str(&format!(" mismatches: {}", notes.join("; ")));
    }
    (all, d)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let exact_grid: Vec<Exact> = (0..=300).map(|j| q(105 + j, 100)).collect();
    let real_grid: Vec<f64> = (0..=300).map(|j| (105 + j) as f64 / 100.0).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [NormSpec::linf(), NormSpec::l1()] {
        let alphas = pick_alphas(&n, &exact_grid);
        let (ok, d) = first_step_three_way(&n, &alphas);
        pass &= ok;
        parts.push(d);
    }
    for n in [NormSpec::l2(), NormSpec::lp(4.0).unwrap()] {
        let alphas = pick_alphas(&n, &real_grid);
        let (ok, d) = first_step_three_way(&n, &alphas);
        pass &= ok;
        parts.push(d);
    }
    let el = start.elapsed();
    pass &= el < BUDGET_C1;
    Outcome::new(pass, format!("{}; {:.2}s (budget 60s)", parts.join("; "), el.as_secs_f64()))
}

// ---------------------------------------------------------------- criterion 2

fn nucleation_case<S: Scalar>(n: &NormSpec, alpha: S) -> (bool, String) {
    let opts = SolverOptions::<S>::default();
    let nuc = match nucleus(n, &alpha, &opts.tol) {
        Ok(r) => r.nucleus,
        Err(e) => return (false, format!("{n} α={alpha}: nucleus error {e}")),
    };
    let trace = match evolve(n, &alpha, 5, Engine::Auto, true, &LatticeSet::origin(), &opts) {
        Ok(t) => t,
        Err(e) => return (false, format!("{n} α={alpha}: evolve error {e}")),
    };
    for (k, s) in trace.sets().enumerate() {
        let ff = fast_forward(&nuc, k as u32).expect("fast_forward");
        if *s != ff {
            return (false, format!("{n} α={alpha}: step {k} differs ({} vs {} cells)", s.len(), ff.len()));
        }
    }
    let engines: BTreeSet<String> =
        trace.steps.iter().filter_map(|s| s.solver.map(|e| e.to_string())).collect();
    let engines: Vec<String> = engines.into_iter().collect();
    (
        true,
        format!("{n} α={:.3} ok [{}] cells@5={}", alpha.to_f64(), engines.join("+"), trace.steps[5].set.len()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, a) in [(NormSpec::linf(), q(3, 1)), (NormSpec::linf(), q(19, 10)), (NormSpec::l1(), q(19, 10))] {
        let (ok, d) = nucleation_case(&n, a);
        pass &= ok;
        parts.push(d);
    }
    for a in [0.85, 0.7, 1.5] {
        let (ok, d) = nucleation_case(&NormSpec::l2(), a);
        pass &= ok;
        parts.push(d);
    }
    let el = start.elapsed();
    pass &= el < BUDGET_C2;
    Outcome::new(pass, format!("{}; {:.2}s (budget 30s)", parts.join("; "), el.as_secs_f64()))
}

// ---------------------------------------------------------------- criterion 3

fn pinned_trace<S: Scalar>(n: &NormSpec, alpha: S) -> bool {
    let opts = SolverOptions::<S>::default();
    match evolve(n, &alpha, 10, Engine::Auto, true, &LatticeSet::origin(), &opts) {
        Ok(t) => t.steps.len() == 11 && t.sets().all(|s| *s == LatticeSet::origin()),
        Err(_) => false,
    }
}

fn criterion_3() -> Outcome {
    let t_inf: Exact = pinning_threshold(&NormSpec::linf()).unwrap();
    let t_1: Exact = pinning_threshold(&NormSpec::l1()).unwrap();
    let t_2: f64 = pinning_threshold(&NormSpec::l2()).unwrap();
    let values = t_inf == q(4, 1) && t_1 == q(2, 1) && (t_2 - 2.0 * 2f64.sqrt()).abs() <= PIN_TOL_L2;
    let factor = q(101, 100);
    let pins = [
        pinned_trace(&NormSpec::linf(), t_inf * factor),
        pinned_trace(&NormSpec::l1(), t_1 * factor),
        pinned_trace(&NormSpec::l2(), t_2 * 1.01),
    ];
    Outcome::new(
        values && pins.iter().all(|&b| b),
        format!("thresholds ℓ∞={t_inf} ℓ1={t_1} ℓ2={t_2:.15}; 10-step constant traces at 1.01·threshold {pins:?}"),
    )
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Outcome {
    let n = NormSpec::linf();
    let opts = SolverOptions::<Exact>::default();
    let square: BTreeSet<(Exact, Exact)> =
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().map(|&(a, b)| (q(a, 1), q(b, 1))).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for alpha in [q(3, 1), q(5, 2), q(19, 10)] {
        let rep = nucleus(&n, &alpha, &opts.tol).unwrap();
        let expect_v = alpha * (q(4, 1) / alpha).floor();
        let poly: BTreeSet<(Exact, Exact)> = rep.polygon.iter().map(|v| (v[0], v[1])).collect();
        let shape_ok = rep.velocity == expect_v && poly == square;
        pass &= shape_ok;
        let motion = rep.motion();
        let a = alpha.to_f64();
        let mut gaps = Vec::new();
        let t = 1.0;
        let k_big = (alpha * q(16, 1)).floor().to_integer() as usize;
        let trace = evolve(&n, &alpha, k_big, Engine::Auto, true, &LatticeSet::origin(), &opts);
        let trace = match trace {
            Ok(t) => t,
            Err(e) => {
                pass = false;
                parts.push(format!("α={alpha}: evolve error {e}"));
                continue;
            }
        };
        for den in [4i64, 8, 16] {
            let eps = 1.0 / den as f64;
            let k = (alpha * q(den, 1)).floor().to_integer() as usize;
            let gap = hausdorff_gap(&trace.steps[k].set, eps, &motion, t);
            let v = motion.velocity;
            let bound = eps + v * (t - (eps / a) * k as f64);
            pass &= gap <= bound + TOL_F64;
            gaps.push(format!("ε=1/{den}: k={k} gap={gap:.4}≤{bound:.4}"));
        }
        parts.push(format!("α={alpha} v={} P=[−1,1]²:{shape_ok} {}", rep.velocity, gaps.join(" ")));
    }
    Outcome::new(pass, parts.join("; "))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Outcome {
    let mut pass = alpha_c(1) == q(12, 5) && alpha_c(2) == q(20, 11);
    let mut parts = vec![format!("α_C(1)={} α_C(2)={}", alpha_c(1), alpha_c(2))];
    let n = NormSpec::l1();
    let opts = SolverOptions::<Exact>::default();
    let origin = LatticeSet::origin();
    let mut matched = 0;
    let mut mism = Vec::new();
    for j in 0..20 {
        let alpha = q(104 + 15 * j, 100);
        let analysis = match l1_parity_analysis(&alpha) {
            Ok(a) => a,
            Err(e) => {
                mism.push(format!("α={alpha}: {e}"));
                continue;
            }
        };
        let r = match step_mincut(&n, &alpha, &origin, false, &opts) {
            Ok(r) => r,
            Err(e) => {
                mism.push(format!("α={alpha}: mincut {e}"));
                continue;
            }
        };
        let par = r.minimizer.parity().monochromatic();
        let sub = match analysis.first_step_parity {
            Parity::Even => BallLattice::Z2Even,
            Parity::Odd => BallLattice::Z2Odd,
        };
        let ball = ball_points(&n, &(q(4, 1) / alpha), sub, true).unwrap();
        if par == Some(analysis.first_step_parity) && r.minimizer == ball {
            matched += 1;
        } else {
            mism.push(format!("α={alpha}: predicted {:?}, minimizer {}", analysis.first_step_parity, fmt_set(&r.minimizer)));
        }
    }
    pass &= matched == 20;
    parts.push(format!("parity agrees on {matched}/20 α"));
    if !mism.is_empty() {
        parts.push(mism.join("; "));
    }
    let cross = set(&[(1, 0), (-1, 0), (0, 1), (0, -1)]);
    let alpha = q(11, 5);
    match evolve(&n, &alpha, 5, Engine::Mincut, false, &origin, &opts) {
        Ok(t) => {
            let ok = t.sets().skip(1).all(|s| *s == cross);
            pass &= ok;
            parts.push(format!("α=11/5 unconstrained orbit is the odd cross for k=1..5: {ok}"));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("α=11/5 evolve error {e}"));
        }
    }
    Outcome::new(pass, parts.join("; "))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Outcome {
    let n = NormSpec::elliptic(q(2, 1), q(-5, 3)).unwrap();
    let alpha = 3.0f64;
    let opts = SolverOptions::<f64>::default();
    let mut pass = true;
    let mut parts = Vec::new();
    match nucleus(&n, &alpha, &opts.tol) {
        Ok(r) => {
            let ok = r.nucleus == set(&[(0, 0), (1, 1), (-1, -1)]);
            pass &= ok;
            parts.push(format!("nucleus {} kind {}", fmt_set(&r.nucleus), r.kind));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("nucleus error {e}"));
        }
    }
    match evolve(&n, &alpha, 5, Engine::Mincut, true, &LatticeSet::origin(), &opts) {
        Ok(t) => {
            let ok = t.steps.iter().all(|s| {
                let k = s.k as i64;
                let diag: Vec<(i64, i64)> = (-k..=k).map(|j| (j, j)).collect();
                s.set == set(&diag)
            });
            pass &= ok;
            parts.push(format!("mincut steps k≤5 are diagonal segments: {ok}"));
        }
        Err(e) => {
            pass = false;
            parts.push(format!("evolve error {e}"));
        }
    }
    let reason = closed_form_precheck(&n, &alpha, &LatticeSet::origin(), &opts.tol);
    let refused = step_closed_form(&n, &alpha, &LatticeSet::origin(), &opts.tol);
    let ok = matches!(reason, Ok(Some(Hypothesis::Absolute)))
        && matches!(refused, Err(Error::HypothesisViolated(Hypothesis::Absolute)));
    pass &= ok;
    parts.push(format!("closed form refuses with {:?}", reason.ok().flatten()));
    Outcome::new(pass, parts.join("; "))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Outcome {
    let n = NormSpec::rect_max();
    let alpha = q(17, 10);
    let opts = SolverOptions::<Exact>::default();
    let origin = LatticeSet::origin();
    let listed = set(&[(0, 0), (1, 1), (-1, -1), (2, 1), (-2, -1), (3, 2), (-3, -2), (4, 3), (-4, -3), (5, 3), (-5, -3)]);
    let expected = listed.difference(&set(&[(5, 3), (-5, -3)]));
    let got = match step_mincut(&n, &alpha, &origin, false, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome::new(false, format!("mincut error {e}")),
    };
    // second route: exhaustive enumeration when the window allows it
    let brute_opts = SolverOptions { tol: q(0, 1), brute_cap: 24 };
    let brute = step_brute(&n, &alpha, &origin, false, &brute_opts);
    let routes_agree = match &brute {
        Ok(b) => b.minimizer == got.minimizer && b.energy.total == got.energy.total,
        Err(Error::WindowTooLarge { .. }) => true,
        Err(_) => false,
    };
    let brute_note = match &brute {
        Ok(_) => format!("exhaustive enumeration agrees: {routes_agree}"),
        Err(e) => format!("exhaustive enumeration skipped: {e}"),
    };
    let in_interval = alpha > q(20, 13) && alpha < q(40, 21);
    let pass = in_interval && got.minimizer == expected;
    if pass {
        return Outcome::new(true, format!("minimizer {}", fmt_set(&got.minimizer)));
    }
    let e_exp = scaled_energy(&n, &alpha, &expected, &origin).unwrap();
    let e_got = &got.energy;
    let partial = got.minimizer.contains(Point::new(1, 1))
        && got.minimizer.contains(Point::new(2, 1))
        && !got.minimizer.contains(Point::new(5, 3))
        && !got.minimizer.contains(Point::new(-5, -3))
        && !got.minimizer.is_checkerboard();
    let extra = got.minimizer.difference(&expected);
    let missing = expected.difference(&got.minimizer);
    let phi54: Exact = n.value(Point::new(5, 4)).unwrap();
    Outcome::new(
        false,
        format!(
            "minimizer {} (unique={}) has energy {} < {} of the listed set; extra {} missing {}. \
             φ(5,4)={} < 4/α={} so ±(5,4) lie in the open ball but are absent from the listed set; \
             each is an isolated cell worth −4 + α·φ = {} < 0. Adjacent pair (1,1),(2,1) present and \
             ±(5,3) excluded: {}. {}",
            fmt_set(&got.minimizer),
            got.unique,
            e_got.total,
            e_exp.total,
            fmt_set(&extra),
            fmt_set(&missing),
            phi54,
            q(4, 1) / alpha,
            q(-4, 1) + alpha * phi54,
            partial,
            brute_note
        ),
    )
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8a() -> Outcome {
    let r = nucleus(&NormSpec::l2(), &0.7f64, &TOL_F64).unwrap();
    let c = check_monotone_edges(&r.nucleus);
    Outcome::new(
        matches!(c, Ok(ref m) if m.is_ok()),
        format!("ℓ2 α=0.7 nucleus ({} cells): {:?}", r.nucleus.len(), c.map(|m| m.is_ok())),
    )
}

fn criterion_8b() -> Outcome {
    let n = NormSpec::lp(3.0).unwrap();
    let r = nucleus(&n, &0.71f64, &TOL_F64).unwrap();
    match check_monotone_edges(&r.nucleus) {
        Ok(m) if !m.is_ok() => Outcome::new(true, format!("ℓ3 α=0.71 nucleus violates monotone edges: {m:?}")),
        Ok(_) => {
            let verts = convex_hull(&r.nucleus).map(|h| h.vertices.len()).unwrap_or(0);
            Outcome::new(
                false,
                format!(
                    "ℓ3 α=0.71 nucleus ({} cells, {} hull vertices) passes the strict monotone-edges test: \
                     every pair of consecutive discrete edges along the clockwise walk turns its normal \
                     strictly clockwise, so there is no violation to detect on this set. The detector itself \
                     does flag crafted non-monotone sets (see the oracle tests).",
                    r.nucleus.len(),
                    verts
                ),
            )
        }
        Err(e) => Outcome::new(false, format!("ℓ3 α=0.71: boundary error {e}")),
    }
}

fn criterion_8c() -> Outcome {
    let mut pass = true;
    let mut checked = 0;
    let mut bad = Vec::new();
    let norms = [NormSpec::l1(), NormSpec::l2(), NormSpec::lp(3.0).unwrap(), NormSpec::lp(4.0).unwrap(), NormSpec::linf()];
    for n in &norms {
        for r in [2.5f64, 3.7, 5.2] {
            let s = ball_points(n, &r, BallLattice::Z2Even, false).unwrap();
            let eb = effective_boundary(&s).unwrap();
            for j in eb.iter() {
                checked += 1;
                if !matches!(is_nondegenerate(&s, j), Ok(Nondegeneracy::Nondegenerate { .. })) {
                    pass = false;
                    bad.push(format!("{n} r={r} at {j}"));
                }
            }
            if clockwise_boundary(&s).is_err() {
                pass = false;
                bad.push(format!("{n} r={r}: no clockwise walk"));
            }
        }
    }
    Outcome::new(pass, format!("{checked} boundary points over 5 norms × 3 radii; degenerate: {}", bad.len()))
}

// ---------------------------------------------------------------- criterion 9

fn random_polygon(rng: &mut ChaCha8Rng, even: bool) -> Option<ConvexLatticePolygon> {
    let k = rng.gen_range(3..8);
    let pts: Vec<Point> = (0..k)
        .map(|_| {
            let (a, b) = (rng.gen_range(-7..=7), rng.gen_range(-7..=7));
            if even {
                Point::new(a + b, a - b)
            } else {
                Point::new(a, b)
            }
        })
        .collect();
    let s: LatticeSet = pts.into_iter().collect();
    let h = convex_hull(&s).ok()?;
    (!h.is_degenerate() && h.area2 <= 200).then_some(h)
}

/// Minkowski sum of two convex polygons by merging edge sequences.
fn polygon_sum(a: &[Point], b: &[Point]) -> BTreeSet<Point> {
    fn start(v: &[Point]) -> usize {
        (0..v.len()).min_by_key(|&i| (v[i].i2, v[i].i1)).unwrap()
    }
    fn edges(v: &[Point]) -> Vec<Point> {
        let s = start(v);
        (0..v.len()).map(|k| v[(s + k + 1) % v.len()] - v[(s + k) % v.len()]).collect()
    }
    // angle order starting from direction (1, 0), counterclockwise
    fn half(e: Point) -> i32 {
        if e.i2 > 0 || (e.i2 == 0 && e.i1 > 0) {
            0
        } else {
            1
        }
    }
    let mut all: Vec<Point> = edges(a).into_iter().chain(edges(b)).collect();
    all.sort_by(|x, y| half(*x).cmp(&half(*y)).then_with(|| 0.cmp(&x.cross(*y))));
    let mut cur = a[start(a)] + b[start(b)];
    let mut out = BTreeSet::new();
    let mut k = 0;
    while k < all.len() {
        let mut e = all[k];
        while k + 1 < all.len() && e.cross(all[k + 1]) == 0 && half(e) == half(all[k + 1]) {
            k += 1;
            e = e + all[k];
        }
        out.insert(cur);
        cur = cur + e;
        k += 1;
    }
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pass = true;
    let mut pick_checked = 0;
    for lattice in [Sublattice::Z2, Sublattice::Z2Even] {
        let mut count = 0;
        while count < 100 {
            let Some(h) = random_polygon(&mut rng, lattice == Sublattice::Z2Even) else { continue };
            count += 1;
            for m in 1..=3u64 {
                let parity = (lattice == Sublattice::Z2Even).then_some(Parity::Even);
                let brute = lattice_points_in_scaled(&h, m as i64, parity).len() as u64;
                pick_checked += 1;
                if pick_count(&h, lattice, m).ok() != Some(brute) {
                    pass = false;
                }
            }
        }
    }
    let mut mfold = 0;
    let mut mfold_ok = true;
    while mfold < 50 {
        let Some(h) = random_polygon(&mut rng, true) else { continue };
        if h.area2 > 64 {
            continue;
        }
        let s = lattice_points_in_scaled(&h, 1, Some(Parity::Even));
        let shift = Point::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let s = s.translate(shift);
        let hs = convex_hull(&s).unwrap();
        mfold += 1;
        for m in 1..=4u32 {
            let direct = minkowski_power(&s, m);
            let parity = s.iter().next().map(|p| (p * m as i64).parity());
            let filled = lattice_points_in_scaled(&hs, m as i64, parity);
            let lib = mfold_identity_check(&s, m);
            if direct != filled || lib.ok() != Some(true) {
                mfold_ok = false;
            }
        }
    }
    pass &= mfold_ok;
    let mut sums = 0;
    let mut sums_ok = true;
    while sums < 50 {
        let (Some(a), Some(b)) = (random_polygon(&mut rng, false), random_polygon(&mut rng, false)) else { continue };
        let sa: LatticeSet = a.vertices.iter().copied().collect();
        let sb: LatticeSet = b.vertices.iter().copied().collect();
        // hull of the sum of point sets versus the sum of hulls
        let hull_sum = convex_hull(&minkowski_sum(&sa, &sb)).unwrap();
        let got: BTreeSet<Point> = hull_sum.vertices.iter().copied().collect();
        if got != polygon_sum(&a.vertices, &b.vertices) {
            sums_ok = false;
        }
        sums += 1;
    }
    pass &= sums_ok;
    let el = start.elapsed();
    pass &= el < BUDGET_C9;
    Outcome::new(
        pass,
        format!(
            "Pick {pick_checked} counts (200 polygons × m=1..3); m-fold on {mfold} sets m≤4: {mfold_ok}; \
             hull-of-sum on {sums} pairs: {sums_ok}; {:.2}s (budget 60s)",
            el.as_secs_f64()
        ),
    )
}

// --------------------------------------------------------------- criterion 10

fn criterion_10() -> Outcome {
    let r = step_brute(&NormSpec::linf(), &q(4, 1), &LatticeSet::origin(), true, &SolverOptions::default());
    match r {
        Ok(r) => {
            let ring: Vec<Point> = set(&[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)])
                .iter()
                .collect();
            let ok = !r.unique && r.zero_margin_cells == ring;
            Outcome::new(
                ok,
                format!("unique={} zero-margin cells {} minimizer {}", r.unique, r.zero_margin_cells.len(), fmt_set(&r.minimizer)),
            )
        }
        Err(e) => Outcome::new(false, format!("brute error {e}")),
    }
}

// --------------------------------------------------------------- criterion 11

fn criterion_11() -> Outcome {
    let opts = SolverOptions::<Exact>::default();
    match evolve(&NormSpec::linf(), &q(3, 1), 20, Engine::Auto, true, &LatticeSet::origin(), &opts) {
        Ok(t) => {
            let s = &t.steps[20].set;
            let h = convex_hull(s).unwrap();
            let ratio = s.len() as f64 / (h.area2 as f64 / 2.0);
            Outcome::new(
                (ratio - 0.5).abs() <= DENSITY_TOL,
                format!("k=20: {} cells, hull area {}, density {ratio:.4}", s.len(), h.area2 as f64 / 2.0),
            )
        }
        Err(e) => Outcome::new(false, format!("evolve error {e}")),
    }
}

// --------------------------------------------------------------- criterion 12

/// Bound evaluated from counts taken by enumeration rather than Pick.
fn bound_by_enumeration(alpha: Exact, nuc: &LatticeSet, k: i64) -> Exact {
    let h = convex_hull(nuc).unwrap();
    let area = q(h.area2, 2);
    let all = lattice_points_in_scaled(&h, 1, None);
    let boundary: Vec<Point> = all.iter().filter(|p| on_hull_boundary(&h, *p)).collect();
    let b1 = boundary.len() as i64;
    let be = boundary.iter().filter(|p| p.parity() == Parity::Even).count() as i64;
    let (kk, b1, be) = (q(k, 1), q(b1, 1), q(be, 1));
    let two = q(2, 1);
    let four = q(4, 1);
    let lin = -four * area - two * b1 + four * be + alpha * b1 / two;
    let con = four + alpha - two * area - two * b1 + two * be;
    alpha * area * kk * kk + lin * kk + con
}

fn on_hull_boundary(h: &ConvexLatticePolygon, p: Point) -> bool {
    let v = &h.vertices;
    (0..v.len()).any(|i| {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        (b - a).cross(p - a) == 0
    })
}

fn criterion_12() -> Outcome {
    let n = NormSpec::l1();
    let mut pass = true;
    let mut parts = Vec::new();
    for alpha in [q(19, 10), q(3, 2)] {
        let nuc = nucleus(&n, &alpha, &q(0, 1)).unwrap().nucleus;
        let k0 = parity_flip_k0(&alpha, &nuc, 100);
        let scan: Vec<bool> = (0..=100).map(|k| bound_by_enumeration(alpha, &nuc, k) > q(0, 1)).collect();
        let minimal = (0..=100usize).find(|&k| scan[k..].iter().all(|&b| b)).map(|k| k as u64);
        let ok = matches!(k0, Ok(Some(k)) if k <= 100 && Some(k) == minimal);
        pass &= ok;
        parts.push(format!("α={alpha}: k₀={:?} scan={minimal:?}", k0.ok().flatten()));
    }
    Outcome::new(pass, parts.join("; "))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1", "first-step structure", criterion_1),
        ("2", "nucleation", criterion_2),
        ("3", "pinning", criterion_3),
        ("4", "ℓ∞ limit motion", criterion_4),
        ("5", "ℓ1 parity", criterion_5),
        ("6", "elliptic 1D motion", criterion_6),
        ("7", "non-checkerboard minimizer", criterion_7),
        ("8a", "monotone edges on ℓ2 nucleus", criterion_8a),
        ("8b", "monotone-edges violation on ℓ3 nucleus", criterion_8b),
        ("8c", "non-degeneracy sweep", criterion_8c),
        ("9", "lattice identities", criterion_9),
        ("10", "non-uniqueness detection", criterion_10),
        ("11", "density diagnostic", criterion_11),
        ("12", "parity-flip bound", criterion_12),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && DOCUMENTED.contains(&id) { " (documented)" } else { "" };
        println!("[{tag}] C{id} {name}{note} ({:.2}s): {}", start.elapsed().as_secs_f64(), o.detail);
        if !o.pass && !DOCUMENTED.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
