//! Nucleus, limit polygon and velocity, limit sets, the fast-regime ball,
//! a Hausdorff diagnostic and the ℓ1 parity thresholds.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lattice::{
    check_monotone_edges, check_symmetry, clockwise_boundary, convex_hull, is_sublattice_convex, LatticeSet, Parity,
    Point,
};
use crate::norms::{ball_points, is_singular, nearest_singular, BallLattice, NormSpec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MotionKind {
    Nucleation,
    Pinned,
    FastRegimeBall,
    Segment,
}

impl std::fmt::Display for MotionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MotionKind::Nucleation => "nucleation",
            MotionKind::Pinned => "pinned",
            MotionKind::FastRegimeBall => "fast_regime_ball",
            MotionKind::Segment => "segment",
        })
    }
}

/// Structural checks on the norm and the nucleus. `None` marks checks that
/// do not apply (a single-cell nucleus, or a degenerate boundary).
#[derive(Clone, Debug, PartialEq)]
pub struct NucleusHypotheses {
    pub absolute: bool,
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub submodular: bool,
    pub sublattice_convex: bool,
    pub nondegenerate: Option<bool>,
    pub monotone_edges: Option<bool>,
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NucleusReport<S> {
    pub nucleus: LatticeSet,
    pub alpha: S,
    pub pinned: bool,
    pub max_i1: i64,
    /// Vertices of the normalized polygon (segment endpoints for segments).
    pub polygon: Vec<[Rational64; 2]>,
    pub velocity: S,
    pub kind: MotionKind,
    pub hypotheses: NucleusHypotheses,
    pub nearest_singular: S,
}

impl<S: Scalar> NucleusReport<S> {
    pub fn motion(&self) -> LimitMotion {
        LimitMotion { polygon: self.polygon.clone(), velocity: self.velocity.to_f64(), kind: self.kind }
    }

    /// `max_i1 ∈ {2⌊2/α⌋, ⌊4/α⌋}`.
    pub fn max_i1_candidates(&self) -> [i64; 2] {
        let a = self.alpha.to_f64();
        [2 * (2.0 / a).floor() as i64, (4.0 / a).floor() as i64]
    }
}

/// The first-step minimizer `ℤ²ₑ ∩ B(0, 4/α)` with its limit data.
pub fn nucleus<S: Scalar>(n: &NormSpec, alpha: &S, tol: &S) -> Result<NucleusReport<S>> {
    if *alpha <= S::zero() {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let nearest = nearest_singular(n, alpha)?;
    if is_singular(n, alpha, tol)? {
        return Err(Error::SingularAlpha { alpha: alpha.to_f64(), nearest: nearest.to_f64() });
    }
    let radius = S::from_i64(4) / alpha.clone();
    let set = ball_points(n, &radius, BallLattice::Z2Even, true)?;
    let hull = convex_hull(&set)?;
    let max_i1 = set.max_i1().unwrap_or(0);
    let pinned = set.len() == 1;
    let (kind, normalizer) = if pinned {
        (MotionKind::Pinned, 1)
    } else if hull.is_degenerate() {
        let m = if max_i1 > 0 { max_i1 } else { set.iter().map(|p| p.i2.abs()).max().unwrap_or(1) };
        (MotionKind::Segment, m)
    } else {
        (MotionKind::Nucleation, max_i1)
    };
    let polygon = if pinned {
        vec![[Rational64::from_integer(0); 2]]
    } else {
        hull.vertices
            .iter()
            .map(|v| [Rational64::new(v.i1, normalizer), Rational64::new(v.i2, normalizer)])
            .collect()
    };
    let hypotheses = NucleusHypotheses {
        absolute: n.flags.absolute,
        h1: n.flags.h1_symmetric,
        h2: n.flags.h2_normalized,
        h3: n.flags.h3,
        submodular: n.flags.submodular,
        sublattice_convex: is_sublattice_convex(&set)?,
        nondegenerate: (!pinned).then(|| clockwise_boundary(&set).is_ok()),
        monotone_edges: if pinned { None } else { check_monotone_edges(&set).ok().map(|c| c.is_ok()) },
        symmetric: check_symmetry(&set),
    };
    Ok(NucleusReport {
        velocity: alpha.clone() * S::from_i64(max_i1),
        nucleus: set,
        alpha: alpha.clone(),
        pinned,
        max_i1,
        polygon,
        kind,
        hypotheses,
        nearest_singular: nearest,
    })
}

/// `E(t) = v·t·P` (or `E₀ + v·t·P` for a general initial polygon).
#[derive(Clone, Debug, PartialEq)]
pub struct LimitMotion {
    pub polygon: Vec<[Rational64; 2]>,
    pub velocity: f64,
    pub kind: MotionKind,
}

impl LimitMotion {
    pub fn pinned() -> Self {
        LimitMotion { polygon: vec![[Rational64::from_integer(0); 2]], velocity: 0.0, kind: MotionKind::Pinned }
    }
}

fn rat(r: &Rational64) -> f64 {
    f64::from_rational(*r)
}

/// Vertices of `v·t·P`; a single origin vertex when the motion is trivial.
pub fn limit_set(m: &LimitMotion, t: f64) -> Vec<[f64; 2]> {
    let s = m.velocity * t;
    if s == 0.0 || m.kind == MotionKind::Pinned {
        return vec![[0.0, 0.0]];
    }
    m.polygon.iter().map(|v| [s * rat(&v[0]), s * rat(&v[1])]).collect()
}

/// `E₀ + v·t·P` for a convex initial polygon `E₀`.
pub fn limit_set_from(m: &LimitMotion, initial: &[[f64; 2]], t: f64) -> Vec<[f64; 2]> {
    let grown = limit_set(m, t);
    let sums: Vec<[f64; 2]> =
        initial.iter().flat_map(|a| grown.iter().map(move |b| [a[0] + b[0], a[1] + b[1]])).collect();
    hull_f64(sums)
}

fn hull_f64(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// The norm ball `B(0, 4t)` that the unconstrained fast regime converges to.
#[derive(Clone, Debug, PartialEq)]
pub struct FastRegimeBall {
    pub norm: NormSpec,
    pub radius: f64,
}

impl FastRegimeBall {
    pub fn kind(&self) -> MotionKind {
        MotionKind::FastRegimeBall
    }

    pub fn contains(&self, x: [f64; 2]) -> bool {
        self.norm.evaluate(x) <= self.radius
    }

    /// Boundary points `r·u/φ(u)` for `samples` equally spaced directions.
    pub fn boundary(&self, samples: usize) -> Vec<[f64; 2]> {
        if self.radius == 0.0 {
            return vec![[0.0, 0.0]];
        }
        (0..samples)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
                let u = [th.cos(), th.sin()];
                let s = self.radius / self.norm.evaluate(u);
                [s * u[0], s * u[1]]
            })
            .collect()
    }
}

pub fn fast_regime_limit(n: &NormSpec, t: f64) -> FastRegimeBall {
    FastRegimeBall { norm: n.clone(), radius: 4.0 * t.max(0.0) }
}

fn dist_to_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = if len2 == 0.0 { 0.0 } else { ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0) };
    (ap[0] - s * ab[0]).hypot(ap[1] - s * ab[1])
}

/// Euclidean distance from `p` to a convex polygon given counterclockwise
/// (a point or a segment when it has fewer than three vertices).
fn dist_to_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (p[0] - poly[0][0]).hypot(p[1] - poly[0][1]),
        2 => dist_to_segment(p, poly[0], poly[1]),
        n => {
            let inside = (0..n).all(|k| {
                let a = poly[k];
                let b = poly[(k + 1) % n];
                (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0.0
            });
            if inside {
                0.0
            } else {
                (0..n).map(|k| dist_to_segment(p, poly[k], poly[(k + 1) % n])).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

fn dist_to_square(p: [f64; 2], c: [f64; 2], h: f64) -> f64 {
    let dx = ((p[0] - c[0]).abs() - h).max(0.0);
    let dy = ((p[1] - c[1]).abs() - h).max(0.0);
    dx.hypot(dy)
}

/// Distance from `p` to `ε·(union of unit cells of s)`, by ring search.
fn dist_to_cells(p: [f64; 2], s: &LatticeSet, eps: f64) -> f64 {
    if s.is_empty() {
        return f64::INFINITY;
    }
    let c = Point::new((p[0] / eps).round() as i64, (p[1] / eps).round() as i64);
    let (lo, hi) = s.bbox().expect("non-empty");
    let max_r = [c.i1 - lo.i1, hi.i1 - c.i1, c.i2 - lo.i2, hi.i2 - c.i2].into_iter().max().unwrap().max(0);
    let mut best = f64::INFINITY;
    for r in 0..=max_r {
        // every cell on ring r is at least (r − 1)·ε away
        if (r as f64 - 1.0) * eps > best {
            break;
        }
        for i1 in c.i1 - r..=c.i1 + r {
            for i2 in c.i2 - r..=c.i2 + r {
                if (i1 - c.i1).abs().max((i2 - c.i2).abs()) != r {
                    continue;
                }
                if s.contains(Point::new(i1, i2)) {
                    let d = dist_to_square(p, [i1 as f64 * eps, i2 as f64 * eps], eps / 2.0);
                    best = best.min(d);
                }
            }
        }
    }
    best
}

/// Hausdorff distance between `ε·(cells of orbit_step)` and the limit set at
/// time `t`, with sampling pitch `ε/4`.
pub fn hausdorff_gap(orbit_step: &LatticeSet, eps: f64, m: &LimitMotion, t: f64) -> f64 {
    hausdorff_gap_with_pitch(orbit_step, eps, &limit_set(m, t), eps / 4.0)
}

/// The cell-to-polygon part is exact (distance to a convex set is convex, so
/// it peaks at cell corners). The polygon-to-cells part samples the polygon
/// on a grid of spacing `pitch/2`; the result overestimates the true value by
/// at most `pitch`.
pub fn hausdorff_gap_with_pitch(cells: &LatticeSet, eps: f64, polygon: &[[f64; 2]], pitch: f64) -> f64 {
    let poly = hull_f64(polygon.to_vec());
    let half = eps / 2.0;
    let mut gap: f64 = 0.0;
    for c in cells.iter() {
        let (x, y) = (c.i1 as f64 * eps, c.i2 as f64 * eps);
        for (dx, dy) in [(-half, -half), (-half, half), (half, -half), (half, half)] {
            gap = gap.max(dist_to_polygon([x + dx, y + dy], &poly));
        }
    }
    let h = pitch / 2.0;
    let slack = h / std::f64::consts::SQRT_2;
    let xs = poly.iter().map(|v| v[0]);
    let ys = poly.iter().map(|v| v[1]);
    let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let (a0, a1) = (((x0 - h) / h).floor() as i64, ((x1 + h) / h).ceil() as i64);
    let (b0, b1) = (((y0 - h) / h).floor() as i64, ((y1 + h) / h).ceil() as i64);
    let mut far: f64 = 0.0;
    for a in a0..=a1 {
        for b in b0..=b1 {
            let g = [a as f64 * h, b as f64 * h];
            // every polygon point lies within h/√2 of such a grid point
            if dist_to_polygon(g, &poly) <= slack {
                far = far.max(dist_to_cells(g, cells, eps) + slack);
            }
        }
    }
    gap.max(far)
}

/// Parity threshold where the even and odd first-step checkerboards of the
/// ℓ1 norm have equal energy, for `R = ⌊4/α⌋ ≥ 1`.
pub fn alpha_c(r: u32) -> Rational64 {
    assert!(r >= 1, "alpha_c needs R >= 1");
    let r = r as i64;
    let base = 2 * r * (r + 1);
    if r % 2 == 1 {
        Rational64::new(4 * (2 * r + 1), base + 1)
    } else {
        Rational64::new(4 * (2 * r + 1), base - 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct L1Parity<S> {
    pub r: u32,
    pub energy_even: S,
    pub energy_odd: S,
    pub first_step_parity: Parity,
    /// Bounds of the α-interval around `alpha` on which the parity is fixed.
    pub threshold_below: Rational64,
    /// `None` when the interval is unbounded above.
    pub threshold_above: Option<Rational64>,
}

/// Energies of the even and odd ℓ1 checkerboards relative to the unit cell,
/// as `(A_even, B_even, A_odd, B_odd)` with `E = A + α·B`.
fn l1_energy_coefficients(r: u32) -> (i64, i64, i64, i64) {
    let r = r as i64;
    let he = r / 2;
    let ho = (r + 1) / 2;
    let a_e = -4 * (2 * he + 1) * (2 * he + 1);
    let b_e: i64 = 4 * (1..=he).map(|j| (2 * j) * (2 * j)).sum::<i64>();
    let a_o = -4 * (2 * ho) * (2 * ho);
    let b_o: i64 = 4 * (1..=ho).map(|j| (2 * j - 1) * (2 * j - 1)).sum::<i64>() + 1;
    (a_e, b_e, a_o, b_o)
}

fn thresholds(r: u32, above_crossing: bool) -> (Rational64, Option<Rational64>) {
    match (r, above_crossing) {
        (0, _) => (alpha_c(1), None),
        (1, true) => (alpha_c(1), None),
        (r, true) => (alpha_c(r), Some(alpha_c(r - 1))),
        (r, false) => (alpha_c(r + 1), Some(alpha_c(r))),
    }
}

/// Exact comparison of the two ℓ1 first-step checkerboards.
pub fn l1_parity_analysis(alpha: &Rational64) -> Result<L1Parity<Rational64>> {
    if *alpha <= Rational64::from_integer(0) {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let q = Rational64::from_integer(4) / *alpha;
    if q.is_integer() {
        let nearest = f64::from_rational(*alpha);
        return Err(Error::SingularAlpha { alpha: nearest, nearest });
    }
    let r = q.floor().to_integer() as u32;
    let (a_e, b_e, a_o, b_o) = l1_energy_coefficients(r);
    let e = Rational64::from_integer(a_e) + *alpha * Rational64::from_integer(b_e);
    let o = Rational64::from_integer(a_o) + *alpha * Rational64::from_integer(b_o);
    if e == o {
        return Err(Error::ParityTie(f64::from_rational(*alpha)));
    }
    let parity = if e < o { Parity::Even } else { Parity::Odd };
    let above = r == 0 || *alpha > alpha_c(r);
    let (threshold_below, threshold_above) = thresholds(r, above);
    Ok(L1Parity { r, energy_even: e, energy_odd: o, first_step_parity: parity, threshold_below, threshold_above })
}

/// Real-α variant: energies in `f64`, the decision routed through the exact
/// thresholds.
pub fn l1_parity_analysis_f64(alpha: f64, tol: f64) -> Result<L1Parity<f64>> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let q = 4.0 / alpha;
    if (q - q.round()).abs() <= tol && q.round() >= 1.0 {
        return Err(Error::SingularAlpha { alpha, nearest: 4.0 / q.round() });
    }
    let r = q.floor() as u32;
    let (a_e, b_e, a_o, b_o) = l1_energy_coefficients(r);
    let e = a_e as f64 + alpha * b_e as f64;
    let o = a_o as f64 + alpha * b_o as f64;
    let parity = if r == 0 {
        Parity::Even
    } else {
        let c = f64::from_rational(alpha_c(r));
        if (alpha - c).abs() <= tol {
            return Err(Error::ParityTie(alpha));
        }
        match (r.is_multiple_of(2), alpha < c) {
            (true, true) | (false, false) => Parity::Even,
            _ => Parity::Odd,
        }
    };
    let above = r == 0 || alpha > f64::from_rational(alpha_c(r));
    let (threshold_below, threshold_above) = thresholds(r, above);
    Ok(L1Parity { r, energy_even: e, energy_odd: o, first_step_parity: parity, threshold_below, threshold_above })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::scaled_energy;

    #[test]
    fn nucleus_examples() {
        let tol = Rational64::from_integer(0);
        let r = nucleus(&NormSpec::linf(), &Rational64::from_integer(3), &tol).unwrap();
        assert_eq!(r.nucleus.len(), 5);
        assert_eq!((r.max_i1, r.velocity), (1, Rational64::from_integer(3)));
        assert_eq!(r.kind, MotionKind::Nucleation);
        assert_eq!(r.polygon.len(), 4);
        assert!(r.max_i1_candidates().contains(&1));

        let p = nucleus(&NormSpec::l1(), &Rational64::from_integer(5), &tol).unwrap();
        assert!(p.pinned);
        assert_eq!(p.polygon, vec![[Rational64::from_integer(0); 2]]);

        let e = nucleus(&NormSpec::linf(), &Rational64::from_integer(4), &tol);
        assert!(matches!(e, Err(Error::SingularAlpha { .. })));
    }

    #[test]
    fn l2_shapes_differ() {
        let a = nucleus(&NormSpec::l2(), &0.85, &1e-9).unwrap();
        let b = nucleus(&NormSpec::l2(), &0.7, &1e-9).unwrap();
        assert_eq!((a.max_i1, b.max_i1), (4, 5));
        assert_ne!(a.polygon, b.polygon);
    }

    #[test]
    fn limit_examples() {
        let r = nucleus(&NormSpec::linf(), &Rational64::from_integer(3), &Rational64::from_integer(0)).unwrap();
        let m = r.motion();
        let sq = limit_set(&m, 2.0);
        assert!(sq.iter().all(|v| v[0].abs() == 6.0 && v[1].abs() == 6.0));
        assert_eq!(limit_set(&m, 0.0), vec![[0.0, 0.0]]);
        assert_eq!(limit_set(&LimitMotion::pinned(), 5.0), vec![[0.0, 0.0]]);
        let grown = limit_set_from(&m, &[[-1.0, 0.0], [1.0, 0.0]], 1.0);
        assert_eq!(grown.len(), 4);
        assert!(grown.iter().any(|v| v == &[4.0, 3.0]));

        let b = fast_regime_limit(&NormSpec::l2(), 1.0);
        assert_eq!(b.radius, 4.0);
        assert!(b.boundary(16).iter().all(|p| (p[0].hypot(p[1]) - 4.0).abs() < 1e-12));
        let s = fast_regime_limit(&NormSpec::linf(), 0.5);
        assert!(s.contains([2.0, -2.0]) && !s.contains([2.01, 0.0]));
    }

    #[test]
    fn hausdorff_examples() {
        let r = nucleus(&NormSpec::linf(), &Rational64::from_integer(3), &Rational64::from_integer(0)).unwrap();
        let m = r.motion();
        let g = hausdorff_gap(&LatticeSet::origin(), 0.125, &m, 0.0);
        assert!(g <= 0.125 + 1e-12, "{g}");
        // the unit cell against a single point: corners at distance ε/√2
        assert!((g - 0.125 / std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn l1_thresholds() {
        assert_eq!(alpha_c(1), Rational64::new(12, 5));
        assert_eq!(alpha_c(2), Rational64::new(20, 11));
        let a = l1_parity_analysis(&Rational64::new(11, 5)).unwrap();
        assert_eq!(a.first_step_parity, Parity::Odd);
        assert_eq!(a.threshold_above, Some(Rational64::new(12, 5)));
        assert_eq!(a.threshold_below, Rational64::new(20, 11));
        let big = l1_parity_analysis(&Rational64::from_integer(5)).unwrap();
        assert_eq!((big.first_step_parity, big.threshold_above), (Parity::Even, None));
        assert!(matches!(l1_parity_analysis(&Rational64::from_integer(2)), Err(Error::SingularAlpha { .. })));
        assert!(matches!(l1_parity_analysis(&Rational64::new(12, 5)), Err(Error::ParityTie(_))));
    }

    #[test]
    fn l1_energies_match_direct_evaluation() {
        let n = NormSpec::l1();
        let q = LatticeSet::origin();
        for (num, den) in [(11, 5), (19, 10), (3, 2), (13, 10), (7, 10), (5, 2)] {
            let alpha = Rational64::new(num, den);
            let a = l1_parity_analysis(&alpha).unwrap();
            let radius = Rational64::from_integer(4) / alpha;
            let even = ball_points(&n, &radius, BallLattice::Z2Even, true).unwrap();
            let odd = ball_points(&n, &radius, BallLattice::Z2Odd, true).unwrap();
            assert_eq!(scaled_energy(&n, &alpha, &even, &q).unwrap().total, a.energy_even);
            assert_eq!(scaled_energy(&n, &alpha, &odd, &q).unwrap().total, a.energy_odd);
            let f = l1_parity_analysis_f64(num as f64 / den as f64, 1e-9).unwrap();
            assert_eq!(f.first_step_parity, a.first_step_parity);
        }
    }
}
