use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use super::set::{LatticeSet, Point};
use crate::error::{Error, Result};

/// Same-parity points at ℓ1-distance exactly 2, in counterclockwise angular
/// order starting from the positive first axis. Odd indices are diagonals.
const RING: [Point; 8] = [
    Point::new(2, 0),
    Point::new(1, 1),
    Point::new(0, 2),
    Point::new(-1, 1),
    Point::new(-2, 0),
    Point::new(-1, -1),
    Point::new(0, -2),
    Point::new(1, -1),
];

/// Points of a monochromatic set that miss at least one diagonal neighbor.
pub fn effective_boundary(s: &LatticeSet) -> Result<LatticeSet> {
    if s.parity().monochromatic().is_none() && !s.is_empty() {
        return Err(Error::MixedParity);
    }
    Ok(s.iter().filter(|&p| on_boundary(s, p)).collect())
}

fn on_boundary(s: &LatticeSet, p: Point) -> bool {
    p.diagonals().iter().any(|q| !s.contains(*q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nondegeneracy {
    /// Clockwise predecessor and successor of the point along the local polygon.
    Nondegenerate { prev: Point, next: Point },
    Degenerate,
}

/// Local non-degeneracy test at an effective-boundary point `j`.
///
/// The segments of length √2 or 2 between points of `s` within ℓ1-distance 2
/// of `j` all emanate from `j` or join ring points, so the local polygon is
/// the fan of triangles around `j`. It is a triangulated simple polygon
/// exactly when the present ring points form one angular run whose
/// consecutive members are joined, with a single open gap.
pub fn is_nondegenerate(s: &LatticeSet, j: Point) -> Result<Nondegeneracy> {
    if !s.contains(j) || !on_boundary(s, j) {
        return Err(Error::NotBoundaryPoint(j));
    }
    Ok(local_fan(s, j))
}

fn local_fan(s: &LatticeSet, j: Point) -> Nondegeneracy {
    let present: Vec<usize> = (0..8).filter(|&k| s.contains(j + RING[k])).collect();
    if present.len() < 2 {
        return Nondegeneracy::Degenerate;
    }
    let joined = |a: usize, b: usize| {
        let step = (b + 8 - a) % 8;
        step == 1 || (step == 2 && a % 2 == 1)
    };
    let mut gaps = Vec::new();
    for (idx, &a) in present.iter().enumerate() {
        let b = present[(idx + 1) % present.len()];
        if !joined(a, b) {
            gaps.push(idx);
        }
    }
    if gaps.len() != 1 {
        return Nondegeneracy::Degenerate;
    }
    let g = gaps[0];
    let start = present[(g + 1) % present.len()];
    let end = present[g];
    Nondegeneracy::Nondegenerate { prev: j + RING[start], next: j + RING[end] }
}

/// Effective boundary in clockwise order, with predecessor/successor maps.
#[derive(Clone, Debug)]
pub struct BoundaryWalk {
    pub order: Vec<Point>,
    pub prev: HashMap<Point, Point>,
    pub next: HashMap<Point, Point>,
}

/// Walks the effective boundary clockwise, starting at its lexicographically
/// smallest point.
pub fn clockwise_boundary(s: &LatticeSet) -> Result<BoundaryWalk> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let boundary = effective_boundary(s)?;
    let mut prev = HashMap::new();
    let mut next = HashMap::new();
    let mut bad = Vec::new();
    for j in boundary.iter() {
        match local_fan(s, j) {
            Nondegeneracy::Nondegenerate { prev: p, next: n } => {
                prev.insert(j, p);
                next.insert(j, n);
            }
            Nondegeneracy::Degenerate => bad.push(j),
        }
    }
    if !bad.is_empty() {
        return Err(Error::DegenerateBoundary(bad));
    }
    let start = boundary.iter().next().ok_or(Error::EmptySet)?;
    let mut order = vec![start];
    let mut cur = next[&start];
    while cur != start {
        if !boundary.contains(cur) || order.len() > boundary.len() {
            return Err(Error::AmbiguousOrientation);
        }
        order.push(cur);
        cur = next[&cur];
    }
    if order.len() != boundary.len() {
        return Err(Error::AmbiguousOrientation);
    }
    for &j in &order {
        if prev[&next[&j]] != j {
            return Err(Error::AmbiguousOrientation);
        }
    }
    Ok(BoundaryWalk { order, prev, next })
}

/// Signed angle θ(v2, v1) = ((θ2 − θ1 + π) mod 2π) − π, in [−π, π).
pub fn signed_angle(v2: [f64; 2], v1: [f64; 2]) -> f64 {
    let d = v2[1].atan2(v2[0]) - v1[1].atan2(v1[0]);
    (d + PI).rem_euclid(2.0 * PI) - PI
}

/// Exact sign test θ(v2, v1) < 0 for integer directions: a clockwise turn of
/// angle in (0, π].
fn turns_clockwise(v2: Point, v1: Point) -> bool {
    let cross = v1.cross(v2);
    let dot = v1.i1 * v2.i1 + v1.i2 * v2.i2;
    cross < 0 || (cross == 0 && dot < 0)
}

/// Right normal ν⁺(j) direction (unnormalized).
fn right_normal(j: Point, next: Point) -> Point {
    Point::new(j.i2 - next.i2, next.i1 - j.i1)
}

/// Left normal ν⁻(j) direction (unnormalized).
fn left_normal(j: Point, prev: Point) -> Point {
    Point::new(prev.i2 - j.i2, j.i1 - prev.i1)
}

fn is_vertex(walk: &BoundaryWalk, j: Point) -> bool {
    let plus = right_normal(j, walk.next[&j]);
    let minus = left_normal(j, walk.prev[&j]);
    turns_clockwise(plus, minus)
}

/// Discrete convex vertices in clockwise order.
pub fn discrete_vertices(s: &LatticeSet) -> Result<Vec<Point>> {
    let walk = clockwise_boundary(s)?;
    Ok(walk.order.iter().copied().filter(|&j| is_vertex(&walk, j)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// slope 0: steps of (2,0)
    FlatI,
    /// slope in (0, 1/3]: one (1,−1) step, then (2,0) steps
    FlatII,
    /// slope in (1/3, 1): (1,−1) steps, last step (2,0)
    SlantIII,
    /// slope 1: all steps (1,−1)
    SlantIV,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeClass::FlatI => "flat-i",
            EdgeClass::FlatII => "flat-ii",
            EdgeClass::SlantIII => "slant-iii",
            EdgeClass::SlantIV => "slant-iv",
        })
    }
}

/// A maximal run `j⁰, …, j^L` (L ≥ 2) of clockwise-consecutive boundary
/// points between two discrete vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteEdge {
    pub points: Vec<Point>,
    /// `(j⁰₂ − j^L₂, j^L₁ − j⁰₁)`, not normalized.
    pub direction: Point,
    pub normal: [f64; 2],
    /// `normal₁ / normal₂`; ±∞ when the normal is horizontal.
    pub slope: f64,
    pub edge_class: EdgeClass,
}

impl DiscreteEdge {
    fn new(points: Vec<Point>) -> Self {
        let first = points[0];
        let last = *points.last().expect("edge has points");
        let direction = Point::new(first.i2 - last.i2, last.i1 - first.i1);
        let len = ((direction.i1 * direction.i1 + direction.i2 * direction.i2) as f64).sqrt();
        let normal = [direction.i1 as f64 / len, direction.i2 as f64 / len];
        let slope = if direction.i2 == 0 {
            if direction.i1 > 0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            direction.i1 as f64 / direction.i2 as f64
        };
        let a = direction.i1.abs().min(direction.i2.abs());
        let b = direction.i1.abs().max(direction.i2.abs());
        let edge_class = if a == 0 {
            EdgeClass::FlatI
        } else if 3 * a <= b {
            EdgeClass::FlatII
        } else if a < b {
            EdgeClass::SlantIII
        } else {
            EdgeClass::SlantIV
        };
        DiscreteEdge { points, direction, normal, slope, edge_class }
    }

    /// Number of steps L.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    /// Maps the edge by the lattice symmetry that brings its normal into the
    /// sector between (0,1) and (1,1), then checks the step pattern of its class.
    pub fn matches_step_pattern(&self) -> bool {
        let d = self.direction;
        let Some(m) = SYMMETRIES.iter().find(|m| {
            let n = apply(m, d);
            0 <= n.i1 && n.i1 <= n.i2 && n.i2 > 0
        }) else {
            return false;
        };
        let mut pts: Vec<Point> = self.points.iter().map(|&p| apply(m, p)).collect();
        if det(m) < 0 {
            pts.reverse();
        }
        let steps: Vec<Point> = pts.windows(2).map(|w| w[1] - w[0]).collect();
        let flat = Point::new(2, 0);
        let down = Point::new(1, -1);
        let l = steps.len();
        match self.edge_class {
            EdgeClass::FlatI => steps.iter().all(|&s| s == flat),
            EdgeClass::FlatII => steps[0] == down && steps[1..].iter().all(|&s| s == flat),
            EdgeClass::SlantIII => {
                steps[..l - 1].iter().all(|&s| s == down) && steps[l - 1] == flat
            }
            EdgeClass::SlantIV => steps.iter().all(|&s| s == down),
        }
    }
}

type Mat = [[i64; 2]; 2];

const SYMMETRIES: [Mat; 8] = [
    [[1, 0], [0, 1]],
    [[0, -1], [1, 0]],
    [[-1, 0], [0, -1]],
    [[0, 1], [-1, 0]],
    [[-1, 0], [0, 1]],
    [[1, 0], [0, -1]],
    [[0, 1], [1, 0]],
    [[0, -1], [-1, 0]],
];

fn apply(m: &Mat, p: Point) -> Point {
    Point::new(m[0][0] * p.i1 + m[0][1] * p.i2, m[1][0] * p.i1 + m[1][1] * p.i2)
}

fn det(m: &Mat) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Discrete edges in clockwise order. Runs with a single step are not edges.
pub fn discrete_edges(s: &LatticeSet) -> Result<Vec<DiscreteEdge>> {
    let walk = clockwise_boundary(s)?;
    let n = walk.order.len();
    let vertex_pos: Vec<usize> = (0..n).filter(|&i| is_vertex(&walk, walk.order[i])).collect();
    let mut edges = Vec::new();
    for (k, &a) in vertex_pos.iter().enumerate() {
        let b = vertex_pos[(k + 1) % vertex_pos.len()];
        let len = if b > a { b - a } else { b + n - a };
        if len < 2 {
            continue;
        }
        let run: Vec<Point> = (0..=len).map(|t| walk.order[(a + t) % n]).collect();
        edges.push(DiscreteEdge::new(run));
    }
    Ok(edges)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MonotoneCheck {
    Ok,
    Violation(DiscreteEdge, DiscreteEdge),
}

impl MonotoneCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, MonotoneCheck::Ok)
    }
}

/// Strict clockwise rotation of normals between consecutive discrete edges.
pub fn check_monotone_edges(s: &LatticeSet) -> Result<MonotoneCheck> {
    let edges = discrete_edges(s)?;
    if edges.len() < 2 {
        return Ok(MonotoneCheck::Ok);
    }
    for k in 0..edges.len() {
        let a = &edges[k];
        let b = &edges[(k + 1) % edges.len()];
        if !turns_clockwise(b.direction, a.direction) {
            return Ok(MonotoneCheck::Violation(a.clone(), b.clone()));
        }
    }
    Ok(MonotoneCheck::Ok)
}

/// Invariance under coordinate sign changes and the swap `(i1,i2) ↦ (i2,i1)`.
pub fn check_symmetry(s: &LatticeSet) -> bool {
    s.iter().all(|p| {
        s.contains(Point::new(-p.i1, p.i2))
            && s.contains(Point::new(p.i1, -p.i2))
            && s.contains(Point::new(p.i2, p.i1))
    })
}
