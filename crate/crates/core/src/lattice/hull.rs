use super::set::{LatticeSet, Parity, Point};
use crate::error::{Error, Result};

/// Convex hull of lattice points with canonical (strictly convex) vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexLatticePolygon {
    /// Counterclockwise, no three collinear. A segment hull has two vertices,
    /// a point hull one.
    pub vertices: Vec<Point>,
    /// Twice the Euclidean area.
    pub area2: i64,
}

impl ConvexLatticePolygon {
    pub fn is_degenerate(&self) -> bool {
        self.area2 == 0
    }

    /// Whether `p` lies in the closed polygon `m·Q`.
    pub fn contains_scaled(&self, p: Point, m: i64) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => p == self.vertices[0] * m,
            2 => {
                let a = self.vertices[0] * m;
                let b = self.vertices[1] * m;
                let ab = b - a;
                let ap = p - a;
                ab.cross(ap) == 0 && {
                    let t = ab.i1 * ap.i1 + ab.i2 * ap.i2;
                    0 <= t && t <= ab.i1 * ab.i1 + ab.i2 * ab.i2
                }
            }
            n => (0..n).all(|k| {
                let a = self.vertices[k] * m;
                let b = self.vertices[(k + 1) % n] * m;
                (b - a).cross(p - a) >= 0
            }),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_scaled(p, 1)
    }

    /// Edge vectors `v_{k+1} − v_k` in counterclockwise order.
    pub fn edge_vectors(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n).map(|k| self.vertices[(k + 1) % n] - self.vertices[k]).collect()
    }

    pub fn max_i1(&self) -> i64 {
        self.vertices.iter().map(|v| v.i1).max().unwrap_or(0)
    }
}

/// Monotone-chain hull with exact integer cross products.
pub fn convex_hull(s: &LatticeSet) -> Result<ConvexLatticePolygon> {
    hull_of_points(s.as_slice())
}

pub(crate) fn hull_of_points(points: &[Point]) -> Result<ConvexLatticePolygon> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.is_empty() {
        return Err(Error::EmptySet);
    }
    if pts.len() == 1 {
        return Ok(ConvexLatticePolygon { vertices: pts, area2: 0 });
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    if vertices.len() <= 2 {
        // all points collinear: keep the two extremes
        let a = pts[0];
        let b = *pts.last().expect("non-empty");
        return Ok(ConvexLatticePolygon { vertices: vec![a, b], area2: 0 });
    }
    let n = vertices.len();
    let area2 = (0..n).map(|k| vertices[k].cross(vertices[(k + 1) % n])).sum();
    Ok(ConvexLatticePolygon { vertices, area2 })
}

fn turn(a: Point, b: Point, c: Point) -> i64 {
    (b - a).cross(c - a)
}

/// Lattice points of the given parity class inside `m·Q`.
pub fn lattice_points_in_scaled(q: &ConvexLatticePolygon, m: i64, parity: Option<Parity>) -> LatticeSet {
    if q.vertices.is_empty() {
        return LatticeSet::new();
    }
    let lo1 = q.vertices.iter().map(|v| v.i1).min().unwrap() * m;
    let hi1 = q.vertices.iter().map(|v| v.i1).max().unwrap() * m;
    let lo2 = q.vertices.iter().map(|v| v.i2).min().unwrap() * m;
    let hi2 = q.vertices.iter().map(|v| v.i2).max().unwrap() * m;
    let mut out = Vec::new();
    for i1 in lo1.min(hi1)..=hi1.max(lo1) {
        for i2 in lo2.min(hi2)..=hi2.max(lo2) {
            let p = Point::new(i1, i2);
            if parity.is_some_and(|par| p.parity() != par) {
                continue;
            }
            if q.contains_scaled(p, m) {
                out.push(p);
            }
        }
    }
    out.into_iter().collect()
}

/// `conv(s) ∩ (parity class of s) = s`.
pub fn is_sublattice_convex(s: &LatticeSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let parity = s.parity().monochromatic().ok_or(Error::MixedParity)?;
    let hull = convex_hull(s)?;
    let filled = lattice_points_in_scaled(&hull, 1, Some(parity));
    Ok(filled.len() == s.len())
}

/// `{x + y : x ∈ a, y ∈ b}`; empty if either operand is empty.
pub fn minkowski_sum(a: &LatticeSet, b: &LatticeSet) -> LatticeSet {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            out.push(x + y);
        }
    }
    out.into_iter().collect()
}

/// m-fold Minkowski sum by repeated addition (`m = 0` gives `{0}`).
pub fn minkowski_power(s: &LatticeSet, m: u32) -> LatticeSet {
    let mut acc = LatticeSet::origin();
    for _ in 0..m {
        acc = minkowski_sum(&acc, s);
    }
    acc
}

/// Points of `k·conv(s)` in the parity class reached by sums of `k` points of `s`.
pub fn fast_scaled_hull_points(s: &LatticeSet, k: i64) -> Result<LatticeSet> {
    let first = s.iter().next().ok_or(Error::EmptySet)?;
    let hull = convex_hull(s)?;
    let parity = (first * k).parity();
    Ok(lattice_points_in_scaled(&hull, k, Some(parity)))
}

/// Compares the m-fold Minkowski sum of `s` with `(m·conv(s))` intersected
/// with the matching parity class.
pub fn mfold_identity_check(s: &LatticeSet, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    s.parity().monochromatic().ok_or(Error::MixedParity)?;
    let hull = convex_hull(s)?;
    if hull.is_degenerate() {
        return Err(Error::DegeneratePolygon);
    }
    if !is_sublattice_convex(s)? {
        return Err(Error::HypothesisViolated(crate::error::Hypothesis::SublatticeConvex));
    }
    let lhs = minkowski_power(s, m);
    let rhs = fast_scaled_hull_points(s, m as i64)?;
    Ok(lhs == rhs)
}
