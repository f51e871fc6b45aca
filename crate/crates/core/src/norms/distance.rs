use super::NormSpec;
use crate::error::{Error, Result};
use crate::lattice::{LatticeSet, Parity, Point};
use crate::scalar::Scalar;

/// Sublattice selector for ball enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BallLattice {
    Z2,
    Z2Even,
    Z2Odd,
}

impl BallLattice {
    fn admits(self, p: Point) -> bool {
        match self {
            BallLattice::Z2 => true,
            BallLattice::Z2Even => p.parity() == Parity::Even,
            BallLattice::Z2Odd => p.parity() == Parity::Odd,
        }
    }
}

/// Points of `sub` with `φ(i) < radius` (strict) or `φ(i) ≤ radius`.
///
/// Comparisons are exact in `S`; callers working in floats near a singular
/// radius should consult [`is_singular`] first.
pub fn ball_points<S: Scalar>(n: &NormSpec, radius: &S, sub: BallLattice, strict: bool) -> Result<LatticeSet> {
    let b = n.box_radius(radius.to_f64().max(0.0));
    let mut out = Vec::new();
    for i1 in -b..=b {
        for i2 in -b..=b {
            let p = Point::new(i1, i2);
            if !sub.admits(p) {
                continue;
            }
            let v: S = n.value(p)?;
            if (strict && v < *radius) || (!strict && v <= *radius) {
                out.push(p);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Values `4/φ(i)` for even `i ≠ 0` above a cutoff, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSet<S> {
    pub values: Vec<S>,
    /// The largest `φ(i)` that was enumerated, `4/alpha_min`.
    pub cutoff: S,
}

pub fn singular_set<S: Scalar>(n: &NormSpec, alpha_min: &S) -> Result<SingularSet<S>> {
    if *alpha_min <= S::zero() {
        return Err(Error::InvalidArgument("alpha_min must be positive".into()));
    }
    let cutoff = S::from_i64(4) / alpha_min.clone();
    let tol = S::default_tol();
    let pts = ball_points(n, &(cutoff.clone() + tol.clone()), BallLattice::Z2Even, false)?;
    let mut values: Vec<S> = Vec::new();
    for p in pts.iter().filter(|p| *p != Point::ORIGIN) {
        let v = S::from_i64(4) / n.value::<S>(p)?;
        if alpha_min.le_tol(&v, &tol) {
            values.push(v);
        }
    }
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
    values.dedup_by(|a, b| a.near(b, &tol));
    Ok(SingularSet { values, cutoff })
}

/// Whether `|4/φ(i) − alpha| ≤ tol` for some even `i ≠ 0`.
pub fn is_singular<S: Scalar>(n: &NormSpec, alpha: &S, tol: &S) -> Result<bool> {
    let lo = alpha.clone() - tol.clone();
    if lo <= S::zero() {
        // Λ accumulates at 0
        return Ok(true);
    }
    let set = singular_set(n, &lo)?;
    Ok(set.values.iter().any(|v| v.near(alpha, tol)))
}

/// Element of the singular set closest to `alpha`.
pub fn nearest_singular<S: Scalar>(n: &NormSpec, alpha: &S) -> Result<S> {
    let top = S::from_i64(4) / n.value::<S>(Point::new(1, 1))?;
    let half = alpha.clone() / S::from_i64(2);
    // values below alpha/2 are farther than alpha/2 and hence farther than `top`
    // whenever `top ≥ alpha/2`; otherwise `top` is the nearest anyway
    let floor = if half < top { half } else { top.clone() };
    let set = singular_set(n, &floor)?;
    let best = set
        .values
        .into_iter()
        .min_by(|a, b| {
            let da = (a.clone() - alpha.clone()).abs();
            let db = (b.clone() - alpha.clone()).abs();
            da.partial_cmp(&db).expect("finite values")
        })
        .unwrap_or(top);
    Ok(best)
}

/// `min_{j ∈ s} φ(p − j)`.
pub fn distance_to_set<S: Scalar>(n: &NormSpec, p: Point, s: &LatticeSet) -> Result<S> {
    let mut best: Option<S> = None;
    for j in s.iter() {
        let d: S = n.value(p - j)?;
        if best.as_ref().is_none_or(|b| d < *b) {
            best = Some(d);
        }
    }
    best.ok_or(Error::EmptySet)
}

/// All `j ∈ s` within `tol` of the distance from `p` to `s`.
pub fn projection<S: Scalar>(n: &NormSpec, p: Point, s: &LatticeSet, tol: &S) -> Result<LatticeSet> {
    let d: S = distance_to_set(n, p, s)?;
    let mut out = Vec::new();
    for j in s.iter() {
        let v: S = n.value(p - j)?;
        if v.le_tol(&d, tol) {
            out.push(j);
        }
    }
    Ok(out.into_iter().collect())
}

/// Offsets of the box `[−r, r]²` sorted by norm, for ring searches.
#[derive(Clone, Debug)]
pub struct OffsetTable<S> {
    entries: Vec<(Point, S)>,
    /// Every offset with `φ(v) ≤ certified` is in the table.
    certified: f64,
}

impl<S: Scalar> OffsetTable<S> {
    pub fn new(n: &NormSpec, r: i64) -> Result<Self> {
        let mut entries = Vec::with_capacity(((2 * r + 1) * (2 * r + 1)) as usize);
        for i1 in -r..=r {
            for i2 in -r..=r {
                let p = Point::new(i1, i2);
                entries.push((p, n.value::<S>(p)?));
            }
        }
        entries.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite values").then(a.0.cmp(&b.0)));
        // φ(v) ≥ c‖v‖∞, so φ(v) < c(r+1) forces v into the box
        let certified = n.kind.linf_lower_bound() * (r as f64 + 1.0) * (1.0 - 1e-9);
        Ok(OffsetTable { entries, certified })
    }

    /// Smallest `φ(v)` with `pred(p + v)`, if certified by the table.
    pub fn nearest(&self, p: Point, pred: impl Fn(Point) -> bool) -> Option<S> {
        for (v, d) in &self.entries {
            if d.to_f64() > self.certified {
                return None;
            }
            if pred(p + *v) {
                return Some(d.clone());
            }
        }
        None
    }
}

/// Distances to a fixed finite set and to its complement.
#[derive(Clone, Debug)]
pub struct DistanceOracle<'a, S> {
    norm: &'a NormSpec,
    set: &'a LatticeSet,
    table: OffsetTable<S>,
}

impl<'a, S: Scalar> DistanceOracle<'a, S> {
    /// `reach` is the ℓ∞ radius covered by the precomputed ring table.
    pub fn new(norm: &'a NormSpec, set: &'a LatticeSet, reach: i64) -> Result<Self> {
        let (lo, hi) = set.bbox().ok_or(Error::EmptyPrevious)?;
        let extent = (hi.i1 - lo.i1).max(hi.i2 - lo.i2) / 2 + 2;
        let table = OffsetTable::new(norm, reach.max(extent).max(2))?;
        Ok(DistanceOracle { norm, set, table })
    }

    pub fn set(&self) -> &LatticeSet {
        self.set
    }

    /// Distance from `p` to the set.
    pub fn to_set(&self, p: Point) -> Result<S> {
        if let Some(d) = self.table.nearest(p, |q| self.set.contains(q)) {
            return Ok(d);
        }
        distance_to_set(self.norm, p, self.set)
    }

    /// Distance from `p` to the complement of the set.
    pub fn to_complement(&self, p: Point) -> Result<S> {
        if let Some(d) = self.table.nearest(p, |q| !self.set.contains(q)) {
            return Ok(d);
        }
        // complements of finite sets are reached within the bounding box plus one
        let (lo, hi) = self.set.bbox().ok_or(Error::EmptyPrevious)?;
        let mut r = (hi.i1 - lo.i1).max(hi.i2 - lo.i2) + 2;
        loop {
            let t = OffsetTable::<S>::new(self.norm, r)?;
            if let Some(d) = t.nearest(p, |q| !self.set.contains(q)) {
                return Ok(d);
            }
            r *= 2;
        }
    }

    /// `d(i)` of the dissipation: distance to the set for outside points and
    /// to the complement for inside points.
    pub fn cell_distance(&self, p: Point) -> Result<S> {
        if self.set.contains(p) {
            self.to_complement(p)
        } else {
            self.to_set(p)
        }
    }
}
