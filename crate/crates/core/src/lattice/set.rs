use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A point of ℤ². Ordering is lexicographic in `(i1, i2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub i1: i64,
    pub i2: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { i1: 0, i2: 0 };

    pub const fn new(i1: i64, i2: i64) -> Self {
        Point { i1, i2 }
    }

    pub fn parity(self) -> Parity {
        if (self.i1 + self.i2).rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The four nearest neighbors (unit distance).
    pub fn neighbors4(self) -> [Point; 4] {
        [
            Point::new(self.i1 + 1, self.i2),
            Point::new(self.i1 - 1, self.i2),
            Point::new(self.i1, self.i2 + 1),
            Point::new(self.i1, self.i2 - 1),
        ]
    }

    /// The four diagonal neighbors (same parity, distance √2).
    pub fn diagonals(self) -> [Point; 4] {
        [
            Point::new(self.i1 + 1, self.i2 + 1),
            Point::new(self.i1 + 1, self.i2 - 1),
            Point::new(self.i1 - 1, self.i2 + 1),
            Point::new(self.i1 - 1, self.i2 - 1),
        ]
    }

    /// The eight cells of the surrounding 3×3 block.
    pub fn neighbors8(self) -> [Point; 8] {
        let [a, b, c, d] = self.neighbors4();
        let [e, f, g, h] = self.diagonals();
        [a, b, c, d, e, f, g, h]
    }

    pub fn l1(self) -> i64 {
        self.i1.abs() + self.i2.abs()
    }

    pub fn linf(self) -> i64 {
        self.i1.abs().max(self.i2.abs())
    }

    pub fn cross(self, other: Point) -> i64 {
        self.i1 * other.i2 - self.i2 * other.i1
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i1, self.i2)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.i1 + o.i1, self.i2 + o.i2)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.i1 - o.i1, self.i2 - o.i2)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.i1, -self.i2)
    }
}

impl Mul<i64> for Point {
    type Output = Point;
    fn mul(self, k: i64) -> Point {
        Point::new(self.i1 * k, self.i2 * k)
    }
}

impl From<(i64, i64)> for Point {
    fn from((i1, i2): (i64, i64)) -> Self {
        Point::new(i1, i2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parity classification of a whole set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetParity {
    Empty,
    Even,
    Odd,
    Mixed,
}

impl SetParity {
    pub fn monochromatic(self) -> Option<Parity> {
        match self {
            SetParity::Even => Some(Parity::Even),
            SetParity::Odd => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for SetParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetParity::Empty => "empty",
            SetParity::Even => "even",
            SetParity::Odd => "odd",
            SetParity::Mixed => "mixed",
        })
    }
}

/// Finite set of lattice points with hashed membership and a sorted view.
#[derive(Clone, Default)]
pub struct LatticeSet {
    sorted: Vec<Point>,
    members: HashSet<Point>,
    bbox: Option<(Point, Point)>,
}

impl LatticeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(p: Point) -> Self {
        std::iter::once(p).collect()
    }

    /// The unit cell at the origin.
    pub fn origin() -> Self {
        Self::singleton(Point::ORIGIN)
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        pairs.iter().map(|&p| Point::from(p)).collect()
    }

    fn from_sorted_unique(sorted: Vec<Point>) -> Self {
        let members = sorted.iter().copied().collect();
        let bbox = bbox_of(&sorted);
        LatticeSet { sorted, members, bbox }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.members.contains(&p)
    }

    /// Points in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.sorted.iter().copied()
    }

    pub fn as_slice(&self) -> &[Point] {
        &self.sorted
    }

    /// `(min corner, max corner)` of the bounding box.
    pub fn bbox(&self) -> Option<(Point, Point)> {
        self.bbox
    }

    pub fn insert(&mut self, p: Point) -> bool {
        if !self.members.insert(p) {
            return false;
        }
        let idx = self.sorted.binary_search(&p).unwrap_err();
        self.sorted.insert(idx, p);
        self.bbox = Some(match self.bbox {
            None => (p, p),
            Some((lo, hi)) => (
                Point::new(lo.i1.min(p.i1), lo.i2.min(p.i2)),
                Point::new(hi.i1.max(p.i1), hi.i2.max(p.i2)),
            ),
        });
        true
    }

    pub fn remove(&mut self, p: Point) -> bool {
        if !self.members.remove(&p) {
            return false;
        }
        let idx = self.sorted.binary_search(&p).expect("sorted view out of sync");
        self.sorted.remove(idx);
        self.bbox = bbox_of(&self.sorted);
        true
    }

    pub fn union(&self, other: &LatticeSet) -> LatticeSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &LatticeSet) -> LatticeSet {
        self.iter().filter(|p| !other.contains(*p)).collect()
    }

    pub fn intersection(&self, other: &LatticeSet) -> LatticeSet {
        self.iter().filter(|p| other.contains(*p)).collect()
    }

    pub fn symmetric_difference(&self, other: &LatticeSet) -> LatticeSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &LatticeSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn translate(&self, v: Point) -> LatticeSet {
        self.iter().map(|p| p + v).collect()
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> LatticeSet {
        self.iter().map(f).collect()
    }

    pub fn parity(&self) -> SetParity {
        let mut even = false;
        let mut odd = false;
        for p in self.iter() {
            match p.parity() {
                Parity::Even => even = true,
                Parity::Odd => odd = true,
            }
        }
        match (even, odd) {
            (false, false) => SetParity::Empty,
            (true, false) => SetParity::Even,
            (false, true) => SetParity::Odd,
            (true, true) => SetParity::Mixed,
        }
    }

    /// Non-empty and contained in a single parity class.
    pub fn is_checkerboard(&self) -> bool {
        self.parity().monochromatic().is_some()
    }

    /// Number of nearest neighbors of `p` inside the set (`p` itself excluded).
    pub fn neighbor_count(&self, p: Point) -> usize {
        p.neighbors4().iter().filter(|q| self.contains(**q)).count()
    }

    pub fn max_i1(&self) -> Option<i64> {
        self.bbox.map(|(_, hi)| hi.i1)
    }

    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.iter().map(|p| (p.i1, p.i2)).collect()
    }
}

fn bbox_of(points: &[Point]) -> Option<(Point, Point)> {
    let first = *points.first()?;
    let mut lo = first;
    let mut hi = first;
    for p in points {
        lo.i1 = lo.i1.min(p.i1);
        lo.i2 = lo.i2.min(p.i2);
        hi.i1 = hi.i1.max(p.i1);
        hi.i2 = hi.i2.max(p.i2);
    }
    Some((lo, hi))
}

impl FromIterator<Point> for LatticeSet {
    fn from_iter<T: IntoIterator<Item = Point>>(iter: T) -> Self {
        let mut v: Vec<Point> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LatticeSet::from_sorted_unique(v)
    }
}

impl Extend<Point> for LatticeSet {
    fn extend<T: IntoIterator<Item = Point>>(&mut self, iter: T) {
        let mut v = std::mem::take(&mut self.sorted);
        v.extend(iter);
        v.sort_unstable();
        v.dedup();
        *self = LatticeSet::from_sorted_unique(v);
    }
}

impl PartialEq for LatticeSet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted == other.sorted
    }
}

impl Eq for LatticeSet {}

impl fmt::Debug for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted.iter().map(|p| (p.i1, p.i2))).finish()
    }
}

/// Length of the boundary of the union of unit cells: Σ (4 − #nearest neighbors).
pub fn lattice_perimeter(s: &LatticeSet) -> u64 {
    s.iter().map(|p| 4 - s.neighbor_count(p) as u64).sum()
}
