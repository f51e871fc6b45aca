use num_integer::Integer;

use super::hull::ConvexLatticePolygon;
use super::set::{Parity, Point};
use crate::error::{Error, Result};

/// Lattices used for counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sublattice {
    /// ℤ², determinant 1
    Z2,
    /// even points, determinant 2
    Z2Even,
}

impl Sublattice {
    pub fn det(self) -> i64 {
        match self {
            Sublattice::Z2 => 1,
            Sublattice::Z2Even => 2,
        }
    }

    fn contains(self, p: Point) -> bool {
        match self {
            Sublattice::Z2 => true,
            Sublattice::Z2Even => p.parity() == Parity::Even,
        }
    }
}

/// Lattice points on the boundary of `q`.
pub fn boundary_count(q: &ConvexLatticePolygon, lattice: Sublattice) -> Result<i64> {
    for &v in &q.vertices {
        if !lattice.contains(v) {
            return Err(Error::VertexOffLattice(v));
        }
    }
    Ok(q.edge_vectors().iter().map(|&e| edge_count(e, lattice)).sum())
}

/// Lattice points on a half-open edge with the given vector.
fn edge_count(e: Point, lattice: Sublattice) -> i64 {
    let g = e.i1.abs().gcd(&e.i2.abs());
    match lattice {
        Sublattice::Z2 => g,
        Sublattice::Z2Even => {
            if g == 0 {
                0
            } else if (e.i1 / g + e.i2 / g).rem_euclid(2) == 0 {
                g
            } else {
                g / 2
            }
        }
    }
}

/// `#(mQ ∩ Λ) = |Q|·m²/det Λ + m·#(∂Q ∩ Λ)/2 + 1`, in exact integers.
pub fn pick_count(q: &ConvexLatticePolygon, lattice: Sublattice, m: u64) -> Result<u64> {
    if q.is_degenerate() {
        return Err(Error::DegeneratePolygon);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let b = boundary_count(q, lattice)? as i128;
    let m = m as i128;
    let a2 = q.area2 as i128;
    // |Q| m²/det + m B/2 = (a2 m² + det m B) / (2 det)
    let det = lattice.det() as i128;
    let numer = a2 * m * m + det * m * b;
    let denom = 2 * det;
    assert!(
        numer % denom == 0,
        "Pick numerator {numer} not divisible by {denom}: polygon area is incompatible with the lattice"
    );
    Ok((numer / denom + 1) as u64)
}
