//! Scaled step energy `F = −Per(E) + α·D(E, E')`.
//!
//! `D` sums, over the symmetric difference of `E` and the previous set `E'`,
//! the distance of each added cell to `E'` and of each removed cell to the
//! complement of `E'`. Only finite previous sets are supported.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{lattice_perimeter, LatticeSet, Point};
use crate::norms::{DistanceOracle, NormSpec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyBreakdown<S> {
    pub perimeter: u64,
    pub dissipation: S,
    pub total: S,
    pub alpha: S,
}

impl<S: Scalar> EnergyBreakdown<S> {
    pub fn new(perimeter: u64, dissipation: S, alpha: S) -> Self {
        let total = alpha.clone() * dissipation.clone() - S::from_i64(perimeter as i64);
        EnergyBreakdown { perimeter, dissipation, total, alpha }
    }
}

impl<S: Scalar> fmt::Display for EnergyBreakdown<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "−{} + {}·{} = {}", self.perimeter, self.alpha, self.dissipation, self.total)
    }
}

fn oracle_reach(e: &LatticeSet, eprev: &LatticeSet) -> i64 {
    match (e.bbox(), eprev.bbox()) {
        (Some((a, b)), Some((c, d))) => {
            let lo = Point::new(a.i1.min(c.i1), a.i2.min(c.i2));
            let hi = Point::new(b.i1.max(d.i1), b.i2.max(d.i2));
            (hi.i1 - lo.i1).max(hi.i2 - lo.i2) + 1
        }
        _ => 2,
    }
}

/// Dissipation of `e` relative to `eprev`.
pub fn dissipation<S: Scalar>(n: &NormSpec, e: &LatticeSet, eprev: &LatticeSet) -> Result<S> {
    if eprev.is_empty() {
        return Err(Error::EmptyPrevious);
    }
    let oracle = DistanceOracle::<S>::new(n, eprev, oracle_reach(e, eprev))?;
    dissipation_with(&oracle, e)
}

pub(crate) fn dissipation_with<S: Scalar>(oracle: &DistanceOracle<'_, S>, e: &LatticeSet) -> Result<S> {
    let eprev = oracle.set();
    let mut total = S::zero();
    for p in e.iter().filter(|p| !eprev.contains(*p)) {
        total = total + oracle.to_set(p)?;
    }
    for p in eprev.iter().filter(|p| !e.contains(*p)) {
        total = total + oracle.to_complement(p)?;
    }
    Ok(total)
}

pub fn scaled_energy<S: Scalar>(
    n: &NormSpec,
    alpha: &S,
    e: &LatticeSet,
    eprev: &LatticeSet,
) -> Result<EnergyBreakdown<S>> {
    let d = dissipation(n, e, eprev)?;
    Ok(EnergyBreakdown::new(lattice_perimeter(e), d, alpha.clone()))
}

/// Energy change from toggling the membership of `i` in `e`.
pub fn toggle_delta<S: Scalar>(
    oracle: &DistanceOracle<'_, S>,
    alpha: &S,
    e: &LatticeSet,
    i: Point,
) -> Result<S> {
    let nb = S::from_i64(e.neighbor_count(i) as i64);
    let dist = if oracle.set().contains(i) {
        -oracle.to_complement(i)?
    } else {
        oracle.to_set(i)?
    };
    // adding i: −(4 − 2·nb) to the perimeter term, ±α·d to the dissipation
    let add = nb * S::from_i64(2) - S::from_i64(4) + alpha.clone() * dist;
    Ok(if e.contains(i) { -add } else { add })
}
