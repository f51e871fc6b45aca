use crate::error::{Error, Result};
use crate::lattice::{LatticeSet, Point};
use crate::norms::{DistanceOracle, NormSpec};
use crate::scalar::Scalar;

/// Cells the step minimizer may toggle, and those it must keep.
///
/// Outside cells farther than `4/α` from the previous set can never pay for
/// themselves (adding one costs at least `α·d − 4 > 0` whatever its
/// neighbors), and inside cells deeper than `4/α` can never be removed by the
/// symmetric argument. The padding ring is only used for post-hoc audits.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub free: LatticeSet,
    pub fixed_in: LatticeSet,
    /// 8-neighbors of `free` outside it (cells of the previous set are left
    /// out in the constrained scheme, where they cannot be removed).
    pub padding: LatticeSet,
}

/// Builds the candidate window; `d ≤ 4/α + tol` selects free cells.
pub fn candidate_window<S: Scalar>(
    oracle: &DistanceOracle<'_, S>,
    n: &NormSpec,
    alpha: &S,
    constrained: bool,
    tol: &S,
) -> Result<Window> {
    let eprev = oracle.set();
    let (lo, hi) = eprev.bbox().ok_or(Error::EmptyPrevious)?;
    let reach = S::from_i64(4) / alpha.clone() + tol.clone();
    let b = n.box_radius(reach.to_f64());
    let mut free = Vec::new();
    for i1 in lo.i1 - b..=hi.i1 + b {
        for i2 in lo.i2 - b..=hi.i2 + b {
            let p = Point::new(i1, i2);
            if eprev.contains(p) {
                if !constrained && oracle.to_complement(p)? <= reach {
                    free.push(p);
                }
            } else if oracle.to_set(p)? <= reach {
                free.push(p);
            }
        }
    }
    let free: LatticeSet = free.into_iter().collect();
    let fixed_in = eprev.difference(&free);
    let padding: LatticeSet = free
        .iter()
        .flat_map(|p| p.neighbors8())
        .filter(|q| !free.contains(*q) && !(constrained && eprev.contains(*q)))
        .collect();
    Ok(Window { free, fixed_in, padding })
}
