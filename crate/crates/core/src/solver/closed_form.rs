use crate::error::{Error, Hypothesis, Result};
use crate::lattice::{
    check_monotone_edges, check_symmetry, clockwise_boundary, is_sublattice_convex, LatticeSet, Point, SetParity,
};
use crate::norms::{is_singular, NormSpec};
use crate::scalar::Scalar;

use super::oracle_for;

/// First hypothesis of the closed-form step that fails, if any.
///
/// A single-cell previous set only needs an absolute norm and a non-singular
/// α. Larger sets need H1 to H3, even parity, sublattice convexity,
/// non-degeneracy, monotone edges and the coordinate symmetries.
pub fn closed_form_precheck<S: Scalar>(n: &NormSpec, alpha: &S, eprev: &LatticeSet, tol: &S) -> Result<Option<Hypothesis>> {
    if eprev.is_empty() {
        return Err(Error::EmptyPrevious);
    }
    let singleton = eprev.len() == 1;
    if singleton {
        if !n.flags.absolute {
            return Ok(Some(Hypothesis::Absolute));
        }
    } else if let Some(h) = n.flags.first_failure() {
        return Ok(Some(h));
    }
    if is_singular(n, alpha, tol)? {
        return Ok(Some(Hypothesis::NonSingular));
    }
    if singleton {
        return Ok(None);
    }
    if eprev.parity() != SetParity::Even {
        return Ok(Some(Hypothesis::EvenParity));
    }
    if !is_sublattice_convex(eprev)? {
        return Ok(Some(Hypothesis::SublatticeConvex));
    }
    if clockwise_boundary(eprev).is_err() {
        return Ok(Some(Hypothesis::NonDegeneracy));
    }
    if !check_monotone_edges(eprev)?.is_ok() {
        return Ok(Some(Hypothesis::MonotoneEdges));
    }
    if !check_symmetry(eprev) {
        return Ok(Some(Hypothesis::Symmetry));
    }
    Ok(None)
}

/// `{i in the parity class of eprev : d(i, eprev) < 4/α} ∪ eprev`, returned
/// only when every hypothesis of the structure theorem is verified.
pub fn step_closed_form<S: Scalar>(n: &NormSpec, alpha: &S, eprev: &LatticeSet, tol: &S) -> Result<LatticeSet> {
    if *alpha <= S::zero() {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    if let Some(h) = closed_form_precheck(n, alpha, eprev, tol)? {
        return Err(Error::HypothesisViolated(h));
    }
    let oracle = oracle_for(n, alpha, eprev)?;
    let parity = eprev.iter().next().expect("non-empty").parity();
    let reach = S::from_i64(4) / alpha.clone();
    let b = n.box_radius(reach.to_f64());
    let (lo, hi) = eprev.bbox().expect("non-empty");
    let mut out: Vec<Point> = eprev.iter().collect();
    for i1 in lo.i1 - b..=hi.i1 + b {
        for i2 in lo.i2 - b..=hi.i2 + b {
            let p = Point::new(i1, i2);
            if p.parity() == parity && !eprev.contains(p) && oracle.to_set(p)? < reach {
                out.push(p);
            }
        }
    }
    Ok(out.into_iter().collect())
}
