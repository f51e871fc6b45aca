use num_rational::Rational64;

use crate::error::{Error, Hypothesis, Result};
use crate::lattice::{
    boundary_count, convex_hull, fast_scaled_hull_points, is_sublattice_convex, minkowski_power, LatticeSet, Sublattice,
};
use crate::scalar::Scalar;

/// The k-fold Minkowski sum of a nucleus.
///
/// Two-dimensional nuclei go through `(k·conv N) ∩ parity class`; segment
/// and point nuclei fall back to repeated sums.
pub fn fast_forward(nucleus: &LatticeSet, k: u32) -> Result<LatticeSet> {
    if nucleus.is_empty() {
        return Err(Error::EmptySet);
    }
    nucleus.parity().monochromatic().ok_or(Error::MixedParity)?;
    if k == 0 {
        return Ok(LatticeSet::origin());
    }
    let hull = convex_hull(nucleus)?;
    if hull.is_degenerate() {
        return Ok(minkowski_power(nucleus, k));
    }
    if !is_sublattice_convex(nucleus)? {
        return Err(Error::HypothesisViolated(Hypothesis::SublatticeConvex));
    }
    fast_scaled_hull_points(nucleus, k as i64)
}

/// Ingredients of the parity-flip lower bound `α·A·k² + C′·k + C″`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityFlipConstants<S> {
    /// `|conv N|`
    pub area: Rational64,
    /// lattice points on `∂ conv N`
    pub boundary: i64,
    /// even lattice points on `∂ conv N`
    pub boundary_even: i64,
    pub quadratic: S,
    pub linear: S,
    pub constant: S,
}

/// Assembles the constants from the Pick counts
/// `#(kQ ∩ ℤ²) = A k² + B k/2 + 1` and `#(kQ ∩ ℤ²ₑ) = A k²/2 + Bₑ k/2 + 1`,
/// bounding the energy change of an even-to-odd flip at step `k` by
/// `−4·#((k+1)Q ∩ ℤ²ₒ) + 4·#(kQ ∩ ℤ²ₑ) + α·#(kQ ∩ ℤ²)`.
pub fn parity_flip_constants<S: Scalar>(alpha: &S, nucleus: &LatticeSet) -> Result<ParityFlipConstants<S>> {
    let hull = convex_hull(nucleus)?;
    if hull.is_degenerate() {
        return Err(Error::DegeneratePolygon);
    }
    let area = Rational64::new(hull.area2, 2);
    let b1 = boundary_count(&hull, Sublattice::Z2)?;
    let be = boundary_count(&hull, Sublattice::Z2Even)?;
    let a = S::from_rational(area);
    let (b1s, bes) = (S::from_i64(b1), S::from_i64(be));
    let two = S::from_i64(2);
    let four = S::from_i64(4);
    let quadratic = alpha.clone() * a.clone();
    let linear = -(four.clone() * a.clone()) - two.clone() * b1s.clone() + four.clone() * bes.clone()
        + alpha.clone() * b1s.clone() / two.clone();
    let constant = four + alpha.clone() - two.clone() * a - two.clone() * b1s + two * bes;
    Ok(ParityFlipConstants { area, boundary: b1, boundary_even: be, quadratic, linear, constant })
}

pub fn parity_flip_bound<S: Scalar>(alpha: &S, nucleus: &LatticeSet, k: u64) -> Result<S> {
    let c = parity_flip_constants(alpha, nucleus)?;
    let k = S::from_i64(k as i64);
    Ok(c.quadratic * k.clone() * k.clone() + c.linear * k + c.constant)
}

/// Smallest `k₀ ≤ k_max` with a positive bound for every `k ≥ k₀`.
///
/// Positivity beyond `k_max` follows from the bound being an increasing
/// quadratic there, which is checked.
pub fn parity_flip_k0<S: Scalar>(alpha: &S, nucleus: &LatticeSet, k_max: u64) -> Result<Option<u64>> {
    let c = parity_flip_constants(alpha, nucleus)?;
    let value = |k: u64| {
        let k = S::from_i64(k as i64);
        c.quadratic.clone() * k.clone() * k.clone() + c.linear.clone() * k + c.constant.clone()
    };
    let increasing = value(k_max + 1) > value(k_max) && c.quadratic > S::zero();
    if !increasing || value(k_max) <= S::zero() {
        return Ok(None);
    }
    let mut k0 = k_max;
    while k0 > 0 && value(k0 - 1) > S::zero() {
        k0 -= 1;
    }
    Ok(Some(k0))
}
