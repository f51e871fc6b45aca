//! Planar norms, their structural hypotheses, lattice distances and balls,
//! and the singular set of the step energy.

mod distance;

use std::fmt;

use num_rational::Rational64;
use num_traits::Signed;

use crate::error::{Error, Hypothesis, Result};
use crate::lattice::Point;
use crate::scalar::{format_rational, parse_rational, Scalar};

pub use distance::{
    ball_points, distance_to_set, is_singular, nearest_singular, projection, singular_set,
    BallLattice, DistanceOracle, OffsetTable, SingularSet,
};

/// Default range for the H3 check.
pub const DEFAULT_H_MAX: u32 = 64;
/// Default half-width of the integer window for sampled checks.
pub const DEFAULT_WINDOW: i64 = 20;

#[derive(Clone, Debug, PartialEq)]
pub enum NormKind {
    /// ℓp with 1 < p < ∞
    Lp(f64),
    L1,
    Linf,
    /// `sqrt(a11 (x1² + x2²) + 2 a12 x1 x2)`
    Elliptic { a11: Rational64, a12: Rational64 },
    /// `w1 |x1| + w2 |x2|`
    WeightedL1 { w1: Rational64, w2: Rational64 },
    /// `max{|3x1 + 2x2| / 10, |3x2 − 2x1|}`
    RectMax,
}

impl NormKind {
    /// Rational on integer inputs.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            NormKind::L1 | NormKind::Linf | NormKind::WeightedL1 { .. } | NormKind::RectMax
        )
    }

    fn exact(&self, p: Point) -> Option<Rational64> {
        let (x, y) = (p.i1, p.i2);
        match self {
            NormKind::L1 => Some(Rational64::from_integer(x.abs() + y.abs())),
            NormKind::Linf => Some(Rational64::from_integer(x.abs().max(y.abs()))),
            NormKind::WeightedL1 { w1, w2 } => {
                Some(*w1 * Rational64::from_integer(x.abs()) + *w2 * Rational64::from_integer(y.abs()))
            }
            NormKind::RectMax => {
                let a = Rational64::new((3 * x + 2 * y).abs(), 10);
                let b = Rational64::from_integer((3 * y - 2 * x).abs());
                Some(if a > b { a } else { b })
            }
            NormKind::Lp(_) | NormKind::Elliptic { .. } => None,
        }
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            NormKind::Lp(p) => {
                if *p == 2.0 {
                    x.hypot(y)
                } else {
                    (x.abs().powf(*p) + y.abs().powf(*p)).powf(1.0 / p)
                }
            }
            NormKind::L1 => x.abs() + y.abs(),
            NormKind::Linf => x.abs().max(y.abs()),
            NormKind::Elliptic { a11, a12 } => {
                let a11 = f64::from_rational(*a11);
                let a12 = f64::from_rational(*a12);
                (a11 * (x * x + y * y) + 2.0 * a12 * x * y).max(0.0).sqrt()
            }
            NormKind::WeightedL1 { w1, w2 } => {
                f64::from_rational(*w1) * x.abs() + f64::from_rational(*w2) * y.abs()
            }
            NormKind::RectMax => ((3.0 * x + 2.0 * y).abs() / 10.0).max((3.0 * y - 2.0 * x).abs()),
        }
    }

    /// A constant `c > 0` with `φ(x) ≥ c·‖x‖∞` for every `x`.
    fn linf_lower_bound(&self) -> f64 {
        match self {
            NormKind::Lp(_) | NormKind::L1 | NormKind::Linf => 1.0,
            NormKind::WeightedL1 { w1, w2 } => f64::from_rational(*w1.min(w2)),
            // smallest eigenvalue of the quadratic form bounds φ² from below
            NormKind::Elliptic { a11, a12 } => f64::from_rational(*a11 - a12.abs()).sqrt(),
            // the unit ball is the parallelogram with vertices ±(28,23)/13, ±(32,17)/13
            NormKind::RectMax => 13.0 / 32.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            NormKind::Lp(p) if !(p.is_finite() && *p > 1.0) => {
                Err(Error::InvalidNorm(format!("lp exponent {p} must be finite and > 1 here")))
            }
            NormKind::Elliptic { a11, a12 } if *a11 <= a12.abs() => {
                Err(Error::InvalidNorm("elliptic form must satisfy a11 > |a12|".into()))
            }
            NormKind::WeightedL1 { w1, w2 } if !w1.is_positive() || !w2.is_positive() => {
                Err(Error::InvalidNorm("weights must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Result of the hypothesis checks; flags are only ever set by verification.
#[derive(Clone, Debug, PartialEq)]
pub struct NormFlags {
    pub absolute: bool,
    pub h1_symmetric: bool,
    pub h2_normalized: bool,
    pub h3: bool,
    pub h3_checked_up_to: u32,
    pub submodular: bool,
    pub counterexample: Option<(Hypothesis, Point)>,
    /// For elliptic norms: whether the parameters lie in the example family
    /// (`a11 > 1`, `a12 < 0`, `1/8 < a11 + a12 < 1/2`, `a11 − a12 > 2`).
    pub elliptic_family: Option<bool>,
}

impl NormFlags {
    /// First failing hypothesis among absoluteness, H2, H1, H3 (in that
    /// order; normalization is reported before symmetry).
    pub fn first_failure(&self) -> Option<Hypothesis> {
        if !self.absolute {
            Some(Hypothesis::Absolute)
        } else if !self.h2_normalized {
            Some(Hypothesis::H2Normalized)
        } else if !self.h1_symmetric {
            Some(Hypothesis::H1Symmetric)
        } else if !self.h3 {
            Some(Hypothesis::H3Derivative)
        } else {
            None
        }
    }
}

/// A verified norm.
#[derive(Clone, Debug, PartialEq)]
pub struct NormSpec {
    pub kind: NormKind,
    pub flags: NormFlags,
}

impl NormSpec {
    pub fn new(kind: NormKind) -> Result<Self> {
        kind.validate()?;
        let flags = verify_hypotheses(&kind, DEFAULT_H_MAX, DEFAULT_WINDOW);
        Ok(NormSpec { kind, flags })
    }

    pub fn linf() -> Self {
        Self::new(NormKind::Linf).expect("valid norm")
    }

    pub fn l1() -> Self {
        Self::new(NormKind::L1).expect("valid norm")
    }

    pub fn lp(p: f64) -> Result<Self> {
        if p == 1.0 {
            Ok(Self::l1())
        } else if p.is_infinite() {
            Ok(Self::linf())
        } else {
            Self::new(NormKind::Lp(p))
        }
    }

    pub fn l2() -> Self {
        Self::lp(2.0).expect("valid norm")
    }

    pub fn elliptic(a11: Rational64, a12: Rational64) -> Result<Self> {
        Self::new(NormKind::Elliptic { a11, a12 })
    }

    pub fn weighted_l1(w1: Rational64, w2: Rational64) -> Result<Self> {
        Self::new(NormKind::WeightedL1 { w1, w2 })
    }

    pub fn rect_max() -> Self {
        Self::new(NormKind::RectMax).expect("valid norm")
    }

    /// Parses `linf | l1 | l2 | lp:<p> | elliptic:<a11>,<a12> | wl1:<w1>,<w2> | rectmax`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidNorm(format!("cannot parse norm '{s}'"));
        let pair = |body: &str| -> Result<(Rational64, Rational64)> {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            Ok((parse_rational(a).ok_or_else(bad)?, parse_rational(b).ok_or_else(bad)?))
        };
        match s {
            "linf" => return Ok(Self::linf()),
            "l1" => return Ok(Self::l1()),
            "l2" => return Ok(Self::l2()),
            "rectmax" => return Ok(Self::rect_max()),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("lp:") {
            let p: f64 = match p.trim() {
                "inf" | "infinity" => f64::INFINITY,
                other => other.parse().map_err(|_| bad())?,
            };
            if p < 1.0 || p.is_nan() {
                return Err(bad());
            }
            return Self::lp(p);
        }
        if let Some(body) = s.strip_prefix("elliptic:") {
            let (a11, a12) = pair(body)?;
            return Self::elliptic(a11, a12);
        }
        if let Some(body) = s.strip_prefix("wl1:") {
            let (w1, w2) = pair(body)?;
            return Self::weighted_l1(w1, w2);
        }
        Err(bad())
    }

    pub fn is_exact(&self) -> bool {
        self.kind.is_exact()
    }

    /// Exact value on an integer point, when the norm is rational there.
    pub fn exact(&self, p: Point) -> Option<Rational64> {
        self.kind.exact(p)
    }

    /// Real value at a real vector.
    pub fn evaluate(&self, x: [f64; 2]) -> f64 {
        self.kind.eval(x[0], x[1])
    }

    /// Value at a lattice point in the scalar type `S`.
    pub fn value<S: Scalar>(&self, p: Point) -> Result<S> {
        value_of(&self.kind, p)
    }

    /// Bounding half-width for lattice points with `φ ≤ r`.
    pub fn box_radius(&self, r: f64) -> i64 {
        (r / self.kind.linf_lower_bound() * (1.0 + 1e-9)).ceil() as i64 + 1
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NormKind::Lp(p) if *p == 2.0 => write!(f, "l2"),
            NormKind::Lp(p) => write!(f, "lp:{p}"),
            NormKind::L1 => write!(f, "l1"),
            NormKind::Linf => write!(f, "linf"),
            NormKind::Elliptic { a11, a12 } => {
                write!(f, "elliptic:{},{}", format_rational(a11), format_rational(a12))
            }
            NormKind::WeightedL1 { w1, w2 } => {
                write!(f, "wl1:{},{}", format_rational(w1), format_rational(w2))
            }
            NormKind::RectMax => write!(f, "rectmax"),
        }
    }
}

fn value_of<S: Scalar>(kind: &NormKind, p: Point) -> Result<S> {
    if let Some(r) = kind.exact(p) {
        return Ok(S::from_rational(r));
    }
    S::from_real(kind.eval(p.i1 as f64, p.i2 as f64)).ok_or(Error::InexactNorm)
}

/// Checks absoluteness, H1, H2, H3 (for `h ≤ h_max`) and the 2×2
/// submodularity inequality on `[−window, window]²`.
pub fn verify_hypotheses(kind: &NormKind, h_max: u32, window: i64) -> NormFlags {
    if kind.is_exact() {
        verify_with::<Rational64>(kind, h_max, window)
    } else {
        verify_with::<f64>(kind, h_max, window)
    }
}

fn verify_with<S: Scalar>(kind: &NormKind, h_max: u32, window: i64) -> NormFlags {
    let tol = S::default_tol();
    let phi = |x: i64, y: i64| -> S { value_of(kind, Point::new(x, y)).expect("scalar matches norm") };
    let mut counterexample = None;
    let note = |h: Hypothesis, p: Point, ce: &mut Option<(Hypothesis, Point)>| {
        if ce.is_none() {
            *ce = Some((h, p));
        }
    };

    let mut absolute = true;
    let mut h1 = true;
    for x in -window..=window {
        for y in -window..=window {
            let v = phi(x, y);
            if absolute && !v.near(&phi(x.abs(), y.abs()), &tol) {
                absolute = false;
                note(Hypothesis::Absolute, Point::new(x, y), &mut counterexample);
            }
            if h1 && !v.near(&phi(y, x), &tol) {
                h1 = false;
                note(Hypothesis::H1Symmetric, Point::new(x, y), &mut counterexample);
            }
        }
    }
    // keep the reported order stable: absoluteness first, then H1
    if !absolute {
        if let Some((Hypothesis::H1Symmetric, _)) = counterexample {
            counterexample = None;
            for x in -window..=window {
                for y in -window..=window {
                    if counterexample.is_none() && !phi(x, y).near(&phi(x.abs(), y.abs()), &tol) {
                        counterexample = Some((Hypothesis::Absolute, Point::new(x, y)));
                    }
                }
            }
        }
    }

    let one = S::one();
    let h2 = phi(1, 0).near(&one, &tol) && phi(0, 1).near(&one, &tol);
    if !h2 {
        let p = if phi(1, 0).near(&one, &tol) { Point::new(0, 1) } else { Point::new(1, 0) };
        note(Hypothesis::H2Normalized, p, &mut counterexample);
    }

    let half = S::from_rational(Rational64::new(1, 2));
    let mut h3 = true;
    for h in 0..=h_max as i64 {
        let diff = phi(h, h + 1) - phi(h, h);
        if !half.le_tol(&diff, &tol) {
            h3 = false;
            note(Hypothesis::H3Derivative, Point::new(h, h + 1), &mut counterexample);
            break;
        }
    }

    let sgn = |v: i64| if v < 0 { -1 } else { 1 };
    let mut submodular = true;
    'outer: for x in -window..=window {
        for y in -window..=window {
            let (e1, e2) = (sgn(x), sgn(y));
            let lhs = phi(x, y) + phi(x + e1, y + e2);
            let rhs = phi(x + e1, y) + phi(x, y + e2);
            if !lhs.le_tol(&rhs, &tol) {
                submodular = false;
                note(Hypothesis::Submodular, Point::new(x, y), &mut counterexample);
                break 'outer;
            }
        }
    }

    let elliptic_family = match kind {
        NormKind::Elliptic { a11, a12 } => {
            let s = *a11 + *a12;
            let d = *a11 - *a12;
            Some(
                *a11 > Rational64::from_integer(1)
                    && a12.is_negative()
                    && s > Rational64::new(1, 8)
                    && s < Rational64::new(1, 2)
                    && d > Rational64::from_integer(2),
            )
        }
        _ => None,
    };

    NormFlags {
        absolute,
        h1_symmetric: h1,
        h2_normalized: h2,
        h3,
        h3_checked_up_to: h_max,
        submodular,
        counterexample,
        elliptic_family,
    }
}

/// `4/φ(1,1)`: above this value the evolution never leaves the initial cell.
pub fn pinning_threshold<S: Scalar>(n: &NormSpec) -> Result<S> {
    Ok(S::from_i64(4) / n.value::<S>(Point::new(1, 1))?)
}
