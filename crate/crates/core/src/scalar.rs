//! Scalar abstraction shared by norms, energies and solvers.
//!
//! Exact norms (ℓ1, ℓ∞, weighted ℓ1, rect-max) produce rational values on
//! integer inputs and run end-to-end in [`Rational64`]. Real norms (ℓp,
//! elliptic) run in `f64` (or `f32`) with a tolerance.

use std::fmt;

use num_rational::Rational64;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Numeric type the energy machinery is generic over.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_rational(r: Rational64) -> Self;

    /// Converts a real value; exact types refuse (irrational input cannot be
    /// represented faithfully).
    fn from_real(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Default comparison tolerance (zero for exact types).
    fn default_tol() -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational64::from_integer(v))
    }

    /// `self ≤ other + tol`
    fn le_tol(&self, other: &Self, tol: &Self) -> bool {
        *self <= other.clone() + tol.clone()
    }

    /// `|self − other| ≤ tol`
    fn near(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: Rational64) -> Self {
        *r.numer() as f64 / *r.denom() as f64
    }

    fn from_real(x: f64) -> Option<Self> {
        Some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn default_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: Rational64) -> Self {
        (*r.numer() as f64 / *r.denom() as f64) as f32
    }

    fn from_real(x: f64) -> Option<Self> {
        Some(x as f32)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn default_tol() -> Self {
        1e-4
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_rational(r: Rational64) -> Self {
        r
    }

    fn from_real(_x: f64) -> Option<Self> {
        None
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn default_tol() -> Self {
        Rational64::zero()
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"1.7"` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational64::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 15 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i64.checked_pow(frac_part.len() as u32)?;
    let r = Rational64::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational64) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
