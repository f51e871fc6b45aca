use std::path::PathBuf;

use crystal_core::{parse_rational, Engine, Exact, NormSpec};
use num_traits::Zero;

use crate::error::CliError;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const TOL_ENV: &str = "CRYSTAL_TOL";

/// Tolerance for floating-point runs: flag, then `CRYSTAL_TOL`, then the default.
pub fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{TOL_ENV}='{s}' is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !tol.is_finite() || tol < 0.0 {
        return Err(CliError::Usage(format!("tolerance must be finite and non-negative, got {tol}")));
    }
    Ok(tol)
}

/// The scalar a run uses. Exact norms run in rationals whenever alpha has a
/// finite rational spelling.
#[derive(Clone, Debug, PartialEq)]
pub enum Alpha {
    Exact(Exact),
    Real(f64),
}

impl Alpha {
    pub fn parse(norm: &NormSpec, s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("cannot parse alpha '{s}'"));
        let alpha = match (norm.is_exact(), parse_rational(s)) {
            (true, Some(r)) => Alpha::Exact(r),
            (false, Some(r)) => Alpha::Real(*r.numer() as f64 / *r.denom() as f64),
            (_, None) => Alpha::Real(s.trim().parse().map_err(|_| bad())?),
        };
        let positive = match &alpha {
            Alpha::Exact(r) => *r > Exact::zero(),
            Alpha::Real(x) => x.is_finite() && *x > 0.0,
        };
        if !positive {
            return Err(CliError::Usage(format!("alpha must be positive, got '{s}'")));
        }
        Ok(alpha)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Alpha::Exact(_))
    }
}

pub fn parse_norm(s: &str) -> Result<NormSpec, CliError> {
    NormSpec::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

/// Everything one evolution run depends on.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub norm: NormSpec,
    pub alpha: Alpha,
    pub steps: usize,
    pub engine: Engine,
    pub constrained: bool,
    pub out_dir: PathBuf,
    pub tol: f64,
    pub render: bool,
    pub seed: u64,
}
