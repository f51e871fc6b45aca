//! Front end for `crystal-core`: JSON reports, CSV traces, SVG frames and a
//! verification sweep, behind the `crystal` binary.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 singular alpha, 3 solver
//! error, 64 bad usage.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod render;
pub mod verify;

use std::str::FromStr;

use anyhow::Result;
use crystal_core::Engine;
use serde_json::Value;

use args::{Cli, Command};
use config::{parse_norm, resolve_tol, Alpha, RunConfig};
use error::CliError;

pub use error::exit_code;

/// Runs one command and returns the JSON document to print. Verification
/// failures come back as the report plus an error.
pub fn run(cli: &Cli) -> (Option<Value>, Result<()>) {
    match dispatch(cli) {
        Ok((v, failure)) => (Some(v), failure.map_or(Ok(()), |e| Err(e.into()))),
        Err(e) => (None, Err(e)),
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, Option<CliError>)> {
    let tol = resolve_tol(cli.tol)?;
    match &cli.command {
        Command::Nucleus(t) => {
            let n = parse_norm(&t.norm)?;
            let alpha = Alpha::parse(&n, &t.alpha)?;
            Ok((commands::cmd_nucleus(&n, &alpha, tol)?, None))
        }
        Command::Evolve(a) => {
            let norm = parse_norm(&a.target.norm)?;
            let alpha = Alpha::parse(&norm, &a.target.alpha)?;
            let cfg = RunConfig {
                norm,
                alpha,
                steps: a.steps,
                engine: Engine::from_str(&a.engine).map_err(|e| CliError::Usage(e.to_string()))?,
                constrained: !a.unconstrained,
                out_dir: a.out_dir.clone(),
                tol,
                render: a.render,
                seed: 0,
            };
            Ok((commands::cmd_evolve(&cfg)?, None))
        }
        Command::Verify(a) => {
            let cases = match &a.norm {
                Some(s) => {
                    let n = parse_norm(s)?;
                    let alpha = Alpha::parse(&n, a.alpha.as_deref().unwrap_or(DEFAULT_VERIFY_ALPHA))?;
                    vec![verify::Case { norm: n, alpha }]
                }
                None => default_cases(a.alpha.as_deref())?,
            };
            let suite = verify::Suite { cases, seed: a.seed, samples: a.samples, tol, fault: a.inject_fault };
            let report = verify::run(&suite);
            let failed = report.failed();
            let failure = (failed > 0).then_some(CliError::VerifyFailed { failed, total: report.checks.len() });
            Ok((report.json, failure))
        }
        Command::Limit(a) => {
            let n = parse_norm(&a.norm)?;
            let alpha = a.alpha.as_deref().map(|s| Alpha::parse(&n, s)).transpose()?;
            Ok((commands::cmd_limit(&n, alpha.as_ref(), tol, a.t, a.regime, a.samples)?, None))
        }
        Command::Singular(a) => {
            let n = parse_norm(&a.norm)?;
            let alpha_min = Alpha::parse(&n, &a.alpha_min)?;
            Ok((commands::cmd_singular(&n, &alpha_min)?, None))
        }
    }
}

const DEFAULT_VERIFY_ALPHA: &str = "3";

/// ℓ∞, ℓ1 and ℓ2 at values with small first-step windows, off the singular set.
const DEFAULT_CASES: [(&str, &str); 3] = [("linf", "3"), ("l1", "19/10"), ("l2", "2.3")];

fn default_cases(alpha: Option<&str>) -> Result<Vec<verify::Case>> {
    DEFAULT_CASES
        .iter()
        .map(|(n, a)| {
            let norm = parse_norm(n)?;
            let alpha = Alpha::parse(&norm, alpha.unwrap_or(a))?;
            Ok(verify::Case { norm, alpha })
        })
        .collect()
}
