use std::fs;
use std::path::Path;

use anyhow::Context;
use crystal_core::limit::{fast_regime_limit, limit_set};
use crystal_core::norms::{nearest_singular, singular_set};
use crystal_core::{evolve, format_rational, nucleus, Error, Exact, LatticeSet, NormSpec, NucleusReport, SolverOptions};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::args::Regime;
use crate::config::{Alpha, RunConfig};
use crate::error::CliError;
use crate::render::{points_json, svg_frame, Render};

fn opt_bool(b: Option<bool>) -> Value {
    b.map(Value::Bool).unwrap_or(Value::Null)
}

/// Turns a core `SingularAlpha` into the CLI report with the exact nearest value.
fn singular_error<S: Render>(n: &NormSpec, alpha: &S) -> anyhow::Error {
    match nearest_singular(n, alpha) {
        Ok(v) => CliError::Singular {
            alpha: alpha.text(),
            nearest: v.text(),
            distance: (v.clone() - alpha.clone()).abs().text(),
        }
        .into(),
        Err(e) => e.into(),
    }
}

fn nucleus_or_singular<S: Render>(n: &NormSpec, alpha: &S, tol: &S) -> anyhow::Result<NucleusReport<S>> {
    match nucleus(n, alpha, tol) {
        Ok(r) => Ok(r),
        Err(Error::SingularAlpha { .. }) => Err(singular_error(n, alpha)),
        Err(e) => Err(e.into()),
    }
}

pub fn nucleus_json<S: Render>(n: &NormSpec, alpha: &S, tol: &S) -> anyhow::Result<Value> {
    let r = nucleus_or_singular(n, alpha, tol)?;
    let h = &r.hypotheses;
    let polygon: Vec<Value> = r.polygon.iter().map(|v| json!([format_rational(&v[0]), format_rational(&v[1])])).collect();
    let distance = (r.nearest_singular.clone() - alpha.clone()).abs();
    Ok(json!({
        "norm": n.to_string(),
        "alpha": alpha.json(),
        "scalar": S::KIND,
        "nucleus": points_json(&r.nucleus),
        "cells": r.nucleus.len(),
        "pinned": r.pinned,
        "kind": r.kind.to_string(),
        "max_i1": r.max_i1,
        "max_i1_candidates": r.max_i1_candidates(),
        "velocity": r.velocity.json(),
        "polygon": polygon,
        "hypotheses": {
            "absolute": h.absolute,
            "h1": h.h1,
            "h2": h.h2,
            "h3": h.h3,
            "submodular": h.submodular,
            "sublattice_convex": h.sublattice_convex,
            "nondegenerate": opt_bool(h.nondegenerate),
            "monotone_edges": opt_bool(h.monotone_edges),
            "symmetric": h.symmetric,
        },
        "nearest_singular": { "value": r.nearest_singular.json(), "distance": distance.json() },
    }))
}

pub fn cmd_nucleus(n: &NormSpec, alpha: &Alpha, tol: f64) -> anyhow::Result<Value> {
    match alpha {
        Alpha::Exact(a) => nucleus_json(n, a, &Exact::zero()),
        Alpha::Real(a) => nucleus_json(n, a, &tol),
    }
}

pub const TRACE_HEADER: [&str; 9] =
    ["k", "cells", "perimeter", "dissipation", "total", "parity", "checkerboard", "monotone_edges_ok", "unique"];

fn evolve_typed<S: Render>(cfg: &RunConfig, alpha: &S, tol: S) -> anyhow::Result<Value> {
    let opts = SolverOptions { tol, ..SolverOptions::default() };
    let trace = evolve(&cfg.norm, alpha, cfg.steps, cfg.engine, cfg.constrained, &LatticeSet::origin(), &opts)?;

    fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let trace_path = cfg.out_dir.join("trace.csv");
    let mut w = csv::Writer::from_path(&trace_path).with_context(|| format!("writing {}", trace_path.display()))?;
    w.write_record(TRACE_HEADER)?;
    for s in &trace.steps {
        w.write_record([
            s.k.to_string(),
            s.set.len().to_string(),
            s.energy.perimeter.to_string(),
            s.energy.dissipation.text(),
            s.energy.total.text(),
            s.parity.to_string(),
            s.checkerboard.to_string(),
            s.monotone_edges_ok.to_string(),
            s.unique.to_string(),
        ])?;
    }
    w.flush()?;

    let mut frames = Vec::new();
    if cfg.render {
        for s in &trace.steps {
            let path = cfg.out_dir.join(format!("frame_{:04}.svg", s.k));
            fs::write(&path, svg_frame(&s.set, s.k)).with_context(|| format!("writing {}", path.display()))?;
            frames.push(path_str(&path));
        }
    }

    let switches: Vec<Value> = trace
        .switches
        .iter()
        .map(|s| {
            json!({
                "k": s.k,
                "from": s.from.to_string(),
                "to": s.to.to_string(),
                "reason": s.reason.map(|h| h.to_string()),
            })
        })
        .collect();
    Ok(json!({
        "norm": cfg.norm.to_string(),
        "alpha": alpha.json(),
        "scalar": S::KIND,
        "steps": cfg.steps,
        "engine": cfg.engine.to_string(),
        "constrained": cfg.constrained,
        "trace": path_str(&trace_path),
        "frames": frames,
        "cells": trace.steps.iter().map(|s| s.set.len()).collect::<Vec<_>>(),
        "switches": switches,
        "non_unique_steps": trace.non_unique_steps,
    }))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn cmd_evolve(cfg: &RunConfig) -> anyhow::Result<Value> {
    match &cfg.alpha {
        Alpha::Exact(a) => evolve_typed(cfg, a, Exact::zero()),
        Alpha::Real(a) => evolve_typed(cfg, a, cfg.tol),
    }
}

fn limit_typed<S: Render>(n: &NormSpec, alpha: &S, tol: &S, t: f64) -> anyhow::Result<Value> {
    let r = nucleus_or_singular(n, alpha, tol)?;
    let motion = r.motion();
    let vertices = limit_set(&motion, t);
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in &vertices {
        for c in 0..2 {
            lo[c] = lo[c].min(v[c]);
            hi[c] = hi[c].max(v[c]);
        }
    }
    Ok(json!({
        "norm": n.to_string(),
        "regime": "nucleation",
        "alpha": alpha.json(),
        "t": t,
        "kind": motion.kind.to_string(),
        "velocity": r.velocity.json(),
        "polygon": r.polygon.iter().map(|v| json!([format_rational(&v[0]), format_rational(&v[1])])).collect::<Vec<_>>(),
        "vertices": vertices,
        "width": hi[0] - lo[0],
        "height": hi[1] - lo[1],
    }))
}

pub fn cmd_limit(n: &NormSpec, alpha: Option<&Alpha>, tol: f64, t: f64, regime: Regime, samples: usize) -> anyhow::Result<Value> {
    if !t.is_finite() || t < 0.0 {
        return Err(CliError::Usage(format!("t must be finite and non-negative, got {t}")).into());
    }
    match regime {
        Regime::Fast => {
            let ball = fast_regime_limit(n, t);
            Ok(json!({
                "norm": n.to_string(),
                "regime": "fast",
                "t": t,
                "kind": ball.kind().to_string(),
                "radius": ball.radius,
                "boundary": ball.boundary(samples.max(3)),
            }))
        }
        Regime::Nucleation => match alpha {
            None => Err(CliError::Usage("--alpha is required for the nucleation regime".into()).into()),
            Some(Alpha::Exact(a)) => limit_typed(n, a, &Exact::zero(), t),
            Some(Alpha::Real(a)) => limit_typed(n, a, &tol, t),
        },
    }
}

fn singular_typed<S: Render>(n: &NormSpec, alpha_min: &S) -> anyhow::Result<Value> {
    let set = singular_set(n, alpha_min)?;
    Ok(json!({
        "norm": n.to_string(),
        "alpha_min": alpha_min.json(),
        "scalar": S::KIND,
        "values": set.values.iter().map(|v| v.json()).collect::<Vec<_>>(),
        "count": set.values.len(),
    }))
}

pub fn cmd_singular(n: &NormSpec, alpha_min: &Alpha) -> anyhow::Result<Value> {
    match alpha_min {
        Alpha::Exact(a) => singular_typed(n, a),
        Alpha::Real(a) => singular_typed(n, a),
    }
}
