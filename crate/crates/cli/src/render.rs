use crystal_core::lattice::effective_boundary;
use crystal_core::{format_rational, Exact, LatticeSet, Parity, Point, Scalar};
use serde_json::Value;

/// Scalars that know how to appear in reports: rationals as `"p/q"`
/// strings, floats as JSON numbers.
pub trait Render: Scalar {
    fn json(&self) -> Value;
    fn text(&self) -> String;
    const KIND: &'static str;
}

impl Render for f64 {
    const KIND: &'static str = "f64";
    fn json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
    fn text(&self) -> String {
        format!("{self}")
    }
}

impl Render for Exact {
    const KIND: &'static str = "exact";
    fn json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn text(&self) -> String {
        format_rational(self)
    }
}

pub fn points_json(s: &LatticeSet) -> Value {
    Value::Array(s.iter().map(|p| serde_json::json!([p.i1, p.i2])).collect())
}

pub const EVEN_FILL: &str = "#2f6db5";
pub const ODD_FILL: &str = "#e08a2c";
pub const BOUNDARY_STROKE: &str = "#111111";

/// Cells missing a diagonal neighbor: the effective boundary for checkerboard
/// sets, and the same rule applied verbatim to mixed ones.
fn stroked_cells(s: &LatticeSet) -> LatticeSet {
    effective_boundary(s)
        .unwrap_or_else(|_| s.iter().filter(|p| p.diagonals().iter().any(|q| !s.contains(*q))).collect())
}

/// One SVG frame: a unit square per cell, y axis pointing up on screen.
pub fn svg_frame(s: &LatticeSet, k: usize) -> String {
    const PX: i64 = 16;
    let (lo, hi) = s.bbox().unwrap_or((Point::new(0, 0), Point::new(0, 0)));
    // lattice (i1, i2) covers [i1 − ½, i1 + ½] × [i2 − ½, i2 + ½]; screen y = −y
    let (x0, y0) = (lo.i1 as f64 - 1.5, -(hi.i2 as f64) - 1.5);
    let (w, h) = ((hi.i1 - lo.i1 + 3) as f64, (hi.i2 - lo.i2 + 3) as f64);
    let stroked = stroked_cells(s);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\" width=\"{}\" height=\"{}\">\n",
        w as i64 * PX,
        h as i64 * PX
    ));
    out.push_str(&format!("<title>step {k}: {} cells</title>\n", s.len()));
    for p in s.iter() {
        let (class, fill) = match p.parity() {
            Parity::Even => ("even", EVEN_FILL),
            Parity::Odd => ("odd", ODD_FILL),
        };
        let stroke = if stroked.contains(p) {
            format!(" class=\"cell {class} boundary\" stroke=\"{BOUNDARY_STROKE}\" stroke-width=\"0.08\"")
        } else {
            format!(" class=\"cell {class}\" stroke=\"none\"")
        };
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{fill}\"{stroke}/>\n",
            p.i1 as f64 - 0.5,
            -(p.i2 as f64) - 0.5
        ));
    }
    out.push_str("</svg>\n");
    out
}
