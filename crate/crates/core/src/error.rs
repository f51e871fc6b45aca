use std::fmt;

use crate::lattice::Point;

/// Hypotheses that the closed-form step (and the nucleation theorem) rely on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    Absolute,
    H1Symmetric,
    H2Normalized,
    H3Derivative,
    Submodular,
    NonSingular,
    EvenParity,
    SublatticeConvex,
    NonDegeneracy,
    MonotoneEdges,
    Symmetry,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::Absolute => "absolute",
            Hypothesis::H1Symmetric => "H1",
            Hypothesis::H2Normalized => "H2",
            Hypothesis::H3Derivative => "H3",
            Hypothesis::Submodular => "submodularity",
            Hypothesis::NonSingular => "non-singular alpha",
            Hypothesis::EvenParity => "even parity",
            Hypothesis::SublatticeConvex => "sublattice convexity",
            Hypothesis::NonDegeneracy => "non-degeneracy",
            Hypothesis::MonotoneEdges => "monotone-edges",
            Hypothesis::Symmetry => "symmetry",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("set mixes even and odd lattice points")]
    MixedParity,
    #[error("{0} is not an effective-boundary point")]
    NotBoundaryPoint(Point),
    #[error("degenerate effective-boundary points: {0:?}")]
    DegenerateBoundary(Vec<Point>),
    #[error("effective boundary does not form a single clockwise cycle")]
    AmbiguousOrientation,
    #[error("empty set")]
    EmptySet,
    #[error("polygon is not two-dimensional")]
    DegeneratePolygon,
    #[error("vertex {0} is not on the requested lattice")]
    VertexOffLattice(Point),
    #[error("previous set is empty")]
    EmptyPrevious,
    #[error("free window has {free} cells, cap is {cap}")]
    WindowTooLarge { free: usize, cap: usize },
    #[error("toggle margin {margin:e} at {cell} is within tolerance of zero at a singular alpha")]
    NumericalMargin { cell: Point, margin: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("alpha = {alpha} is singular (nearest singular value {nearest})")]
    SingularAlpha { alpha: f64, nearest: f64 },
    #[error("norm is not exact; use a floating-point scalar")]
    InexactNorm,
    #[error("window truncation detected at {0}")]
    WindowTruncation(Point),
    #[error("solver invariant broken: {0}")]
    SolverInvariant(String),
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("the two checkerboard energies tie at alpha = {0}")]
    ParityTie(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("step {k}: {source}")]
    Step { k: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
