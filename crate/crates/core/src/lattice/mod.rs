//! Square-lattice geometry: points, finite lattice sets, effective boundaries,
//! discrete edges, convex hulls, Minkowski sums and Pick counting.

mod boundary;
mod hull;
mod pick;
mod set;

pub use boundary::{
    check_monotone_edges, check_symmetry, clockwise_boundary, discrete_edges, discrete_vertices,
    effective_boundary, is_nondegenerate, signed_angle, BoundaryWalk, DiscreteEdge, EdgeClass,
    MonotoneCheck, Nondegeneracy,
};
pub use hull::{
    convex_hull, fast_scaled_hull_points, is_sublattice_convex, lattice_points_in_scaled,
    mfold_identity_check, minkowski_power, minkowski_sum, ConvexLatticePolygon,
};
pub use pick::{boundary_count, pick_count, Sublattice};
pub use set::{lattice_perimeter, LatticeSet, Parity, Point, SetParity};
