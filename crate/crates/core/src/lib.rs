//! Numerics for cusped hyperbolic 3-manifolds.
//!
//! The crate works with the flat tori that bound cusp neighborhoods. Given the
//! Euclidean shape of each cusp torus (as trusted input) it measures slopes,
//! computes hyperbolic areas of truncated-cusp regions, and evaluates the
//! quantitative length conditions under which Dehn fillings and Freedman
//! tubings keep an immersed surface (or a curve) essential.
//!
//! * [`lattice`]: slopes, homology classes, lengths, intersection numbers and
//!   short-slope enumeration on a cusp torus.
//! * [`cusp_area`]: closed-form areas of the regions `R1(a, b)` and `R2(a, b)`,
//!   flux of the calibrating form `dy ∧ dz / z²` and the resulting area lower
//!   bounds, with an independent adaptive quadrature oracle.
//! * [`surgery`]: length criteria for curves and surfaces surviving Dehn
//!   filling, and the finite excluded data (short slopes and the coannular
//!   distance threshold).
//! * [`tubing`]: tube lengths and the essentiality criteria for Freedman
//!   tubings.
//! * [`verdict`]: the literal-comparison verdict model shared by the checkers.

pub mod cusp_area;
pub mod lattice;
pub mod surgery;
pub mod tubing;
pub mod verdict;

pub use cusp_area::{RegionKind, RegionSpec, TruncationHeight};
pub use lattice::{HomologyClass, Lattice, MultipleSlope, Slope, Vec2};
pub use verdict::{Comparison, Relation, Status, Verdict};
