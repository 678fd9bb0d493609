//! Plane cycles in geometric complete multipartite graphs.
//!
//! Points carry integer coordinates and a color; two points are joined in the
//! host graph iff their colors differ. A cycle is plane when no two of its
//! straight-line edges cross.

pub mod geom;
pub mod model;
pub mod oracle;
pub mod monotonicity;
pub mod rainbow;
pub mod fpt;
pub mod nested;
pub mod generate;

pub use geom::{Orientation, Point, COORD_BOUND};
pub use model::{validate_cycle, Color, ColoredPointSet, CycleViolation, ModelError, PlaneCycle};
