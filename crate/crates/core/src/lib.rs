//! Solvers for the (1|1)_R-centroid problem in the Euclidean plane.
//!
//! A leader picks a point `x`; a follower then opens a facility at distance
//! at least `R` from it and captures every customer strictly closer to the
//! follower. [`centroid::solve_centroid`] finds a leader location that
//! minimizes the weight the follower can capture.

pub mod centroid;
pub mod error;
pub mod geom;
pub mod instance;
pub mod linesearch;
pub mod medianoid;
pub mod oracle;
pub mod vprune;

pub use centroid::{solve_centroid, SolveReport, SolverMode, Telemetry};
pub use error::{Error, Result};
pub use geom::{Circle, DirectedLine, Point};
pub use instance::{Customer, Instance};
pub use medianoid::{solve_medianoid, MedianoidResult, WedgeDirection};
