//! θ₄-graphs, L∞-Delaunay triangulations and constructive spanner paths
//! over exact rational points.
//!
//! Predicates (cone membership, protection, emptiness) are exact. Only
//! Euclidean path lengths are floating point.

pub mod analysis;
pub mod error;
pub mod gen;
pub mod geom;
pub mod io;
pub mod linf;
pub mod path;
pub mod rational;
pub mod routing;
pub mod svg;
pub mod theta;

pub use error::{Error, Result};
pub use geom::{Frame, Point, PointSet};
pub use linf::{build_linf_delaunay, Triangulation};
pub use path::GeoPath;
pub use rational::Rational;
pub use theta::{build_theta_graph, ConeGraph};
