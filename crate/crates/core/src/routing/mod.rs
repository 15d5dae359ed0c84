//! Constructive θ₄ paths: light paths, the one-empty-quadrant recursion and
//! the edge-by-edge replacement of Delaunay paths.

mod light;
mod quadrant;
mod route;
mod spanner;

pub use light::{
    algorithm1_light_path, check_light_path, is_protected, max1_walk, LightPathViolation,
    ProtectionContext,
};
pub use quadrant::{one_empty_quadrant_path, QuadrantCase, QuadrantTag, QuadrantTrace};
pub use route::{route, Algorithm};
pub use spanner::{lemma2_path, lemma3_path, delaunay_edge_route, spanner_path, EdgeRouteKind};

use std::f64::consts::SQRT_2;

use crate::geom::{ConeIndex, Frame, Point, PointSet};
use crate::theta::ConeGraph;

/// Relative slack for comparing floating-point path lengths against bounds.
pub const TOLERANCE: f64 = 1e-9;

pub const LIGHT_PATH_FACTOR: f64 = 3.0;
pub const QUADRANT_BASE_FACTOR: f64 = 7.0;
pub const QUADRANT_CASE22_FACTOR: f64 = 9.0;
pub const QUADRANT_FACTOR: f64 = 18.0;
pub const LEMMA2_FACTOR: f64 = SQRT_2 + 36.0;
pub const OPPOSITE_DETOUR_FACTOR: f64 = 1.0 + SQRT_2;
pub const LEMMA3_FACTOR: f64 = OPPOSITE_DETOUR_FACTOR * LEMMA2_FACTOR;
/// √(4 + 2√2), the stretch factor of the L∞-Delaunay triangulation.
pub const DELAUNAY_STRETCH: f64 = 2.613_125_929_752_753;
pub const SPANNER_FACTOR: f64 = LEMMA3_FACTOR * DELAUNAY_STRETCH;
/// The rounded spanner constant used as the acceptance threshold.
pub const SPANNER_THRESHOLD: f64 = 236.07;

pub(crate) fn within(length: f64, factor: f64, base: f64) -> bool {
    length <= factor * base * (1.0 + TOLERANCE)
}

/// The point set and θ₄-graph seen through a symmetry frame.
///
/// Vertex ids are shared with the original set, so a path found in the view
/// is already a path of the original graph. Only positions and cone labels
/// change: cone `c` of the view is cone `frame.unmap_cone(c)` of the graph.
#[derive(Clone)]
pub struct View<'a> {
    points: &'a PointSet,
    graph: &'a ConeGraph,
    frame: Frame,
    positions: Vec<Point>,
}

impl<'a> View<'a> {
    pub fn new(points: &'a PointSet, graph: &'a ConeGraph, frame: Frame) -> Self {
        assert_eq!(graph.m(), 4, "routing needs the θ₄-graph");
        let positions = points.iter().map(|p| frame.apply(p)).collect();
        View { points, graph, frame, positions }
    }

    pub fn identity(points: &'a PointSet, graph: &'a ConeGraph) -> Self {
        let frame = match points.points().first() {
            Some(p) => Frame::identity(p),
            None => Frame::identity(&Point::int(0, 0)),
        };
        View { points, graph, frame, positions: points.points().to_vec() }
    }

    /// The same data seen through `outer ∘ self.frame`. `outer` must fix the
    /// anchor of the current frame.
    pub fn then(&self, outer: &Frame) -> View<'a> {
        let frame = if self.frame.is_identity() {
            outer.clone()
        } else {
            outer.compose(&self.frame)
        };
        View::new(self.points, self.graph, frame)
    }

    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn graph(&self) -> &'a ConeGraph {
        self.graph
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn pos(&self, v: usize) -> &Point {
        &self.positions[v]
    }

    pub fn neighbor(&self, v: usize, cone: ConeIndex) -> Option<usize> {
        self.graph.neighbor(v, self.frame.unmap_cone(cone))
    }
}
