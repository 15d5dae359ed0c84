use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{above_minus, above_plus, l1, quadrant, smallest_centered_square, Point, PointSet};
use crate::path::{EdgeSource, GeoPath};
use crate::rational::Rational;
use crate::routing::{within, View, LIGHT_PATH_FACTOR};
use crate::theta::ConeGraph;

/// Protection is judged against the slope −1 line through `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtectionContext {
    pub target: Point,
}

impl ProtectionContext {
    pub fn new(target: &Point) -> Self {
        ProtectionContext { target: target.clone() }
    }
}

/// `p` is protected when its cone 1 is empty or its 1-neighbor lies strictly
/// above ℓ⁻ of the target. The 1-neighbor minimizes x + y over the cone, so
/// this is the same as asking that no point of the cone lies on or below ℓ⁻.
pub fn is_protected(points: &PointSet, graph: &ConeGraph, p: usize, ctx: &ProtectionContext) -> bool {
    protected_in(&View::identity(points, graph), p, &ctx.target)
}

pub(crate) fn protected_in(view: &View, p: usize, target: &Point) -> bool {
    match view.neighbor(p, 1) {
        None => true,
        Some(q) => above_minus(view.pos(q), target),
    }
}

/// Light-path walk: from `s`, follow 0-edges out of protected vertices and
/// 1-edges otherwise, until reaching `t` or a protected vertex right of `t`.
pub fn algorithm1_light_path(points: &PointSet, graph: &ConeGraph, s: usize, t: usize) -> Result<GeoPath> {
    light_path_in(&View::identity(points, graph), s, t, EdgeSource::LightPath)
}

pub(crate) fn light_path_in(view: &View, s: usize, t: usize, source: EdgeSource) -> Result<GeoPath> {
    let pt = view.pos(t).clone();
    if view.pos(s).x >= pt.x {
        return Err(Error::PreconditionViolated(format!(
            "light path needs {s} strictly left of {t}"
        )));
    }
    let mut path = GeoPath::single(s);
    let mut z = s;
    while z != t {
        let protected = protected_in(view, z, &pt);
        if protected && view.pos(z).x > pt.x {
            break;
        }
        let cone = if protected { 0 } else { 1 };
        let next = view
            .neighbor(z, cone)
            .ok_or(Error::StuckVertex { vertex: z, cone })?;
        path.push(view.points(), next, Some(cone), source);
        if path.edge_count() > view.n() {
            return Err(Error::InvariantBroken(format!("light path from {s} does not terminate")));
        }
        z = next;
    }
    Ok(path)
}

/// Follows 1-edges from `p` until reaching a vertex protected with respect to
/// `ctx.target`. Each step increases x + y, so the walk ends.
pub fn max1_walk(points: &PointSet, graph: &ConeGraph, p: usize, ctx: &ProtectionContext) -> GeoPath {
    max1_walk_in(&View::identity(points, graph), p, &ctx.target, EdgeSource::Max1Walk)
}

pub(crate) fn max1_walk_in(view: &View, p: usize, target: &Point, source: EdgeSource) -> GeoPath {
    let mut path = GeoPath::single(p);
    let mut z = p;
    while !protected_in(view, z, target) {
        let next = view.neighbor(z, 1).expect("unprotected vertex has a 1-neighbor");
        path.push(view.points(), next, Some(1), source);
        z = next;
    }
    path
}

/// A structural property of light-path output that failed to hold.
#[derive(Clone, Debug, PartialEq)]
pub enum LightPathViolation {
    NotXMonotone { index: usize },
    OutsideSquare { vertex: usize },
    NotLight { zero_edge: usize, crossing_edge: usize },
    OverlappingProjections { first: usize, second: usize },
    BadEndpoint { vertex: usize, reason: &'static str },
    TooLong { length: f64, bound: f64 },
    MissingEdge { index: usize },
}

impl fmt::Display for LightPathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LightPathViolation::NotXMonotone { index } => write!(f, "edge {index} is not x-monotone"),
            LightPathViolation::OutsideSquare { vertex } => write!(f, "vertex {vertex} leaves S_t(s)"),
            LightPathViolation::NotLight { zero_edge, crossing_edge } => {
                write!(f, "edge {crossing_edge} crosses the ray of 0-edge {zero_edge}")
            }
            LightPathViolation::OverlappingProjections { first, second } => {
                write!(f, "0-edges {first} and {second} have overlapping projections")
            }
            LightPathViolation::BadEndpoint { vertex, reason } => write!(f, "endpoint {vertex}: {reason}"),
            LightPathViolation::TooLong { length, bound } => write!(f, "length {length} exceeds {bound}"),
            LightPathViolation::MissingEdge { index } => write!(f, "edge {index} is not a graph edge"),
        }
    }
}

/// Checks a light path from `s` toward `t` against the structural
/// properties it must have: x-monotone, inside S_t(s), light, 0-edges with
/// disjoint projections on y = −x, the endpoint dichotomy, and (for a
/// protected `s`) the 3·L1 length bound. Returns every violation found.
pub fn check_light_path(
    points: &PointSet,
    graph: &ConeGraph,
    path: &GeoPath,
    t: usize,
) -> Vec<LightPathViolation> {
    check_light_path_in(&View::identity(points, graph), path, t)
}

pub(crate) fn check_light_path_in(view: &View, path: &GeoPath, t: usize) -> Vec<LightPathViolation> {
    let mut out = Vec::new();
    let vs = path.vertices();
    let s = path.start();
    let pt = view.pos(t);
    let pos = |i: usize| view.pos(vs[i]);

    for (i, w) in vs.windows(2).enumerate() {
        if !view.graph().has_edge(w[0], w[1]) {
            out.push(LightPathViolation::MissingEdge { index: i });
        }
        if view.pos(w[1]).x <= view.pos(w[0]).x {
            out.push(LightPathViolation::NotXMonotone { index: i });
        }
    }
    let square = smallest_centered_square(pt, view.pos(s));
    for &v in vs {
        if !square.contains(view.pos(v)) {
            out.push(LightPathViolation::OutsideSquare { vertex: v });
        }
    }

    // 0-edges go down and to the right.
    let zero_edges: Vec<usize> = (0..vs.len().saturating_sub(1))
        .filter(|&i| pos(i + 1).x > pos(i).x && pos(i + 1).y < pos(i).y)
        .collect();
    for &z in &zero_edges {
        let apex = pos(z);
        for j in 0..vs.len() - 1 {
            if j == z || j + 1 == z {
                continue;
            }
            if crosses_right_ray(pos(j), pos(j + 1), apex) {
                out.push(LightPathViolation::NotLight { zero_edge: z, crossing_edge: j });
            }
        }
    }
    let intervals: Vec<(usize, Rational, Rational)> = zero_edges
        .iter()
        .map(|&i| {
            let (a, b) = (pos(i).diff(), pos(i + 1).diff());
            if a < b {
                (i, a, b)
            } else {
                (i, b, a)
            }
        })
        .collect();
    for (x, (i, lo_i, hi_i)) in intervals.iter().enumerate() {
        for (j, lo_j, hi_j) in &intervals[x + 1..] {
            if lo_i < hi_j && lo_j < hi_i {
                out.push(LightPathViolation::OverlappingProjections { first: *i, second: *j });
            }
        }
    }

    let w = path.end();
    if w != t {
        let pw = view.pos(w);
        if !protected_in(view, w, pt) {
            out.push(LightPathViolation::BadEndpoint { vertex: w, reason: "not protected" });
        }
        if pw.x <= pt.x {
            out.push(LightPathViolation::BadEndpoint { vertex: w, reason: "not right of t" });
        }
        match quadrant(pt, pw) {
            1 if !above_plus(pw, pt) => {
                out.push(LightPathViolation::BadEndpoint { vertex: w, reason: "in C1(t) but not above l+" })
            }
            0 if above_minus(pw, pt) || pw.sum() == pt.sum() => {
                out.push(LightPathViolation::BadEndpoint { vertex: w, reason: "in C0(t) but not below l-" })
            }
            _ => {}
        }
    }
    if protected_in(view, s, pt) {
        let bound = LIGHT_PATH_FACTOR * l1(view.pos(s), pt).to_f64();
        if !within(path.length(), LIGHT_PATH_FACTOR, l1(view.pos(s), pt).to_f64()) {
            out.push(LightPathViolation::TooLong { length: path.length(), bound });
        }
    }
    out
}

/// Whether segment `ab` properly crosses the horizontal ray going right from `p`.
fn crosses_right_ray(a: &Point, b: &Point, p: &Point) -> bool {
    let da = &a.y - &p.y;
    let db = &b.y - &p.y;
    if da.signum() == db.signum() || da.is_zero() || db.is_zero() {
        return false;
    }
    // Intersection x = a.x + (p.y - a.y) (b.x - a.x) / (b.y - a.y) > p.x,
    // multiplied through by (b.y - a.y) with its sign taken into account.
    let dy = &b.y - &a.y;
    let lhs = &(&a.x - &p.x) * &dy + &(-&da) * &(&b.x - &a.x);
    if dy.is_positive() {
        lhs.is_positive()
    } else {
        lhs.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::build_theta_graph;

    fn set(pts: &[(i64, i64)]) -> PointSet {
        PointSet::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    #[test]
    fn protection_examples() {
        let p = set(&[(-4, 1), (0, 0)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let ctx = ProtectionContext::new(&p[1]);
        assert!(is_protected(&p, &g, 0, &ctx));
        let p = set(&[(-3, -1), (0, 0)]);
        let g = build_theta_graph(&p, 4).unwrap();
        assert!(!is_protected(&p, &g, 0, &ProtectionContext::new(&p[1])));
    }

    #[test]
    fn direct_light_path() {
        let p = set(&[(-1, 2), (0, 0)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let path = algorithm1_light_path(&p, &g, 0, 1).unwrap();
        assert_eq!(path.vertices(), &[0, 1]);
    }

    #[test]
    fn hand_traced_light_path() {
        let p = set(&[(-4, 2), (-2, -1), (0, 0)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let path = algorithm1_light_path(&p, &g, 0, 2).unwrap();
        assert_eq!(path.vertices(), &[0, 1, 2]);
        assert_eq!(path.edges()[0].canonical_cone, Some(0));
        assert_eq!(path.edges()[1].canonical_cone, Some(1));
        let expected = 13f64.sqrt() + 5f64.sqrt();
        assert!((path.length() - expected).abs() < 1e-12);
        assert!(check_light_path(&p, &g, &path, 2).is_empty());
    }

    #[test]
    fn max1_chain() {
        // Increasing x + y below l- of the target; only the third point has
        // an empty cone 1.
        let p = set(&[(0, 0), (2, 1), (5, 3), (30, 2)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let ctx = ProtectionContext::new(&p[3]);
        let walk = max1_walk(&p, &g, 0, &ctx);
        assert_eq!(walk.vertices(), &[0, 1, 2]);
        let walk = max1_walk(&p, &g, 2, &ctx);
        assert_eq!(walk.vertices(), &[2]);
    }

    #[test]
    fn ray_crossing() {
        let p = Point::int(0, 0);
        assert!(crosses_right_ray(&Point::int(1, -1), &Point::int(2, 3), &p));
        assert!(!crosses_right_ray(&Point::int(-3, -1), &Point::int(-1, 3), &p));
        assert!(!crosses_right_ray(&Point::int(1, 1), &Point::int(2, 3), &p));
        // Segment crossing y = 0 left of p.
        assert!(!crosses_right_ray(&Point::int(-5, 2), &Point::int(1, -4), &p));
        assert!(crosses_right_ray(&Point::int(-1, 2), &Point::int(5, -4), &p));
    }
}
