use crate::error::{Error, Result};
use crate::geom::{corner_square, euclid, quadrant, Frame, PointSet, Square};
use crate::linf::{classify_pair, corner_point, observation1_square, shortest_dt_path, SideClass, Triangulation};
use crate::path::{EdgeSource, GeoPath};
use crate::routing::quadrant::{quadrant_path_in, QuadrantTrace};
use crate::routing::{within, View, LEMMA2_FACTOR, LEMMA3_FACTOR, OPPOSITE_DETOUR_FACTOR};
use crate::theta::ConeGraph;

/// Path from `s` to `t` when the smallest square with corner `t` containing
/// `s` has an empty interior. The length is at most (√2 + 36)·|st|.
pub fn lemma2_path(points: &PointSet, graph: &ConeGraph, s: usize, t: usize) -> Result<GeoPath> {
    corner_route_with_trace(points, graph, s, t).map(|(p, _)| p)
}

pub(crate) fn corner_route_with_trace(
    points: &PointSet,
    graph: &ConeGraph,
    s: usize,
    t: usize,
) -> Result<(GeoPath, Option<QuadrantTrace>)> {
    if s == t {
        return Err(Error::PreconditionViolated("s equals t".into()));
    }
    let (ps, pt) = (&points[s], &points[t]);
    let square = corner_square(pt, ps);
    if let Some(v) = (0..points.len()).find(|&v| square.contains_interior(&points[v])) {
        return Err(Error::PreconditionViolated(format!(
            "{v} lies inside the corner square of {t} and {s}"
        )));
    }
    // First frame, in the fixed enumeration, that puts s in C1(t) and n3(s)
    // either at t or in C2(t).
    let mut chosen = None;
    for frame in Frame::all(pt) {
        if quadrant(pt, &frame.apply(ps)) != 1 {
            continue;
        }
        let n3 = graph
            .neighbor(s, frame.unmap_cone(3))
            .ok_or(Error::MissingEdge { vertex: s, cone: frame.unmap_cone(3) })?;
        if n3 == t || quadrant(pt, &frame.apply(&points[n3])) == 2 {
            chosen = Some((frame, n3));
            break;
        }
    }
    let (frame, n3) = chosen.ok_or_else(|| Error::InvariantBroken("no normalizing frame".into()))?;
    let st = euclid(ps, pt);
    let mut path = GeoPath::single(s);
    if n3 == t {
        path.push(points, t, Some(3), EdgeSource::DirectEdge);
        return Ok((path, None));
    }
    path.push(points, n3, Some(3), EdgeSource::CornerRoutePrefix);
    if !within(path.length(), std::f64::consts::SQRT_2, st) {
        return Err(Error::InvariantBroken(format!("edge {s}-{n3} longer than sqrt(2)|st|")));
    }
    let view = View::new(points, graph, frame);
    let (rest, trace) = quadrant_path_in(&view, n3, t).map_err(|e| match e {
        Error::PreconditionViolated(m) => Error::InvariantBroken(format!("consecutive-sides reduction: {m}")),
        e => e,
    })?;
    path.append(points, &rest);
    if !within(path.length(), LEMMA2_FACTOR, st) {
        return Err(Error::InvariantBroken(format!(
            "path {s}->{t} has length {} > (sqrt2+36)|st|",
            path.length()
        )));
    }
    Ok((path, Some(trace)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeRouteKind {
    Consecutive,
    Opposite { middle: usize },
}

/// Routes `x -> y` for two points on consecutive sides of the empty square
/// `square`, through the shrunken square with one of them at a corner.
fn consecutive_route(points: &PointSet, graph: &ConeGraph, square: &Square, x: usize, y: usize) -> Result<GeoPath> {
    let sq = observation1_square(square, &points[x], &points[y])?;
    match corner_point(&sq, &points[x], &points[y]) {
        Some(c) if c == &points[y] => lemma2_path(points, graph, x, y),
        Some(_) => Ok(lemma2_path(points, graph, y, x)?.reversed(points)),
        None => Err(Error::InvariantBroken(format!("no corner point for {x}-{y}"))),
    }
}

/// Path in the θ₄-graph replacing the triangulation edge `ab`.
pub fn lemma3_path(points: &PointSet, graph: &ConeGraph, tri: &Triangulation, a: usize, b: usize) -> Result<GeoPath> {
    delaunay_edge_route(points, graph, tri, a, b).map(|(p, _)| p)
}

pub fn delaunay_edge_route(
    points: &PointSet,
    graph: &ConeGraph,
    tri: &Triangulation,
    a: usize,
    b: usize,
) -> Result<(GeoPath, EdgeRouteKind)> {
    if !tri.has_edge(a, b) {
        return Err(Error::NotATriangulationEdge(a, b));
    }
    let ab = euclid(&points[a], &points[b]);
    let triangles = tri.incident_triangles(a, b);
    let mut middle = None;
    for &i in triangles {
        match tri.side_class(points, i, a, b)? {
            SideClass::Consecutive { .. } => {
                let square = &tri.triangle_witnesses()[i];
                let path = consecutive_route(points, graph, square, a, b)?;
                return Ok((path, EdgeRouteKind::Consecutive));
            }
            SideClass::Opposite { middle: c } => {
                middle.get_or_insert((i, c));
            }
        }
    }
    let witness = tri.edge_witness(a, b).expect("edge has a witness");
    if classify_pair(witness, &points[a], &points[b]).is_some() {
        let path = consecutive_route(points, graph, witness, a, b)?;
        return Ok((path, EdgeRouteKind::Consecutive));
    }
    let (i, c) = middle.ok_or_else(|| {
        Error::InvariantBroken(format!("edge {a}-{b} has no consecutive witness and no triangle"))
    })?;
    let square = &tri.triangle_witnesses()[i];
    let detour = euclid(&points[a], &points[c]) + euclid(&points[c], &points[b]);
    if !within(detour, OPPOSITE_DETOUR_FACTOR, ab) {
        return Err(Error::InvariantBroken(format!(
            "|ac| + |cb| = {detour} exceeds (1+sqrt2)|ab| for {a}-{b} via {c}"
        )));
    }
    let mut path = consecutive_route(points, graph, square, a, c)?;
    path.append(points, &consecutive_route(points, graph, square, c, b)?);
    if !within(path.length(), LEMMA3_FACTOR, ab) {
        return Err(Error::InvariantBroken(format!(
            "path {a}->{b} has length {} > (1+sqrt2)(sqrt2+36)|ab|",
            path.length()
        )));
    }
    Ok((path, EdgeRouteKind::Opposite { middle: c }))
}

/// Replaces every edge of the shortest triangulation path from `s` to `t`
/// by its Delaunay-edge route and concatenates the pieces.
pub fn spanner_path(
    points: &PointSet,
    graph: &ConeGraph,
    tri: &Triangulation,
    s: usize,
    t: usize,
) -> Result<GeoPath> {
    if s == t {
        return Ok(GeoPath::single(s));
    }
    let nu = shortest_dt_path(points, tri, s, t)?;
    let mut path = GeoPath::single(s);
    for w in nu.vertices().windows(2) {
        path.append(points, &lemma3_path(points, graph, tri, w[0], w[1])?);
    }
    if !within(path.length(), LEMMA3_FACTOR, nu.length()) {
        return Err(Error::InvariantBroken(format!(
            "spanner path {s}->{t} exceeds (1+sqrt2)(sqrt2+36) times the Delaunay path"
        )));
    }
    Ok(path)
}
