//! L∞-Delaunay triangulation: `ab` is an edge when some axis-aligned square
//! with `a` and `b` on its boundary has an empty interior.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::analysis::stretch::dijkstra;
use crate::error::{Error, Result};
use crate::geom::{find_degenerate_pair, linf, Corner, Point, PointSet, Square};
use crate::path::{EdgeSource, GeoPath};
use crate::rational::Rational;

/// How the endpoints of an edge sit on a witness square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideClass {
    Consecutive { corner: Corner },
    /// Opposite sides; `middle` is the third vertex of the triangle.
    Opposite { middle: usize },
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    n: usize,
    edges: Vec<(usize, usize)>,
    edge_witnesses: Vec<Square>,
    triangles: Vec<[usize; 3]>,
    triangle_witnesses: Vec<Square>,
    adjacency: Vec<Vec<usize>>,
    edge_triangles: HashMap<(usize, usize), Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Triangulation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_witnesses(&self) -> &[Square] {
        &self.edge_witnesses
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_witnesses(&self) -> &[Square] {
        &self.triangle_witnesses
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edge_witness(&self, a: usize, b: usize) -> Option<&Square> {
        self.edges
            .binary_search(&key(a, b))
            .ok()
            .map(|i| &self.edge_witnesses[i])
    }

    /// Indices of the triangles containing edge `ab`.
    pub fn incident_triangles(&self, a: usize, b: usize) -> &[usize] {
        self.edge_triangles
            .get(&key(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Side classification of `ab` with respect to the witness of triangle `tri`.
    pub fn side_class(&self, points: &PointSet, tri: usize, a: usize, b: usize) -> Result<SideClass> {
        let t = self.triangles[tri];
        if !t.contains(&a) || !t.contains(&b) || a == b {
            return Err(Error::NotATriangulationEdge(a, b));
        }
        let middle = *t.iter().find(|&&v| v != a && v != b).unwrap();
        let square = &self.triangle_witnesses[tri];
        match classify_pair(square, &points[a], &points[b]) {
            Some(corner) => Ok(SideClass::Consecutive { corner }),
            None => Ok(SideClass::Opposite { middle }),
        }
    }
}

/// Shared corner of the sides holding `a` and `b`, if they lie on
/// consecutive sides of `square`.
pub fn classify_pair(square: &Square, a: &Point, b: &Point) -> Option<Corner> {
    let sa = square.sides_of(a);
    let sb = square.sides_of(b);
    for &x in &sa {
        for &y in &sb {
            if let Some(c) = Corner::between(x, y) {
                return Some(c);
            }
        }
    }
    None
}

/// Returns an empty square with `a` and `b` on its boundary, if one exists.
///
/// Only squares of side `linf(a, b)` are searched: any empty witness contains
/// one of that size that still has both points on its boundary. Within that
/// one-parameter family a third point blocks an open interval of offsets, so
/// the search is an interval sweep. Offsets putting `a` or `b` at a corner
/// are preferred.
pub fn certify_edge(points: &PointSet, a: usize, b: usize) -> Option<Square> {
    assert_ne!(a, b, "certify_edge on a single point");
    let (pa, pb) = (&points[a], &points[b]);
    let dx = (&pa.x - &pb.x).abs();
    let dy = (&pa.y - &pb.y).abs();
    // Work in a frame where the wide direction is x.
    let swap = dy > dx;
    let get = |p: &Point| if swap { (p.y.clone(), p.x.clone()) } else { (p.x.clone(), p.y.clone()) };
    let (ax, ay) = get(pa);
    let (bx, by) = get(pb);
    let side = Rational::max_of(&dx, &dy);
    let (x0, x1) = if ax < bx { (ax, bx) } else { (bx, ax) };
    let lo = &Rational::max_of(&ay, &by) - &side;
    let hi = Rational::min_of(&ay, &by);

    let mut blocked: Vec<(Rational, Rational)> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != a && i != b)
        .filter_map(|(_, p)| {
            let (cx, cy) = get(p);
            if cx <= x0 || cx >= x1 {
                return None;
            }
            let start = &cy - &side;
            if cy <= lo || start >= hi {
                return None;
            }
            Some((start, cy))
        })
        .collect();
    let free = |y: &Rational| blocked.iter().all(|(s, e)| !(s < y && y < e));
    let y0 = if free(&hi) {
        Some(hi.clone())
    } else if free(&lo) {
        Some(lo.clone())
    } else {
        blocked.sort();
        let mut candidate = lo.clone();
        let mut found = None;
        for (s, e) in &blocked {
            if *s >= candidate {
                found = Some(candidate.clone());
                break;
            }
            if *e > candidate {
                candidate = e.clone();
            }
        }
        found.or_else(|| (candidate <= hi).then_some(candidate))
    }?;
    let (sx, sy) = if swap { (y0, x0) } else { (x0, y0) };
    Some(Square::from_corner(&sx, &sy, &side))
}

/// The unique square with all three points on its boundary, if any.
pub fn circumsquare(p: &Point, q: &Point, r: &Point) -> Option<Square> {
    let pts = [p, q, r];
    let xs: Vec<&Rational> = pts.iter().map(|p| &p.x).collect();
    let ys: Vec<&Rational> = pts.iter().map(|p| &p.y).collect();
    let (xmin, xmax) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (ymin, ymax) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let w = xmax - xmin;
    let h = ymax - ymin;
    let square = if w > h {
        let mid = pts.iter().find(|p| &p.x != xmin && &p.x != xmax)?;
        let y0 = if &mid.y == ymin {
            mid.y.clone()
        } else if &mid.y == ymax {
            &mid.y - &w
        } else {
            return None;
        };
        Square::from_corner(xmin, &y0, &w)
    } else if h > w {
        let mid = pts.iter().find(|p| &p.y != ymin && &p.y != ymax)?;
        let x0 = if &mid.x == xmin {
            mid.x.clone()
        } else if &mid.x == xmax {
            &mid.x - &h
        } else {
            return None;
        };
        Square::from_corner(&x0, ymin, &h)
    } else {
        Square::from_corner(xmin, ymin, &w)
    };
    pts.iter().all(|p| square.on_boundary(p)).then_some(square)
}

/// Builds the triangulation by certifying every pair, then collecting the
/// mutually adjacent triples whose circumsquare is empty.
pub fn build_linf_delaunay(points: &PointSet) -> Result<Triangulation> {
    if let Some((a, b, direction)) = find_degenerate_pair(points.points()) {
        return Err(Error::InvalidPointSet { a, b, direction });
    }
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let certified: Vec<((usize, usize), Square)> = pairs
        .par_iter()
        .filter_map(|&(a, b)| certify_edge(points, a, b).map(|s| ((a, b), s)))
        .collect();
    let (edges, edge_witnesses): (Vec<_>, Vec<_>) = certified.into_iter().unzip();
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }

    let found: Vec<Result<Option<([usize; 3], Square)>>> = edges
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let adjacency = &adjacency;
            adjacency[b]
                .iter()
                .filter(move |&&c| c > b && adjacency[a].binary_search(&c).is_ok())
                .map(move |&c| triangle_for(points, [a, b, c]))
        })
        .collect();
    let mut triangles = Vec::new();
    let mut triangle_witnesses = Vec::new();
    for item in found {
        if let Some((t, s)) = item? {
            triangles.push(t);
            triangle_witnesses.push(s);
        }
    }
    let mut edge_triangles: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            edge_triangles.entry(key(u, v)).or_default().push(i);
        }
    }
    Ok(Triangulation {
        n,
        edges,
        edge_witnesses,
        triangles,
        triangle_witnesses,
        adjacency,
        edge_triangles,
    })
}

fn triangle_for(points: &PointSet, t: [usize; 3]) -> Result<Option<([usize; 3], Square)>> {
    let Some(square) = circumsquare(&points[t[0]], &points[t[1]], &points[t[2]]) else {
        return Ok(None);
    };
    let mut on_boundary = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if square.contains_interior(p) {
            return Ok(None);
        }
        if square.on_boundary(p) {
            on_boundary.push(i);
        }
    }
    if on_boundary.len() > 3 {
        return Err(Error::DegenerateCocircularity(on_boundary));
    }
    Ok(Some((t, square)))
}

/// For `a`, `b` on consecutive sides of `square`, the square
/// inside it that shares their common corner, has side `linf(a, b)` and
/// contains segment `ab`. One of the two points lands on one of its corners.
pub fn observation1_square(square: &Square, a: &Point, b: &Point) -> Result<Square> {
    let corner = classify_pair(square, a, b).ok_or(Error::NotConsecutive)?;
    let k = square.corner(corner);
    let d = Rational::max_of(&linf(a, &k), &linf(b, &k));
    let x0 = match corner {
        Corner::BottomLeft | Corner::TopLeft => k.x.clone(),
        _ => &k.x - &d,
    };
    let y0 = match corner {
        Corner::BottomLeft | Corner::BottomRight => k.y.clone(),
        _ => &k.y - &d,
    };
    Ok(Square::from_corner(&x0, &y0, &d))
}

/// Which of `a`, `b` sits on a corner of `sq`.
pub fn corner_point<'a>(sq: &Square, a: &'a Point, b: &'a Point) -> Option<&'a Point> {
    let at_corner = |p: &Point| {
        let s = sq.sides_of(p);
        s.iter().any(|x| s.iter().any(|y| Corner::between(*x, *y).is_some()))
    };
    if at_corner(a) {
        Some(a)
    } else if at_corner(b) {
        Some(b)
    } else {
        None
    }
}

/// Euclidean shortest path between two vertices in the triangulation.
pub fn shortest_dt_path(points: &PointSet, tri: &Triangulation, s: usize, t: usize) -> Result<GeoPath> {
    let (dist, prev) = dijkstra(points, tri.adjacency(), s);
    if !dist[t].is_finite() {
        return Err(Error::Disconnected(s, t));
    }
    let mut rev = vec![t];
    let mut v = t;
    while v != s {
        v = prev[v].expect("predecessor on a reached vertex");
        rev.push(v);
    }
    rev.reverse();
    Ok(GeoPath::from_vertices(points, &rev, EdgeSource::Delaunay))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(i64, i64)]) -> PointSet {
        PointSet::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn single_triangle() {
        let p = set(&[(0, 0), (5, 2), (1, 5)]);
        let t = build_linf_delaunay(&p).unwrap();
        assert_eq!(t.triangles(), &[[0, 1, 2]]);
        let w = &t.triangle_witnesses()[0];
        assert!(p.iter().all(|x| w.on_boundary(x)));
    }

    #[test]
    fn convex_quadrilateral() {
        let p = set(&[(0, 0), (5, 1), (1, 6), (6, 7)]);
        let t = build_linf_delaunay(&p).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert_eq!(t.edges().len(), 5);
    }

    #[test]
    fn blocker_kills_edge() {
        let p = PointSet::new(vec![
            Point::int(0, 0),
            Point::new(q("4"), q("0.5")),
            Point::new(q("2"), q("0.25")),
        ])
        .unwrap();
        assert!(certify_edge(&p, 0, 1).is_none());
        assert!(certify_edge(&p, 0, 2).is_some());
        let p = set(&[(0, 0), (2, 1)]);
        let w = certify_edge(&p, 0, 1).unwrap();
        assert!(w.on_boundary(&p[0]) && w.on_boundary(&p[1]));
    }

    #[test]
    fn interior_offset_found_when_both_extremes_blocked() {
        // Blockers cover offsets near both ends of the family but leave a gap.
        let p = PointSet::new(vec![
            Point::new(q("0"), q("0")),
            Point::new(q("10"), q("3")),
            Point::int(2, 8),
            Point::int(7, -4),
        ])
        .unwrap();
        let w = certify_edge(&p, 0, 1).unwrap();
        assert!(w.on_boundary(&p[0]) && w.on_boundary(&p[1]));
        assert!(p.iter().all(|x| !w.contains_interior(x)));
        assert!(corner_point(&w, &p[0], &p[1]).is_none());
    }

    #[test]
    fn inner_corner_square_examples() {
        let s = Square::from_corner(&q("0"), &q("0"), &q("10"));
        let sq = observation1_square(&s, &Point::int(0, 7), &Point::int(4, 10)).unwrap();
        assert_eq!(sq, Square::from_corner(&q("0"), &q("6"), &q("4")));
        let sq = observation1_square(&s, &Point::int(0, 2), &Point::int(9, 10)).unwrap();
        assert_eq!(sq, Square::from_corner(&q("0"), &q("1"), &q("9")));
        assert_eq!(
            corner_point(&sq, &Point::int(0, 2), &Point::int(9, 10)),
            Some(&Point::int(9, 10))
        );
        let bad = observation1_square(&s, &Point::int(0, 2), &Point::int(10, 5));
        assert!(matches!(bad, Err(Error::NotConsecutive)));
        let sq = observation1_square(&s, &Point::int(0, 10), &Point::int(10, 4)).unwrap();
        assert!(corner_point(&sq, &Point::int(0, 10), &Point::int(10, 4)).is_some());
        assert!(s.contains_square(&sq));
    }

    #[test]
    fn circumsquare_cases() {
        let sq = circumsquare(&Point::int(0, 0), &Point::int(4, 1), &Point::int(1, 4)).unwrap();
        assert_eq!(sq, Square::from_corner(&q("0"), &q("0"), &q("4")));
        // Middle point in both coordinates: nothing passes through all three.
        assert!(circumsquare(&Point::int(0, 0), &Point::int(2, 1), &Point::int(6, 3)).is_none());
    }

    #[test]
    fn four_on_a_square_is_rejected() {
        let p = set(&[(0, 1), (3, 0), (4, 3), (1, 4)]);
        assert!(matches!(build_linf_delaunay(&p), Err(Error::DegenerateCocircularity(_))));
    }

    #[test]
    fn shortest_path_in_triangle() {
        let p = set(&[(0, 0), (5, 2), (1, 5)]);
        let t = build_linf_delaunay(&p).unwrap();
        let path = shortest_dt_path(&p, &t, 0, 1).unwrap();
        assert_eq!(path.vertices(), &[0, 1]);
    }
}
