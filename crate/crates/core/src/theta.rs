//! θ_m-graphs: in every cone around a point, connect to the point whose
//! projection on the cone bisector is nearest.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{find_degenerate_pair, l1, quadrant, ConeIndex, DiagonalLine, Point, PointSet};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGraph {
    m: usize,
    /// `out[p][i]` is n_i(p).
    out: Vec<Vec<Option<usize>>>,
    /// Undirected edges `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ConeGraph {
    /// Assembles a graph from per-vertex cone neighbors.
    pub fn from_out_neighbors(m: usize, out: Vec<Vec<Option<usize>>>) -> Self {
        let n = out.len();
        let mut edges: Vec<(usize, usize)> = out
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().flatten().map(move |&q| (p.min(q), p.max(q))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }
        ConeGraph { m, out, edges, adjacency }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbor(&self, p: usize, cone: ConeIndex) -> Option<usize> {
        self.out[p][cone]
    }

    pub fn out_neighbors(&self, p: usize) -> &[Option<usize>] {
        &self.out[p]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, p: usize) -> &[usize] {
        &self.adjacency[p]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v, cone)` where `v = n_cone(u)`.
    /// When both endpoints generate the edge the smaller id is reported as `u`.
    pub fn labeled_edges(&self) -> Vec<(usize, usize, ConeIndex)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                if let Some(c) = self.cone_to(a, b) {
                    (a, b, c)
                } else {
                    (b, a, self.cone_to(b, a).expect("edge without generator"))
                }
            })
            .collect()
    }

    /// The cone of `p` whose neighbor is `q`, if `q` is one of its out-neighbors.
    pub fn cone_to(&self, p: usize, q: usize) -> Option<ConeIndex> {
        self.out[p].iter().position(|&x| x == Some(q))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// Builds the θ_m-graph by a brute-force scan per vertex.
///
/// For `m = 4` cones are the open quadrants and all comparisons are exact.
/// Other `m` use floating-point angles and projections, with ties broken by
/// the smaller point id.
pub fn build_theta_graph(points: &PointSet, m: usize) -> Result<ConeGraph> {
    if m < 2 {
        return Err(Error::PreconditionViolated(format!("cone count {m} < 2")));
    }
    if m == 4 {
        if let Some((a, b, direction)) = find_degenerate_pair(points.points()) {
            return Err(Error::InvalidPointSet { a, b, direction });
        }
        let out = (0..points.len())
            .into_par_iter()
            .map(|p| theta4_row(points, p))
            .collect();
        return Ok(ConeGraph::from_out_neighbors(4, out));
    }
    let coords: Vec<(f64, f64)> = points.iter().map(Point::to_f64).collect();
    if let Some((a, b)) = duplicate_coordinates(points) {
        return Err(Error::PreconditionViolated(format!("points {a} and {b} coincide")));
    }
    let out = (0..points.len())
        .into_par_iter()
        .map(|p| general_row(&coords, p, m))
        .collect();
    Ok(ConeGraph::from_out_neighbors(m, out))
}

fn theta4_row(points: &PointSet, p: usize) -> Vec<Option<usize>> {
    let apex = points.point(p);
    let mut best: [Option<(Rational, usize)>; 4] = Default::default();
    for (q, pt) in points.iter().enumerate() {
        if q == p {
            continue;
        }
        let c = quadrant(apex, pt);
        let d = l1(apex, pt);
        if best[c].as_ref().is_none_or(|(bd, _)| d < *bd) {
            best[c] = Some((d, q));
        }
    }
    best.into_iter().map(|b| b.map(|(_, q)| q)).collect()
}

fn duplicate_coordinates(points: &PointSet) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order
        .windows(2)
        .find(|w| points[w[0]] == points[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

/// Cone index of direction `(dx, dy)` when cone 0 starts at the negative
/// y-axis and cones advance counter-clockwise.
pub fn general_cone(dx: f64, dy: f64, m: usize) -> ConeIndex {
    let width = 2.0 * PI / m as f64;
    let rel = (dy.atan2(dx) + PI / 2.0).rem_euclid(2.0 * PI);
    ((rel / width) as usize).min(m - 1)
}

fn general_row(coords: &[(f64, f64)], p: usize, m: usize) -> Vec<Option<usize>> {
    let width = 2.0 * PI / m as f64;
    let (px, py) = coords[p];
    let mut best: Vec<Option<(f64, usize)>> = vec![None; m];
    for (q, &(qx, qy)) in coords.iter().enumerate() {
        if q == p {
            continue;
        }
        let (dx, dy) = (qx - px, qy - py);
        let c = general_cone(dx, dy, m);
        let bisector = -PI / 2.0 + (c as f64 + 0.5) * width;
        let proj = dx * bisector.cos() + dy * bisector.sin();
        // Strict comparison keeps the smaller id on ties since ids ascend.
        if best[c].is_none_or(|(bd, _)| proj < bd) {
            best[c] = Some((proj, q));
        }
    }
    best.into_iter().map(|b| b.map(|(_, q)| q)).collect()
}

/// Δ_i(p): the right isosceles triangle with its right angle at `apex`, legs
/// along the boundary rays of the cone and hypotenuse through n_i(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyTriangle {
    pub apex: Point,
    pub cone: ConeIndex,
    pub leg: Rational,
}

impl EmptyTriangle {
    fn directions(&self) -> [(i64, i64); 2] {
        match self.cone {
            0 => [(1, 0), (0, -1)],
            1 => [(1, 0), (0, 1)],
            2 => [(-1, 0), (0, 1)],
            _ => [(-1, 0), (0, -1)],
        }
    }

    /// Apex followed by the two acute corners.
    pub fn vertices(&self) -> [Point; 3] {
        let [a, b] = self.directions();
        let at = |(dx, dy): (i64, i64)| {
            Point::new(
                &self.apex.x + &(&self.leg * &Rational::from_int(dx)),
                &self.apex.y + &(&self.leg * &Rational::from_int(dy)),
            )
        };
        [self.apex.clone(), at(a), at(b)]
    }

    pub fn hypotenuse(&self) -> DiagonalLine {
        let [_, a, _] = self.vertices();
        if self.cone % 2 == 0 {
            DiagonalLine::plus(&a)
        } else {
            DiagonalLine::minus(&a)
        }
    }

    pub fn contains_interior(&self, q: &Point) -> bool {
        q.x != self.apex.x
            && q.y != self.apex.y
            && quadrant(&self.apex, q) == self.cone
            && l1(&self.apex, q) < self.leg
    }

    pub fn on_hypotenuse(&self, q: &Point) -> bool {
        q.x != self.apex.x
            && q.y != self.apex.y
            && quadrant(&self.apex, q) == self.cone
            && l1(&self.apex, q) == self.leg
    }

    /// Points of `points` strictly inside the triangle.
    pub fn interior_points(&self, points: &PointSet) -> Vec<usize> {
        (0..points.len())
            .filter(|&q| self.contains_interior(&points[q]))
            .collect()
    }
}

pub fn empty_triangle(
    points: &PointSet,
    graph: &ConeGraph,
    p: usize,
    cone: ConeIndex,
) -> Result<EmptyTriangle> {
    if graph.m() != 4 {
        return Err(Error::PreconditionViolated("empty triangles need m = 4".into()));
    }
    let q = graph
        .neighbor(p, cone)
        .ok_or(Error::MissingEdge { vertex: p, cone })?;
    Ok(EmptyTriangle {
        apex: points[p].clone(),
        cone,
        leg: l1(&points[p], &points[q]),
    })
}
