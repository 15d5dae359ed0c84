use serde::{Deserialize, Serialize};

use crate::geom::{euclid, l1, ConeIndex, PointSet};
use crate::rational::Rational;

/// Which construction appended an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeSource {
    LightPath,
    Max1Walk,
    QuadrantBase,
    QuadrantCase1,
    QuadrantCase2Light,
    QuadrantCase21,
    QuadrantCase22,
    CornerRoutePrefix,
    DirectEdge,
    Delaunay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEdge {
    pub from: usize,
    pub to: usize,
    /// Cone of `from` containing `to` in the frame the edge was chosen in.
    pub canonical_cone: Option<ConeIndex>,
    pub source: EdgeSource,
}

/// A vertex sequence with cached lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct GeoPath {
    vertices: Vec<usize>,
    edges: Vec<PathEdge>,
    length_euclid: f64,
    l1_endpoints: Rational,
}

impl GeoPath {
    pub fn single(v: usize) -> Self {
        GeoPath {
            vertices: vec![v],
            edges: Vec::new(),
            length_euclid: 0.0,
            l1_endpoints: Rational::zero(),
        }
    }

    pub fn from_vertices(points: &PointSet, vertices: &[usize], source: EdgeSource) -> Self {
        let mut path = GeoPath::single(vertices[0]);
        for &v in &vertices[1..] {
            path.push(points, v, None, source);
        }
        path
    }

    pub fn push(
        &mut self,
        points: &PointSet,
        to: usize,
        canonical_cone: Option<ConeIndex>,
        source: EdgeSource,
    ) {
        let from = self.end();
        self.length_euclid += euclid(&points[from], &points[to]);
        self.edges.push(PathEdge { from, to, canonical_cone, source });
        self.vertices.push(to);
        self.l1_endpoints = l1(&points[self.start()], &points[to]);
    }

    /// Concatenates `other`, which must start where `self` ends.
    pub fn append(&mut self, points: &PointSet, other: &GeoPath) {
        assert_eq!(self.end(), other.start(), "paths do not meet");
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.edges.extend(other.edges.iter().cloned());
        self.length_euclid += other.length_euclid;
        self.l1_endpoints = l1(&points[self.start()], &points[self.end()]);
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PathEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn length(&self) -> f64 {
        self.length_euclid
    }

    pub fn l1_endpoints(&self) -> &Rational {
        &self.l1_endpoints
    }

    /// Sum of edge lengths recomputed from scratch.
    pub fn recomputed_length(&self, points: &PointSet) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| euclid(&points[w[0]], &points[w[1]]))
            .sum()
    }

    /// The prefix ending at position `index` of the vertex list.
    pub fn prefix(&self, points: &PointSet, index: usize) -> GeoPath {
        let mut out = GeoPath::single(self.start());
        for e in &self.edges[..index] {
            out.push(points, e.to, e.canonical_cone, e.source);
        }
        out
    }

    /// The same path walked backwards.
    pub fn reversed(&self, points: &PointSet) -> GeoPath {
        let mut out = GeoPath::single(self.end());
        for e in self.edges.iter().rev() {
            out.push(points, e.from, e.canonical_cone.map(|c| (c + 2) % 4), e.source);
        }
        out
    }

    pub fn retag(&mut self, source: EdgeSource) {
        for e in &mut self.edges {
            e.source = source;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn lengths_accumulate() {
        let p = PointSet::new_unchecked(vec![Point::int(0, 0), Point::int(3, 4), Point::int(6, 0)]);
        let mut a = GeoPath::from_vertices(&p, &[0, 1], EdgeSource::Delaunay);
        let b = GeoPath::from_vertices(&p, &[1, 2], EdgeSource::Delaunay);
        a.append(&p, &b);
        assert_eq!(a.vertices(), &[0, 1, 2]);
        assert!((a.length() - 10.0).abs() < 1e-12);
        assert_eq!(a.l1_endpoints(), &Rational::from_int(6));
        assert_eq!(a.prefix(&p, 1).vertices(), &[0, 1]);
    }
}
