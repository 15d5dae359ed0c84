use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{euclid, PointSet};

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Reversed so the max-heap pops the nearest vertex, smaller id first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source Euclidean shortest paths. Unreached vertices get infinity.
pub fn dijkstra(points: &PointSet, adjacency: &[Vec<usize>], source: usize) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = adjacency.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry { dist: 0.0, vertex: source });
    while let Some(Entry { dist: d, vertex: v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &w in &adjacency[v] {
            let nd = d + euclid(&points[v], &points[w]);
            if nd < dist[w] {
                dist[w] = nd;
                prev[w] = Some(v);
                heap.push(Entry { dist: nd, vertex: w });
            }
        }
    }
    (dist, prev)
}

pub fn adjacency_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

#[derive(Clone, Debug, Serialize)]
pub struct RuntimeStats {
    pub sources: usize,
    pub pairs: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct StretchReport {
    pub max_ratio: f64,
    pub argmax_pair: (usize, usize),
    /// `per_pair_ratios[s][t]` for every ordered pair; 1 on the diagonal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_pair_ratios: Option<Vec<Vec<f64>>>,
    pub runtime_stats: RuntimeStats,
}

/// Maximum over unordered pairs of graph distance over Euclidean distance.
pub fn stretch_factor(points: &PointSet, edges: &[(usize, usize)]) -> Result<StretchReport> {
    stretch_factor_with(points, edges, false)
}

pub fn stretch_factor_with(points: &PointSet, edges: &[(usize, usize)], keep_table: bool) -> Result<StretchReport> {
    let start = Instant::now();
    let n = points.len();
    let adjacency = adjacency_from_edges(n, edges);
    let rows: Vec<Result<(f64, (usize, usize), Option<Vec<f64>>)>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let (dist, _) = dijkstra(points, &adjacency, s);
            let mut best = (1.0, (s, s));
            let mut table = keep_table.then(|| vec![1.0; n]);
            for t in 0..n {
                if t == s {
                    continue;
                }
                if !dist[t].is_finite() {
                    return Err(Error::Disconnected(s.min(t), s.max(t)));
                }
                let ratio = dist[t] / euclid(&points[s], &points[t]);
                if let Some(row) = table.as_mut() {
                    row[t] = ratio;
                }
                if t > s && (ratio > best.0 || best.1 == (s, s)) {
                    best = (ratio, (s, t));
                }
            }
            Ok((best.0, best.1, table))
        })
        .collect();
    let mut max_ratio = 1.0;
    let mut argmax = (0, 0);
    let mut table = keep_table.then(Vec::new);
    let mut first = true;
    for row in rows {
        let (ratio, pair, row_table) = row?;
        // Rows arrive in source order, so ties keep the smaller pair.
        if pair.0 != pair.1 && (first || ratio > max_ratio) {
            max_ratio = ratio;
            argmax = pair;
            first = false;
        }
        if let (Some(t), Some(r)) = (table.as_mut(), row_table) {
            t.push(r);
        }
    }
    Ok(StretchReport {
        max_ratio,
        argmax_pair: argmax,
        per_pair_ratios: table,
        runtime_stats: RuntimeStats {
            sources: n,
            pairs: n * n.saturating_sub(1) / 2,
            elapsed: start.elapsed(),
        },
    })
}

/// Graph distance between two vertices.
pub fn graph_distance(points: &PointSet, adjacency: &[Vec<usize>], s: usize, t: usize) -> f64 {
    dijkstra(points, adjacency, s).0[t]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    #[test]
    fn two_points() {
        let p = PointSet::new(vec![Point::int(0, 0), Point::int(1, 2)]).unwrap();
        let r = stretch_factor(&p, &[(0, 1)]).unwrap();
        assert_eq!(r.max_ratio, 1.0);
        assert_eq!(r.argmax_pair, (0, 1));
    }

    #[test]
    fn path_graph_closed_form() {
        // a and c share a y-coordinate; stretch does not need general position.
        let p = PointSet::new_unchecked(vec![
            Point::int(0, 0),
            Point::parse("1", "0.1").unwrap(),
            Point::int(2, 0),
        ]);
        let r = stretch_factor(&p, &[(0, 1), (1, 2)]).unwrap();
        let expected = 2.0 * (1.0f64 + 0.01).sqrt() / 2.0;
        assert!((r.max_ratio - expected).abs() < 1e-12);
        assert_eq!(r.argmax_pair, (0, 2));
    }

    #[test]
    fn disconnected() {
        let p = PointSet::new(vec![Point::int(0, 0), Point::int(1, 2), Point::int(3, 7)]).unwrap();
        assert!(matches!(stretch_factor(&p, &[(0, 1)]), Err(Error::Disconnected(0, 2))));
    }
}
