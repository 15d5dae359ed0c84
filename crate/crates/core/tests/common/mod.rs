//! Brute-force oracles written against the definitions, sharing nothing with
//! the library beyond `Point` and `Rational`.
#![allow(dead_code)]

use std::collections::BTreeSet;

use theta4::{Point, PointSet, Rational};

fn r(v: i64) -> Rational {
    Rational::from_int(v)
}

/// θ₄ by definition: in each open quadrant pick the point whose projection
/// on the quadrant's bisector is smallest. Cones are numbered from the
/// bottom-right quadrant counter-clockwise.
pub fn theta4_edges(points: &PointSet) -> BTreeSet<(usize, usize)> {
    // Bisector directions (unnormalized) per cone.
    let bisectors = [(1, -1), (1, 1), (-1, 1), (-1, -1)];
    let mut edges = BTreeSet::new();
    for p in 0..points.len() {
        for (c, &(bx, by)) in bisectors.iter().enumerate() {
            let mut best: Option<(Rational, usize)> = None;
            for q in 0..points.len() {
                if q == p {
                    continue;
                }
                let dx = &points[q].x - &points[p].x;
                let dy = &points[q].y - &points[p].y;
                let inside = match c {
                    0 => dx.is_positive() && dy.is_negative(),
                    1 => dx.is_positive() && dy.is_positive(),
                    2 => dx.is_negative() && dy.is_positive(),
                    _ => dx.is_negative() && dy.is_negative(),
                };
                if !inside {
                    continue;
                }
                let proj = &dx * &r(bx) + &dy * &r(by);
                if best.as_ref().is_none_or(|(b, _)| proj < *b) {
                    best = Some((proj, q));
                }
            }
            if let Some((_, q)) = best {
                edges.insert((p.min(q), p.max(q)));
            }
        }
    }
    edges
}

/// Closed square `[x0, x0 + side] x [y0, y0 + side]`.
#[derive(Clone, Debug)]
pub struct Sq {
    pub x0: Rational,
    pub y0: Rational,
    pub side: Rational,
}

impl Sq {
    fn x1(&self) -> Rational {
        &self.x0 + &self.side
    }

    fn y1(&self) -> Rational {
        &self.y0 + &self.side
    }

    pub fn strictly_inside(&self, p: &Point) -> bool {
        p.x > self.x0 && p.x < self.x1() && p.y > self.y0 && p.y < self.y1()
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        let inx = p.x >= self.x0 && p.x <= self.x1();
        let iny = p.y >= self.y0 && p.y <= self.y1();
        inx && iny && !self.strictly_inside(p)
    }
}

/// Squares from the finite family fixed by `a`, `b` and one more point:
/// side lengths are coordinate differences and corners sit at coordinates
/// of the three points, shifted by the side. Every "critical" square, one
/// that cannot be shrunk or slid without losing a boundary point, is in
/// this family.
fn critical_squares(a: &Point, b: &Point, third: Option<&Point>) -> Vec<Sq> {
    let mut pts = vec![a, b];
    pts.extend(third);
    let mut sides: Vec<Rational> = Vec::new();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            sides.push((&pts[i].x - &pts[j].x).abs());
            sides.push((&pts[i].y - &pts[j].y).abs());
        }
    }
    sides.retain(|s| s.is_positive());
    sides.sort();
    sides.dedup();
    let mut out = Vec::new();
    for side in &sides {
        let mut x0s: Vec<Rational> = Vec::new();
        let mut y0s: Vec<Rational> = Vec::new();
        for p in &pts {
            x0s.push(p.x.clone());
            x0s.push(&p.x - side);
            y0s.push(p.y.clone());
            y0s.push(&p.y - side);
        }
        for x0 in &x0s {
            for y0 in &y0s {
                let sq = Sq { x0: x0.clone(), y0: y0.clone(), side: side.clone() };
                if pts.iter().all(|p| sq.on_boundary(p)) {
                    out.push(sq);
                }
            }
        }
    }
    out
}

/// L∞-Delaunay edges: pairs with some empty critical square on whose
/// boundary both lie.
pub fn linf_edges(points: &PointSet) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut cands = critical_squares(&points[a], &points[b], None);
            for c in 0..n {
                if c != a && c != b {
                    cands.extend(critical_squares(&points[a], &points[b], Some(&points[c])));
                }
            }
            let empty = |sq: &Sq| (0..n).all(|v| !sq.strictly_inside(&points[v]));
            if cands.iter().any(empty) {
                edges.insert((a, b));
            }
        }
    }
    edges
}

/// Stretch factor by enumerating every simple path between every pair.
pub fn simple_path_stretch(points: &PointSet, edges: &[(usize, usize)]) -> f64 {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let d = |a: usize, b: usize| {
        let (ax, ay) = points[a].to_f64();
        let (bx, by) = points[b].to_f64();
        (ax - bx).hypot(ay - by)
    };
    fn walk(
        v: usize,
        t: usize,
        len: f64,
        seen: &mut Vec<bool>,
        adj: &[Vec<usize>],
        d: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        if v == t {
            *best = best.min(len);
            return;
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                walk(w, t, len + d(v, w), seen, adj, d, best);
                seen[w] = false;
            }
        }
    }
    let mut worst = 1.0f64;
    for s in 0..n {
        for t in s + 1..n {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut best = f64::INFINITY;
            walk(s, t, 0.0, &mut seen, &adj, &d, &mut best);
            worst = worst.max(best / d(s, t));
        }
    }
    worst
}

/// Integer points in general position drawn from a simple LCG, so the
/// oracles do not depend on the library's generator.
pub fn lcg_points(n: usize, seed: u64, range: i64) -> PointSet {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) as i64).rem_euclid(range)
    };
    let mut pts: Vec<(i64, i64)> = Vec::new();
    while pts.len() < n {
        let (x, y) = (next(), next());
        if pts.iter().all(|&(a, b)| a != x && b != y && a + b != x + y && a - b != x - y) {
            pts.push((x, y));
        }
    }
    PointSet::new(pts.into_iter().map(|(x, y)| Point::int(x, y)).collect()).unwrap()
}
