//! A θ₄ point set whose stretch factor approaches 7.
//!
//! Start from `u` and `w ∈ C2(u)` with nearly equal x-coordinates. Repeatedly
//! break the current shortest `u`-`w` path by putting a point just inside
//! the far corner of an empty triangle of one of its edges. After four rounds
//! the path `u v1 v2 v3 v4 w` has length close to `7|uw|`.
//!
//! Canonical coordinates put `u` at the origin and `w` at `(-η, 1)`. With
//! `g = ε / 144` the corner offsets are `9g, 10g, ..., 15g` (so `δ = 9g`)
//! and `η = 72g`. Every point except `u` and `w` has a mirror image under
//! `(x, y) -> (-η - x, 1 - y)`, which fixes the pair `{u, w}`. The corner
//! points added in the last round block shortcuts along the outer face;
//! `v4` sits one offset above `w` so `u` has no edge to it.

use crate::error::{Error, Result};
use crate::geom::{euclid, find_degenerate_pair, l1, quadrant, Point, PointSet};
use crate::rational::Rational;
use crate::theta::build_theta_graph;

#[derive(Clone, Debug)]
pub struct LowerBoundInstance {
    pub epsilon: Rational,
    pub scale: Rational,
    pub points: PointSet,
    pub names: Vec<String>,
    pub u: usize,
    pub w: usize,
    pub v: [usize; 4],
}

impl LowerBoundInstance {
    pub fn role(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The path `u v1 v2 v3 v4 w`.
    pub fn long_path(&self) -> [usize; 6] {
        [self.u, self.v[0], self.v[1], self.v[2], self.v[3], self.w]
    }
}

/// Relative offsets beyond which the construction is not attempted.
const MAX_RELATIVE_EPSILON: (i64, i64) = (1, 20);

/// Nominal lengths of the long path's edges, in units of |uw|.
pub const LONG_PATH_NOMINAL: [f64; 5] = [1.0, 2.0, 2.0, 1.0, 1.0];

/// Builds the instance for offset `epsilon` at scale `scale`. All canonical
/// coordinates are multiplied by `scale`, so `|uw| = scale·√(1 + η²)`.
pub fn lower_bound_instance(epsilon: &Rational, scale: &Rational) -> Result<LowerBoundInstance> {
    if !epsilon.is_positive() || !scale.is_positive() {
        return Err(Error::ConstraintUnsatisfiable("epsilon and scale must be positive".into()));
    }
    let rel = epsilon / scale;
    if rel > Rational::new(MAX_RELATIVE_EPSILON.0, MAX_RELATIVE_EPSILON.1) {
        return Err(Error::ConstraintUnsatisfiable(format!(
            "epsilon/scale = {rel} exceeds {}/{}",
            MAX_RELATIVE_EPSILON.0, MAX_RELATIVE_EPSILON.1
        )));
    }
    let (canonical, names) = canonical_points(&rel);
    let pts: Vec<Point> = canonical
        .into_iter()
        .map(|p| Point::new(&p.x * scale, &p.y * scale))
        .collect();
    if let Some((a, b, d)) = find_degenerate_pair(&pts) {
        return Err(Error::ConstraintUnsatisfiable(format!(
            "{} and {} share {d}",
            names[a], names[b]
        )));
    }
    let points = PointSet::new_unchecked(pts);
    let idx = |n: &str| names.iter().position(|x| x == n).unwrap();
    let inst = LowerBoundInstance {
        epsilon: epsilon.clone(),
        scale: scale.clone(),
        u: idx("u"),
        w: idx("w"),
        v: [idx("v1"), idx("v2"), idx("v3"), idx("v4")],
        points,
        names,
    };
    if let Some(problem) = instance_violation(&inst) {
        return Err(Error::ConstraintUnsatisfiable(problem));
    }
    Ok(inst)
}

/// Checks the combinatorial claims about the instance: the long path is in
/// the θ₄-graph with edges near their nominal lengths, and neither `uw` nor
/// `uv4` is an edge.
pub fn instance_violation(inst: &LowerBoundInstance) -> Option<String> {
    let g = match build_theta_graph(&inst.points, 4) {
        Ok(g) => g,
        Err(e) => return Some(e.to_string()),
    };
    let p = &inst.points;
    let uw = euclid(&p[inst.u], &p[inst.w]);
    let eps = inst.epsilon.to_f64();
    let path = inst.long_path();
    for (i, w) in path.windows(2).enumerate() {
        if !g.has_edge(w[0], w[1]) {
            return Some(format!("missing edge {}-{}", inst.names[w[0]], inst.names[w[1]]));
        }
        let len = euclid(&p[w[0]], &p[w[1]]);
        if (len - LONG_PATH_NOMINAL[i] * uw).abs() > 2.0 * eps {
            return Some(format!(
                "edge {}-{} has length {len}, nominal {}",
                inst.names[w[0]],
                inst.names[w[1]],
                LONG_PATH_NOMINAL[i] * uw
            ));
        }
    }
    if g.has_edge(inst.u, inst.w) {
        return Some("u-w is an edge".into());
    }
    if g.has_edge(inst.u, inst.v[3]) {
        return Some("u-v4 is an edge".into());
    }
    None
}

/// Leg directions of each cone, as in the empty triangles.
const LEGS: [[(i64, i64); 2]; 4] = [
    [(1, 0), (0, -1)],
    [(1, 0), (0, 1)],
    [(-1, 0), (0, 1)],
    [(-1, 0), (0, -1)],
];

fn canonical_points(eps: &Rational) -> (Vec<Point>, Vec<String>) {
    let g = eps / &Rational::from_int(144);
    let gm = |k: i64| &g * &Rational::from_int(k);
    let eta = gm(72);
    let mut pts = vec![Point::int(0, 0), Point::new(-&eta, Rational::one())];
    let mut names: Vec<String> = vec!["u".into(), "w".into()];
    // Center of the mirror symmetry; "far" corners are far from it.
    let center = Point::new(-&eta.half(), Rational::new(1, 2));

    // A point inside the empty triangle of `from` toward `to`, `off` in from
    // both legs near the corner farther from the center.
    let place = |pts: &mut Vec<Point>, names: &mut Vec<String>, from: usize, to: usize, off: usize, name: &str| {
        let (a, b) = (pts[from].clone(), pts[to].clone());
        let leg = l1(&a, &b);
        let [e1, e2] = LEGS[quadrant(&a, &b)];
        let corner = |(dx, dy): (i64, i64)| {
            Point::new(&a.x + &(&leg * &Rational::from_int(dx)), &a.y + &(&leg * &Rational::from_int(dy)))
        };
        let sq = |p: &Point| {
            let dx = &p.x - &center.x;
            let dy = &p.y - &center.y;
            &dx * &dx + &dy * &dy
        };
        let (far, near) = if sq(&corner(e1)) >= sq(&corner(e2)) { (e1, e2) } else { (e2, e1) };
        let d = gm(off as i64);
        let along = &leg - &(&d + &d);
        let p = Point::new(
            &a.x + &(&along * &Rational::from_int(far.0)) + &d * &Rational::from_int(near.0),
            &a.y + &(&along * &Rational::from_int(far.1)) + &d * &Rational::from_int(near.1),
        );
        pts.push(p);
        names.push(name.into());
        pts.len() - 1
    };
    let (u, w) = (0, 1);
    let v1 = place(&mut pts, &mut names, u, w, 9, "v1");
    let v2 = place(&mut pts, &mut names, v1, w, 10, "v2");
    let a2 = place(&mut pts, &mut names, w, v1, 11, "a2");
    let v3 = place(&mut pts, &mut names, v2, w, 12, "v3");
    let b3 = place(&mut pts, &mut names, w, v2, 13, "b3");
    let c3 = place(&mut pts, &mut names, a2, v1, 14, "c3");
    let e3 = place(&mut pts, &mut names, v1, a2, 15, "e3");

    // Last round: one point between v3 and w, and outer corner points.
    let d = gm(9);
    let k = |m: i64| &d * &Rational::from_int(m);
    let x = |i: usize| pts[i].x.clone();
    let y = |i: usize| pts[i].y.clone();
    let last = [
        ("v4", Point::new(x(v3) - k(3), Rational::one() + k(16))),
        ("f_b", Point::new(x(v2) + k(5), y(b3) - k(2))),
        ("f_e", Point::new(x(e3) + k(2), y(a2) - k(5))),
        ("f_c", Point::new(x(v1) - k(16), y(c3) + k(3))),
        ("f_va", Point::new(x(a2) + k(6), y(v2) - gm(3))),
    ];
    for (name, p) in last {
        pts.push(p);
        names.push(name.into());
    }
    let originals = pts.len();
    for i in 2..originals {
        let p = &pts[i];
        let m = Point::new(-&eta - &p.x, Rational::one() - &p.y);
        pts.push(m);
        names.push(format!("{}'", names[i]));
    }
    debug_assert_eq!(pts.len(), 26);
    (pts, names)
}
