//! The one-empty-quadrant path, built by induction on the number of
//! protected points inside the rectangle spanned by `s` and `t`. Every claim
//! the induction relies on is checked as it is used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{above_minus, above_plus, l1, linf, quadrant, Frame, Point, PointSet};
use crate::path::{EdgeSource, GeoPath};
use crate::routing::light::{light_path_in, max1_walk_in, protected_in};
use crate::routing::{
    within, View, LIGHT_PATH_FACTOR, QUADRANT_BASE_FACTOR, QUADRANT_CASE22_FACTOR, QUADRANT_FACTOR,
};
use crate::theta::ConeGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadrantTag {
    Base,
    Case1,
    /// The light path from `s` reaches `t` on its own.
    Case2Light,
    Case21,
    Case22Direct,
    Case22Recurse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantCase {
    pub tag: QuadrantTag,
    pub recursion_depth: usize,
    /// Protected points strictly inside the rectangle at this level.
    pub k: usize,
    pub source: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantTrace {
    pub levels: Vec<QuadrantCase>,
}

impl QuadrantTrace {
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn initial_k(&self) -> usize {
        self.levels.first().map_or(0, |l| l.k)
    }
}

/// Path from `s` to `t` when `t ∈ C0(s)`, the top-right quadrant of S_t(s)
/// is empty and `s` is t-protected. The length is at most 18·L1(s, t).
pub fn one_empty_quadrant_path(
    points: &PointSet,
    graph: &ConeGraph,
    s: usize,
    t: usize,
) -> Result<(GeoPath, QuadrantTrace)> {
    let view = View::identity(points, graph);
    quadrant_path_in(&view, s, t)
}

pub(crate) fn quadrant_path_in(view: &View, s: usize, t: usize) -> Result<(GeoPath, QuadrantTrace)> {
    if let Some(reason) = precondition_failure(view, s, t) {
        return Err(Error::PreconditionViolated(reason));
    }
    let mut trace = QuadrantTrace::default();
    let path = recurse(view, s, t, 0, None, &mut trace)?;
    Ok((path, trace))
}

fn precondition_failure(view: &View, s: usize, t: usize) -> Option<String> {
    let (ps, pt) = (view.pos(s), view.pos(t));
    if s == t || ps.x == pt.x || ps.y == pt.y || quadrant(ps, pt) != 0 {
        return Some(format!("{t} is not in cone 0 of {s}"));
    }
    let h = linf(ps, pt);
    let (x1, y1) = (&pt.x + &h, &pt.y + &h);
    let blocker = (0..view.n()).find(|&v| {
        let p = view.pos(v);
        p.x > pt.x && p.x < x1 && p.y > pt.y && p.y < y1
    });
    if let Some(v) = blocker {
        return Some(format!("{v} lies in the top-right quadrant of S_t(s)"));
    }
    if !protected_in(view, s, pt) {
        return Some(format!("{s} is not {t}-protected"));
    }
    None
}

fn in_rect(p: &Point, ps: &Point, pt: &Point) -> bool {
    p.x > ps.x && p.x < pt.x && p.y > pt.y && p.y < ps.y
}

fn broken(msg: String) -> Error {
    Error::InvariantBroken(msg)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(broken(msg()))
    }
}

fn recurse(
    view: &View,
    s: usize,
    t: usize,
    depth: usize,
    parent_k: Option<usize>,
    trace: &mut QuadrantTrace,
) -> Result<GeoPath> {
    if depth > 0 {
        if let Some(reason) = precondition_failure(view, s, t) {
            return Err(broken(format!("recursive call at depth {depth}: {reason}")));
        }
    }
    let points = view.points();
    let ps = view.pos(s).clone();
    let pt = view.pos(t).clone();
    let l1_st = l1(&ps, &pt).to_f64();
    let protected_inside: Vec<usize> = (0..view.n())
        .filter(|&v| in_rect(view.pos(v), &ps, &pt) && protected_in(view, v, &pt))
        .collect();
    let k = protected_inside.len();
    if let Some(pk) = parent_k {
        check(k < pk, || format!("k did not decrease: {k} >= {pk}"))?;
    }
    let level = trace.levels.len();
    trace.levels.push(QuadrantCase { tag: QuadrantTag::Base, recursion_depth: depth, k, source: s });
    let set_tag = |trace: &mut QuadrantTrace, tag| trace.levels[level].tag = tag;

    let z0 = view
        .neighbor(s, 0)
        .ok_or(Error::MissingEdge { vertex: s, cone: 0 })?;
    let p0 = view.pos(z0).clone();

    let path = if k == 0 {
        let stray = (0..view.n()).find(|&v| in_rect(view.pos(v), &ps, &pt));
        check(stray.is_none(), || format!("k = 0 but {stray:?} lies inside R"))?;
        let mut path = GeoPath::single(s);
        path.push(points, z0, Some(0), EdgeSource::QuadrantBase);
        if z0 != t {
            check(p0.y < pt.y && above_plus(&p0, &pt), || {
                format!("base case: n0({s}) = {z0} is not below t and above l+")
            })?;
            let rotated = view.then(&Frame::new(1, false, &pt));
            check(protected_in(&rotated, z0, &pt), || {
                format!("base case: {z0} is not protected after rotation")
            })?;
            let rest = light_path_in(&rotated, z0, t, EdgeSource::QuadrantBase)?;
            check(rest.end() == t, || format!("base case: rotated light path stops at {}", rest.end()))?;
            path.append(points, &rest);
        }
        check(within(path.length(), QUADRANT_BASE_FACTOR, l1_st), || {
            format!("base case length {} exceeds 7 L1 = {}", path.length(), 7.0 * l1_st)
        })?;
        path
    } else if in_rect(&p0, &ps, &pt) {
        set_tag(trace, QuadrantTag::Case1);
        let mut prefix = GeoPath::single(s);
        prefix.push(points, z0, Some(0), EdgeSource::QuadrantCase1);
        if !above_minus(&p0, &pt) {
            let walk = max1_walk_in(view, z0, &pt, EdgeSource::QuadrantCase1);
            prefix.append(points, &walk);
            let w = prefix.end();
            // The same prefix is what the light-path walk produces toward w.
            let direct = light_path_in(view, s, w, EdgeSource::LightPath)?;
            check(direct.vertices() == prefix.vertices(), || {
                format!("case 1: light path {s}->{w} differs from the max1 prefix")
            })?;
        }
        let w = prefix.end();
        let pw = view.pos(w).clone();
        check(in_rect(&pw, &ps, &pt), || format!("case 1: {w} is not inside R"))?;
        check(within(prefix.length(), LIGHT_PATH_FACTOR, l1(&ps, &pw).to_f64()), || {
            format!("case 1: prefix exceeds 3 L1(s, w)")
        })?;
        let rest = recurse(view, w, t, depth + 1, Some(k), trace)?;
        prefix.append(points, &rest);
        prefix
    } else {
        check(p0.y < pt.y, || format!("case 2: n0({s}) = {z0} is not below t"))?;
        let phi = light_path_in(view, s, t, EdgeSource::QuadrantCase21)?;
        if phi.end() == t {
            set_tag(trace, QuadrantTag::Case2Light);
            let mut phi = phi;
            phi.retag(EdgeSource::QuadrantCase2Light);
            check(within(phi.length(), LIGHT_PATH_FACTOR, l1_st), || {
                format!("case 2: light path exceeds 3 L1(s, t)")
            })?;
            phi
        } else {
            let z = phi.end();
            let pz = view.pos(z).clone();
            let h = linf(&ps, &pt);
            check(
                pz.x > pt.x && pz.y < pt.y && &pz.x - &pt.x <= h && &pt.y - &pz.y <= h,
                || format!("case 2: light path ends at {z} outside the bottom-right quadrant"),
            )?;
            let inside = phi.vertices()[1..].iter().any(|&v| in_rect(view.pos(v), &ps, &pt));
            if inside {
                set_tag(trace, QuadrantTag::Case21);
                let idx = phi.vertices()[1..]
                    .iter()
                    .position(|&v| protected_in(view, v, &pt))
                    .map(|i| i + 1)
                    .expect("the endpoint is protected");
                let w = phi.vertices()[idx];
                let pw = view.pos(w).clone();
                check(in_rect(&pw, &ps, &pt), || format!("case 2.1: {w} is not inside R"))?;
                let mut prefix = phi.prefix(points, idx);
                check(within(prefix.length(), LIGHT_PATH_FACTOR, l1(&ps, &pw).to_f64()), || {
                    format!("case 2.1: prefix exceeds 3 L1(s, w)")
                })?;
                let rest = recurse(view, w, t, depth + 1, Some(k), trace)?;
                prefix.append(points, &rest);
                prefix
            } else {
                let ones = phi.edges()[1..].iter().all(|e| e.canonical_cone == Some(1));
                check(ones, || format!("case 2.2: path after n0({s}) is not all 1-edges"))?;
                let mut phi = phi;
                phi.retag(EdgeSource::QuadrantCase22);
                let reflected = view.then(&Frame::new(0, true, &pt));
                check(protected_in(&reflected, z, &pt), || {
                    format!("case 2.2: {z} is not protected after reflection")
                })?;
                let gamma = light_path_in(&reflected, z, t, EdgeSource::QuadrantCase22)?;
                phi.append(points, &gamma);
                check(within(phi.length(), QUADRANT_CASE22_FACTOR, l1_st), || {
                    format!("case 2.2: length {} exceeds 9 L1(s, t)", phi.length())
                })?;
                let w = gamma.end();
                if w == t {
                    set_tag(trace, QuadrantTag::Case22Direct);
                    phi
                } else {
                    set_tag(trace, QuadrantTag::Case22Recurse);
                    let pw = view.pos(w).clone();
                    check(in_rect(&pw, &ps, &pt), || format!("case 2.2: {w} is not inside R"))?;
                    check(pw.sum() < pt.sum(), || format!("case 2.2: {w} is not below l-"))?;
                    let l1_sw = l1(&ps, &pw);
                    check(l1(&ps, &pt) <= &l1_sw + &l1_sw, || {
                        format!("case 2.2: {w} is not below rho (L1(s,t) > 2 L1(s,w))")
                    })?;
                    let rest = recurse(view, w, t, depth + 1, Some(k), trace)?;
                    phi.append(points, &rest);
                    phi
                }
            }
        }
    };
    check(path.end() == t, || format!("path from {s} ends at {}", path.end()))?;
    check(within(path.length(), QUADRANT_FACTOR, l1_st), || {
        format!("length {} exceeds 18 L1(s, t) = {}", path.length(), 18.0 * l1_st)
    })?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::build_theta_graph;

    fn set(pts: &[(i64, i64)]) -> PointSet {
        PointSet::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    #[test]
    fn direct_edge() {
        let p = set(&[(-1, 2), (0, 0)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let (path, trace) = one_empty_quadrant_path(&p, &g, 0, 1).unwrap();
        assert_eq!(path.vertices(), &[0, 1]);
        assert_eq!(trace.levels[0].tag, QuadrantTag::Base);
        assert!((path.length() - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn base_case_with_rotation() {
        // z = (-2, -1) sits below t and above l+, closer to s than t is, so
        // n0(s) = z and the rest is routed in the rotated frame.
        let p = set(&[(-4, 3), (0, 0), (-2, -1)]);
        let g = build_theta_graph(&p, 4).unwrap();
        assert_eq!(g.neighbor(0, 0), Some(2));
        let (path, trace) = one_empty_quadrant_path(&p, &g, 0, 1).unwrap();
        assert_eq!(path.vertices(), &[0, 2, 1]);
        assert_eq!(trace.levels.len(), 1);
        assert_eq!(trace.levels[0].k, 0);
        assert!(path.length() <= 7.0 * 7.0);
    }

    #[test]
    fn rejects_bad_preconditions() {
        let p = set(&[(-4, 3), (0, 0), (2, 1)]);
        let g = build_theta_graph(&p, 4).unwrap();
        // (2, 1) is in the top-right quadrant of S_t(s).
        assert!(matches!(
            one_empty_quadrant_path(&p, &g, 0, 1),
            Err(Error::PreconditionViolated(_))
        ));
        // t not in cone 0 of s.
        assert!(matches!(
            one_empty_quadrant_path(&p, &g, 1, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn case_22_recursion() {
        // s = 0, t = 1. The light-path walk runs s -> a -> b -> z below R; the light
        // path from z in the reflected frame goes z -> c -> w with w inside
        // R, below l- and below rho; w then reaches t directly.
        let p = set(&[(-200, 80), (0, 0), (-180, -40), (-6, -38), (20, -24), (-10, -20), (-8, 5)]);
        let g = build_theta_graph(&p, 4).unwrap();
        let (path, trace) = one_empty_quadrant_path(&p, &g, 0, 1).unwrap();
        assert_eq!(path.vertices(), &[0, 2, 3, 4, 5, 6, 1]);
        let tags: Vec<_> = trace.levels.iter().map(|l| (l.tag, l.k)).collect();
        assert_eq!(tags, vec![(QuadrantTag::Case22Recurse, 1), (QuadrantTag::Base, 0)]);
        assert!(path.length() <= QUADRANT_FACTOR * 280.0);
    }

    #[test]
    fn cases_found_in_clustered_sets() {
        use crate::gen::clustered;
        for (n, seed, s, t, tag) in [(28, 138, 5, 12, QuadrantTag::Case21), (36, 26, 33, 27, QuadrantTag::Case22Direct)] {
            let p = clustered(n, seed);
            let g = build_theta_graph(&p, 4).unwrap();
            let (path, trace) = one_empty_quadrant_path(&p, &g, s, t).unwrap();
            assert!(trace.levels.iter().any(|l| l.tag == tag));
            assert_eq!((path.start(), path.end()), (s, t));
        }
    }
}
