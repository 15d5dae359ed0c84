//! Bound and invariant sweeps over seeded random corpora.
//!
//! Every check returns a [`CheckOutcome`]; [`verify_suite`] wraps them into
//! one JSON-lines record per (instance, check). Failing records carry the
//! full point set so the instance can be replayed.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::lower_bound::{lower_bound_instance, LONG_PATH_NOMINAL};
use crate::analysis::stretch::{adjacency_from_edges, dijkstra, stretch_factor};
use crate::error::Error;
use crate::gen::{generate, rng_from_seed, Distribution2d};
use crate::geom::{euclid, l1, quadrant, PointSet};
use crate::io::points_to_json;
use crate::linf::{build_linf_delaunay, Triangulation};
use crate::path::GeoPath;
use crate::rational::Rational;
use crate::routing::{
    algorithm1_light_path, check_light_path, delaunay_edge_route, one_empty_quadrant_path, spanner_path,
    EdgeRouteKind, DELAUNAY_STRETCH, LEMMA2_FACTOR, LEMMA3_FACTOR, QUADRANT_FACTOR, SPANNER_THRESHOLD,
};
use crate::theta::{build_theta_graph, empty_triangle, ConeGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theta,
    Linfdt,
    Light,
    Quadrant,
    Lemma,
    Spanner,
    Lowerbound,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Theta,
        Suite::Linfdt,
        Suite::Light,
        Suite::Quadrant,
        Suite::Lemma,
        Suite::Spanner,
        Suite::Lowerbound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theta => "theta",
            Suite::Linfdt => "linfdt",
            Suite::Light => "light",
            Suite::Quadrant => "quadrant",
            Suite::Lemma => "lemma",
            Suite::Spanner => "spanner",
            Suite::Lowerbound => "lowerbound",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub suites: Vec<Suite>,
    pub seeds: Vec<u64>,
    pub n: usize,
    pub distribution: Distribution2d,
    /// Sampled (s, t) pairs per instance for the spanner check.
    pub pairs_per_set: usize,
    /// Offsets, relative to |uw|, for the lower-bound family.
    pub lower_bound_epsilons: Vec<Rational>,
    pub tolerance: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            suites: Suite::ALL.to_vec(),
            seeds: Vec::new(),
            n: 100,
            distribution: Distribution2d::Uniform,
            pairs_per_set: 10,
            lower_bound_epsilons: Vec::new(),
            tolerance: crate::routing::TOLERANCE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub instance_seed: Option<u64>,
    pub check: &'static str,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, Default)]
pub struct CheckOutcome {
    pub cases: usize,
    pub violations: Vec<String>,
    /// Largest observed length over its bound's base quantity.
    pub max_ratio: f64,
}

impl CheckOutcome {
    fn ratio(&mut self, r: f64) {
        if r > self.max_ratio {
            self.max_ratio = r;
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Path violations: wrong endpoints, or consecutive vertices that are not
/// adjacent in `graph`.
pub fn graph_path_problems(graph: &ConeGraph, path: &GeoPath, s: usize, t: usize) -> Option<String> {
    if path.start() != s || path.end() != t {
        return Some(format!("path runs {}->{} instead of {s}->{t}", path.start(), path.end()));
    }
    path.vertices()
        .windows(2)
        .find(|w| !graph.has_edge(w[0], w[1]))
        .map(|w| format!("{}-{} is not a graph edge", w[0], w[1]))
}

/// Every out-neighbor lies in its cone with an empty triangle, and every
/// missing neighbor has an empty cone.
pub fn check_theta(points: &PointSet, graph: &ConeGraph) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for p in 0..points.len() {
        for cone in 0..4 {
            out.cases += 1;
            match graph.neighbor(p, cone) {
                Some(q) => {
                    if quadrant(&points[p], &points[q]) != cone {
                        out.violations.push(format!("n{cone}({p}) = {q} is outside the cone"));
                        continue;
                    }
                    let tri = empty_triangle(points, graph, p, cone).expect("neighbor exists");
                    if let Some(v) = tri.interior_points(points).first() {
                        out.violations.push(format!("triangle {cone} of {p} contains {v}"));
                    }
                }
                None => {
                    if let Some(v) = (0..points.len()).find(|&v| v != p && quadrant(&points[p], &points[v]) == cone) {
                        out.violations.push(format!("cone {cone} of {p} holds {v} but has no edge"));
                    }
                }
            }
        }
    }
    out
}

/// Witness squares are empty with their points on the boundary, and the
/// triangulation's stretch stays under √(4 + 2√2).
pub fn check_linf(points: &PointSet, tri: &Triangulation, tolerance: f64) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    let empty = |sq: &crate::geom::Square| (0..points.len()).find(|&v| sq.contains_interior(&points[v]));
    for (t, sq) in tri.triangles().iter().zip(tri.triangle_witnesses()) {
        out.cases += 1;
        if let Some(v) = empty(sq) {
            out.violations.push(format!("triangle {t:?}: witness contains {v}"));
        }
        if let Some(v) = t.iter().find(|&&v| !sq.on_boundary(&points[v])) {
            out.violations.push(format!("triangle {t:?}: {v} is off the witness boundary"));
        }
    }
    for (&(a, b), sq) in tri.edges().iter().zip(tri.edge_witnesses()) {
        out.cases += 1;
        if let Some(v) = empty(sq) {
            out.violations.push(format!("edge {a}-{b}: witness contains {v}"));
        }
        if !sq.on_boundary(&points[a]) || !sq.on_boundary(&points[b]) {
            out.violations.push(format!("edge {a}-{b}: endpoint off the witness boundary"));
        }
    }
    if points.len() >= 2 {
        match stretch_factor(points, tri.edges()) {
            Ok(r) => {
                out.ratio(r.max_ratio);
                if r.max_ratio > DELAUNAY_STRETCH * (1.0 + tolerance) {
                    out.violations.push(format!("Delaunay stretch {} at {:?}", r.max_ratio, r.argmax_pair));
                }
            }
            Err(e) => out.violations.push(e.to_string()),
        }
    }
    out
}

/// Runs the light-path walk on every pair with `s` strictly left of `t` and checks
/// the structural properties; `max_ratio` tracks length over L1 for
/// protected sources.
pub fn check_light(points: &PointSet, graph: &ConeGraph) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for s in 0..points.len() {
        for t in 0..points.len() {
            if points[s].x >= points[t].x {
                continue;
            }
            out.cases += 1;
            match algorithm1_light_path(points, graph, s, t) {
                Ok(path) => {
                    let problems = check_light_path(points, graph, &path, t);
                    for p in problems {
                        out.violations.push(format!("{s}->{t}: {p}"));
                    }
                    let ctx = crate::routing::ProtectionContext::new(&points[t]);
                    if crate::routing::is_protected(points, graph, s, &ctx) {
                        out.ratio(path.length() / l1(&points[s], &points[t]).to_f64());
                    }
                }
                Err(e) => out.violations.push(format!("{s}->{t}: {e}")),
            }
        }
    }
    out
}

/// Runs the one-empty-quadrant construction on every ordered pair meeting
/// its precondition. `cases` counts accepted pairs.
pub fn check_quadrant(points: &PointSet, graph: &ConeGraph, tolerance: f64) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for s in 0..points.len() {
        for t in 0..points.len() {
            if s == t {
                continue;
            }
            match one_empty_quadrant_path(points, graph, s, t) {
                Ok((path, trace)) => {
                    out.cases += 1;
                    let base = l1(&points[s], &points[t]).to_f64();
                    out.ratio(path.length() / base);
                    if let Some(p) = graph_path_problems(graph, &path, s, t) {
                        out.violations.push(format!("{s}->{t}: {p}"));
                    }
                    if path.length() > QUADRANT_FACTOR * base * (1.0 + tolerance) {
                        out.violations.push(format!("{s}->{t}: length {} > 18 L1", path.length()));
                    }
                    if trace.depth() > trace.initial_k() {
                        out.violations.push(format!(
                            "{s}->{t}: depth {} exceeds k = {}",
                            trace.depth(),
                            trace.initial_k()
                        ));
                    }
                    if trace.levels.windows(2).any(|w| w[1].k >= w[0].k) {
                        out.violations.push(format!("{s}->{t}: k does not decrease"));
                    }
                }
                Err(Error::PreconditionViolated(_)) => {}
                Err(e) => out.violations.push(format!("{s}->{t}: {e}")),
            }
        }
    }
    out
}

/// Routes every triangulation edge through the θ₄-graph. `max_ratio` is the
/// worst length over |ab| for either kind.
pub fn check_lemmas(points: &PointSet, graph: &ConeGraph, tri: &Triangulation, tolerance: f64) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for &(a, b) in tri.edges() {
        for (x, y) in [(a, b), (b, a)] {
            out.cases += 1;
            match delaunay_edge_route(points, graph, tri, x, y) {
                Ok((path, kind)) => {
                    let ab = euclid(&points[x], &points[y]);
                    out.ratio(path.length() / ab);
                    if let Some(p) = graph_path_problems(graph, &path, x, y) {
                        out.violations.push(format!("{x}->{y}: {p}"));
                    }
                    let factor = match kind {
                        EdgeRouteKind::Consecutive => LEMMA2_FACTOR,
                        EdgeRouteKind::Opposite { .. } => LEMMA3_FACTOR,
                    };
                    if path.length() > factor * ab * (1.0 + tolerance) {
                        out.violations.push(format!("{x}->{y}: {kind:?} length {} > {factor}|ab|", path.length()));
                    }
                }
                Err(e) => out.violations.push(format!("{x}->{y}: {e}")),
            }
        }
    }
    out
}

/// Spanner paths for the given pairs, plus the θ₄-graph's exact stretch.
pub fn check_spanner(
    points: &PointSet,
    graph: &ConeGraph,
    tri: &Triangulation,
    pairs: &[(usize, usize)],
    tolerance: f64,
) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    let adjacency = adjacency_from_edges(points.len(), graph.edges());
    for &(s, t) in pairs {
        out.cases += 1;
        match spanner_path(points, graph, tri, s, t) {
            Ok(path) => {
                let st = euclid(&points[s], &points[t]);
                out.ratio(path.length() / st);
                if let Some(p) = graph_path_problems(graph, &path, s, t) {
                    out.violations.push(format!("{s}->{t}: {p}"));
                }
                if path.length() > SPANNER_THRESHOLD * st * (1.0 + tolerance) {
                    out.violations.push(format!("{s}->{t}: length {} > 236.07|st|", path.length()));
                }
                let shortest = dijkstra(points, &adjacency, s).0[t];
                if path.length() < shortest * (1.0 - tolerance) {
                    out.violations.push(format!("{s}->{t}: shorter than the graph distance {shortest}"));
                }
            }
            Err(e) => out.violations.push(format!("{s}->{t}: {e}")),
        }
    }
    if points.len() >= 2 {
        match stretch_factor(points, graph.edges()) {
            Ok(r) if r.max_ratio > SPANNER_THRESHOLD * (1.0 + tolerance) => {
                out.violations.push(format!("graph stretch {} at {:?}", r.max_ratio, r.argmax_pair));
            }
            Ok(_) => {}
            Err(e) => out.violations.push(e.to_string()),
        }
    }
    out
}

/// Instance invariants and the stretch window `[7 - 5ε/|uw|, 7]`.
pub fn check_lower_bound(epsilon: &Rational, tolerance: f64) -> CheckOutcome {
    let mut out = CheckOutcome { cases: 1, ..Default::default() };
    let inst = match lower_bound_instance(epsilon, &Rational::one()) {
        Ok(i) => i,
        Err(e) => {
            out.violations.push(e.to_string());
            return out;
        }
    };
    let g = match build_theta_graph(&inst.points, 4) {
        Ok(g) => g,
        Err(e) => {
            out.violations.push(e.to_string());
            return out;
        }
    };
    match stretch_factor(&inst.points, g.edges()) {
        Ok(r) => {
            out.max_ratio = r.max_ratio;
            let eps = epsilon.to_f64();
            let uw = euclid(&inst.points[inst.u], &inst.points[inst.w]);
            let nominal: f64 = LONG_PATH_NOMINAL.iter().sum();
            let floor = nominal - LONG_PATH_NOMINAL.len() as f64 * eps / uw;
            if r.max_ratio < floor || r.max_ratio > nominal * (1.0 + tolerance) {
                out.violations.push(format!("stretch {} outside [{floor}, {nominal}]", r.max_ratio));
            }
        }
        Err(e) => out.violations.push(e.to_string()),
    }
    out
}

/// Uniformly sampled ordered pairs with `s != t`.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let mut rng = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|_| {
            let s = rng.random_range(0..n);
            let t = (s + rng.random_range(1..n)) % n;
            (s, t)
        })
        .collect()
}

fn record(suite: Suite, seed: Option<u64>, check: &'static str, outcome: CheckOutcome, points: Option<&PointSet>) -> Record {
    let status = if outcome.passed() { Status::Pass } else { Status::Fail };
    let mut witness = json!({ "cases": outcome.cases, "max_ratio": outcome.max_ratio });
    if !outcome.passed() {
        witness["violations"] = json!(outcome.violations);
        if let Some(p) = points {
            witness["instance"] = serde_json::from_str(&points_to_json(p)).expect("valid json");
        }
    }
    Record { suite: suite.name(), instance_seed: seed, check, status, witness }
}

fn instance_records(config: &CorpusConfig, seed: u64) -> Vec<Record> {
    let points = generate(config.distribution, config.n, seed);
    let on = |s: Suite| config.suites.contains(&s);
    let tol = config.tolerance;
    let mut out = Vec::new();
    let graph = match build_theta_graph(&points, 4) {
        Ok(g) => g,
        Err(e) => {
            let o = CheckOutcome { cases: 1, violations: vec![e.to_string()], max_ratio: 0.0 };
            return vec![record(Suite::Theta, Some(seed), "build", o, Some(&points))];
        }
    };
    let tri = match build_linf_delaunay(&points) {
        Ok(t) => t,
        Err(e) => {
            let o = CheckOutcome { cases: 1, violations: vec![e.to_string()], max_ratio: 0.0 };
            return vec![record(Suite::Linfdt, Some(seed), "build", o, Some(&points))];
        }
    };
    let s = Some(seed);
    let p = Some(&points);
    if on(Suite::Theta) {
        out.push(record(Suite::Theta, s, "empty_triangles", check_theta(&points, &graph), p));
    }
    if on(Suite::Linfdt) {
        out.push(record(Suite::Linfdt, s, "witnesses_and_stretch", check_linf(&points, &tri, tol), p));
    }
    if on(Suite::Light) {
        out.push(record(Suite::Light, s, "light_path_structure", check_light(&points, &graph), p));
    }
    if on(Suite::Quadrant) {
        out.push(record(Suite::Quadrant, s, "eighteen_l1", check_quadrant(&points, &graph, tol), p));
    }
    if on(Suite::Lemma) {
        out.push(record(Suite::Lemma, s, "edge_routes", check_lemmas(&points, &graph, &tri, tol), p));
    }
    if on(Suite::Spanner) {
        let pairs = sample_pairs(points.len(), config.pairs_per_set, seed);
        out.push(record(Suite::Spanner, s, "spanner_bound", check_spanner(&points, &graph, &tri, &pairs, tol), p));
    }
    out
}

/// Runs the configured suites over every seed, then the lower-bound family.
/// The order of records is fixed by the configuration.
pub fn verify_suite(config: &CorpusConfig) -> Vec<Record> {
    let per_seed: Vec<Vec<Record>> = config.seeds.par_iter().map(|&s| instance_records(config, s)).collect();
    let mut out: Vec<Record> = per_seed.into_iter().flatten().collect();
    if config.suites.contains(&Suite::Lowerbound) {
        let mut previous: Option<f64> = None;
        for eps in &config.lower_bound_epsilons {
            let o = check_lower_bound(eps, config.tolerance);
            let ratio = o.max_ratio;
            out.push(record(Suite::Lowerbound, None, "stretch_window", o, None));
            // Offsets are expected in decreasing order; stretch must not drop.
            if let Some(prev) = previous {
                let mut m = CheckOutcome { cases: 1, max_ratio: ratio, ..Default::default() };
                if ratio < prev {
                    m.violations.push(format!("stretch fell from {prev} to {ratio} at epsilon {eps}"));
                }
                out.push(record(Suite::Lowerbound, None, "monotone", m, None));
            }
            previous = Some(ratio);
        }
    }
    out
}

pub fn to_json_lines(records: &[Record]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
        .collect()
}

/// Shorthand for callers that only need to know whether anything failed.
pub fn failures(records: &[Record]) -> Vec<&Record> {
    records.iter().filter(|r| r.status == Status::Fail).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_gives_empty_report() {
        assert!(verify_suite(&CorpusConfig::default()).is_empty());
    }

    #[test]
    fn small_corpus_passes() {
        let config = CorpusConfig {
            seeds: vec![1, 2],
            n: 30,
            pairs_per_set: 5,
            lower_bound_epsilons: vec![Rational::new(1, 1000), Rational::new(1, 10_000)],
            ..Default::default()
        };
        let report = verify_suite(&config);
        assert_eq!(report.len(), 2 * 6 + 3);
        let bad = failures(&report);
        assert!(bad.is_empty(), "{}", to_json_lines(&report));
        assert_eq!(to_json_lines(&report).lines().count(), report.len());
    }
}
