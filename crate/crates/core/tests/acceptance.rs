//! Acceptance checks. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any line fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use theta4::analysis::lower_bound::lower_bound_instance;
use theta4::analysis::stretch::stretch_factor;
use theta4::analysis::verify::{check_lemmas, check_linf, check_quadrant, sample_pairs};
use theta4::gen::uniform;
use theta4::geom::{apply_frame, euclid, l1, Frame};
use theta4::routing::{
    algorithm1_light_path, check_light_path, is_protected, one_empty_quadrant_path, spanner_path, LightPathViolation,
    ProtectionContext, QuadrantTag,
    DELAUNAY_STRETCH, LIGHT_PATH_FACTOR, SPANNER_THRESHOLD, TOLERANCE,
};
use theta4::{build_linf_delaunay, build_theta_graph, ConeGraph, PointSet, Rational, Triangulation};

struct Instance {
    seed: u64,
    points: PointSet,
    graph: ConeGraph,
    tri: Triangulation,
}

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line { pass, detail: detail.into() }
}

const CORPUS_SETS: u64 = 50;
const CORPUS_N: usize = 100;
const PAIRS_PER_SET: usize = 10;

fn corpus() -> Vec<Instance> {
    (1..=CORPUS_SETS)
        .into_par_iter()
        .map(|seed| {
            let points = uniform(CORPUS_N, seed);
            let graph = build_theta_graph(&points, 4).expect("theta graph");
            let tri = build_linf_delaunay(&points).expect("triangulation");
            Instance { seed, points, graph, tri }
        })
        .collect()
}

fn lower_bound() -> Line {
    let start = Instant::now();
    let mut ratios = Vec::new();
    for denom in [1_000_000i64, 2_000_000, 4_000_000] {
        let inst = match lower_bound_instance(&Rational::new(1, denom), &Rational::one()) {
            Ok(i) => i,
            Err(e) => return line(false, e.to_string()),
        };
        let g = build_theta_graph(&inst.points, 4).unwrap();
        ratios.push(stretch_factor(&inst.points, g.edges()).unwrap().max_ratio);
    }
    let elapsed = start.elapsed();
    let in_window = (7.0 - 1e-4..=7.0 * (1.0 + TOLERANCE)).contains(&ratios[0]);
    let monotone = ratios.windows(2).all(|w| w[1] >= w[0]) && ratios.iter().all(|&r| r <= 7.0 * (1.0 + TOLERANCE));
    let fast = elapsed < Duration::from_secs(1);
    line(
        in_window && monotone && fast,
        format!(
            "stretch {:.9} at eps=1e-6, {:.9} at 5e-7, {:.9} at 2.5e-7 ({:.3}s)",
            ratios[0],
            ratios[1],
            ratios[2],
            elapsed.as_secs_f64()
        ),
    )
}

fn spanner(corpus: &[Instance], start: Instant) -> Line {
    let results: Vec<(usize, f64, Vec<String>)> = corpus
        .par_iter()
        .map(|inst| {
            let mut worst = 0.0f64;
            let mut bad = Vec::new();
            let pairs = sample_pairs(inst.points.len(), PAIRS_PER_SET, inst.seed);
            for &(s, t) in &pairs {
                match spanner_path(&inst.points, &inst.graph, &inst.tri, s, t) {
                    Ok(path) => {
                        let ratio = path.length() / euclid(&inst.points[s], &inst.points[t]);
                        worst = worst.max(ratio);
                        if ratio > SPANNER_THRESHOLD * (1.0 + TOLERANCE) {
                            bad.push(format!("seed {} {s}->{t}: {ratio}", inst.seed));
                        }
                    }
                    Err(e) => bad.push(format!("seed {} {s}->{t}: {e}", inst.seed)),
                }
            }
            (pairs.len(), worst, bad)
        })
        .collect();
    let elapsed = start.elapsed();
    let pairs: usize = results.iter().map(|r| r.0).sum();
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.2).collect();
    let pass = bad.is_empty() && pairs >= 500 && elapsed < Duration::from_secs(120);
    line(
        pass,
        format!(
            "{} sets, {pairs} pairs, max |path|/|st| = {worst:.4} <= {SPANNER_THRESHOLD}, {} failures ({:.1}s){}",
            corpus.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            first(&bad)
        ),
    )
}

fn first(v: &[String]) -> String {
    v.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

/// Criteria 3 and 7 share one pass over all light-path runs of the corpus.
fn light_paths(corpus: &[Instance]) -> (Line, Line) {
    let per: Vec<(usize, usize, f64, Vec<String>, Vec<String>)> = corpus
        .par_iter()
        .map(|inst| {
            let p = &inst.points;
            let (mut runs, mut protected, mut worst) = (0, 0, 0.0f64);
            let (mut long, mut structural) = (Vec::new(), Vec::new());
            for s in 0..p.len() {
                for t in 0..p.len() {
                    if p[s].x >= p[t].x {
                        continue;
                    }
                    runs += 1;
                    let path = match algorithm1_light_path(p, &inst.graph, s, t) {
                        Ok(path) => path,
                        Err(e) => {
                            structural.push(format!("seed {} {s}->{t}: {e}", inst.seed));
                            continue;
                        }
                    };
                    if is_protected(p, &inst.graph, s, &ProtectionContext::new(&p[t])) {
                        protected += 1;
                        worst = worst.max(path.length() / l1(&p[s], &p[t]).to_f64());
                    }
                    for v in check_light_path(p, &inst.graph, &path, t) {
                        let msg = format!("seed {} {s}->{t}: {v}", inst.seed);
                        if matches!(v, LightPathViolation::TooLong { .. }) {
                            long.push(msg);
                        } else {
                            structural.push(msg);
                        }
                    }
                }
            }
            (runs, protected, worst, long, structural)
        })
        .collect();
    let runs: usize = per.iter().map(|r| r.0).sum();
    let protected: usize = per.iter().map(|r| r.1).sum();
    let worst = per.iter().map(|r| r.2).fold(0.0, f64::max);
    let long: Vec<String> = per.iter().flat_map(|r| r.3.clone()).collect();
    let structural: Vec<String> = per.iter().flat_map(|r| r.4.clone()).collect();
    (
        line(
            long.is_empty() && protected > 0,
            format!(
                "{protected} protected sources, max |path|/L1 = {worst:.4} <= {LIGHT_PATH_FACTOR}, {} failures{}",
                long.len(),
                first(&long)
            ),
        ),
        line(
            structural.is_empty(),
            format!("{runs} light-path runs, {} structural violations{}", structural.len(), first(&structural)),
        ),
    )
}

fn quadrant(corpus: &[Instance]) -> Line {
    let outcomes: Vec<_> = corpus
        .par_iter()
        .map(|i| (i.seed, check_quadrant(&i.points, &i.graph, TOLERANCE)))
        .collect();
    let cases: usize = outcomes.iter().map(|o| o.1.cases).sum();
    let worst = outcomes.iter().map(|o| o.1.max_ratio).fold(0.0, f64::max);
    let bad: Vec<String> = outcomes
        .iter()
        .flat_map(|(seed, o)| o.violations.iter().map(move |v| format!("seed {seed} {v}")))
        .collect();
    // Which proof cases the accepted runs exercised.
    let traces: Vec<Vec<(QuadrantTag, usize)>> = corpus
        .par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for s in 0..i.points.len() {
                for t in 0..i.points.len() {
                    if let Ok((_, trace)) = one_empty_quadrant_path(&i.points, &i.graph, s, t) {
                        out.extend(trace.levels.iter().map(|l| (l.tag, trace.depth())));
                    }
                }
            }
            out
        })
        .collect();
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    let mut depth = 0;
    for (tag, d) in traces.into_iter().flatten() {
        *tags.entry(format!("{tag:?}")).or_default() += 1;
        depth = depth.max(d);
    }
    line(
        bad.is_empty() && cases >= 200,
        format!(
            "{cases} accepted (s, t), max |path|/L1 = {worst:.4} <= 18, depth <= k (max depth {depth}), cases {tags:?}, {} failures{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn lemmas(corpus: &[Instance]) -> Line {
    let outcomes: Vec<_> = corpus
        .par_iter()
        .map(|i| (i.seed, check_lemmas(&i.points, &i.graph, &i.tri, TOLERANCE)))
        .collect();
    let cases: usize = outcomes.iter().map(|o| o.1.cases).sum();
    let worst = outcomes.iter().map(|o| o.1.max_ratio).fold(0.0, f64::max);
    let bad: Vec<String> = outcomes
        .iter()
        .flat_map(|(seed, o)| o.violations.iter().map(move |v| format!("seed {seed} {v}")))
        .collect();
    line(
        bad.is_empty() && cases > 0,
        format!(
            "{cases} directed Delaunay edges routed, max |path|/|ab| = {worst:.4}, {} failures{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn delaunay(corpus: &[Instance]) -> Line {
    let small: Vec<(u64, Result<(), String>, f64)> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let seed = 10_000 + i;
            let n = 3 + (i as usize % 8);
            let p = uniform(n, seed);
            let t = match build_linf_delaunay(&p) {
                Ok(t) => t,
                Err(e) => return (seed, Err(e.to_string()), 0.0),
            };
            let expected: Vec<_> = common::linf_edges(&p).into_iter().collect();
            if t.edges() != expected.as_slice() {
                return (seed, Err(format!("edges {:?} vs oracle {expected:?}", t.edges())), 0.0);
            }
            let o = check_linf(&p, &t, TOLERANCE);
            match o.violations.first() {
                Some(v) => (seed, Err(v.clone()), o.max_ratio),
                None => (seed, Ok(()), o.max_ratio),
            }
        })
        .collect();
    let large: Vec<_> = corpus
        .par_iter()
        .map(|i| (i.seed, check_linf(&i.points, &i.tri, TOLERANCE)))
        .collect();
    let mut bad: Vec<String> = small
        .iter()
        .filter_map(|(s, r, _)| r.as_ref().err().map(|e| format!("seed {s}: {e}")))
        .collect();
    bad.extend(
        large
            .iter()
            .flat_map(|(seed, o)| o.violations.iter().map(move |v| format!("seed {seed}: {v}"))),
    );
    let worst = small
        .iter()
        .map(|r| r.2)
        .chain(large.iter().map(|o| o.1.max_ratio))
        .fold(0.0, f64::max);
    line(
        bad.is_empty(),
        format!(
            "200 sets n<=10 match the critical-square oracle, witnesses empty, max stretch {worst:.5} <= {DELAUNAY_STRETCH:.5}, {} failures{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn oracles() -> Line {
    let theta: Vec<bool> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let p = uniform(2 + (i as usize % 11), 20_000 + i);
            let g = build_theta_graph(&p, 4).unwrap();
            g.edges().iter().copied().eq(common::theta4_edges(&p))
        })
        .collect();
    let stretch: Vec<bool> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let p = uniform(2 + (i as usize % 7), 30_000 + i);
            let g = build_theta_graph(&p, 4).unwrap();
            let fast = stretch_factor(&p, g.edges()).unwrap().max_ratio;
            let slow = common::simple_path_stretch(&p, g.edges());
            (fast - slow).abs() <= 1e-9 * slow
        })
        .collect();
    let a = theta.iter().filter(|&&b| b).count();
    let b = stretch.iter().filter(|&&b| b).count();
    line(
        a == theta.len() && b == stretch.len(),
        format!(
            "theta vs brute force {a}/{} (n<=12), stretch vs all simple paths {b}/{} (n<=8)",
            theta.len(),
            stretch.len()
        ),
    )
}

fn equivariance() -> Line {
    let results: Vec<bool> = (0..50u64)
        .into_par_iter()
        .map(|i| {
            let p = uniform(60, 40_000 + i);
            let g = build_theta_graph(&p, 4).unwrap();
            Frame::all(&p[0]).iter().all(|f| {
                let h = build_theta_graph(&apply_frame(f, &p), 4).unwrap();
                h.edges() == g.edges()
                    && (0..p.len()).all(|v| (0..4).all(|c| g.neighbor(v, c) == h.neighbor(v, f.map_cone(c))))
            })
        })
        .collect();
    let ok = results.iter().filter(|&&b| b).count();
    line(ok == results.len(), format!("{ok}/{} instances x 8 frames give identical edge sets", results.len()))
}

fn main() -> ExitCode {
    let mut lines: Vec<(&str, Line)> = Vec::new();
    lines.push(("1 lower bound", lower_bound()));
    let start = Instant::now();
    let corpus = corpus();
    lines.push(("2 spanner paths", spanner(&corpus, start)));
    let (light_len, structure) = light_paths(&corpus);
    lines.push(("3 light path length", light_len));
    lines.push(("4 one-empty-quadrant paths", quadrant(&corpus)));
    lines.push(("5 Delaunay edge routes", lemmas(&corpus)));
    lines.push(("6 L-infinity Delaunay", delaunay(&corpus)));
    lines.push(("7 light path structure", structure));
    lines.push(("8 oracle agreement", oracles()));
    lines.push(("9 D4 equivariance", equivariance()));
    let mut failed = 0;
    for (name, l) in &lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {}", l.detail);
        failed += usize::from(!l.pass);
    }
    println!("acceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
