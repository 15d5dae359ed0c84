use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{euclid, l1, PointSet};
use crate::io::PathRecord;
use crate::linf::Triangulation;
use crate::routing::{
    algorithm1_light_path, is_protected, lemma2_path, one_empty_quadrant_path, spanner_path, ProtectionContext,
    LEMMA2_FACTOR, LIGHT_PATH_FACTOR, QUADRANT_FACTOR, SPANNER_THRESHOLD,
};
use crate::theta::ConeGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Light,
    Quadrant,
    Lemma2,
    Spanner,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "light" => Ok(Algorithm::Light),
            "quadrant" => Ok(Algorithm::Quadrant),
            "lemma2" => Ok(Algorithm::Lemma2),
            "spanner" => Ok(Algorithm::Spanner),
            _ => Err(Error::Parse(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// Runs one routing algorithm and records the path with the bound it is
/// held to. `tri` is required for the spanner.
pub fn route(
    points: &PointSet,
    graph: &ConeGraph,
    tri: Option<&Triangulation>,
    algo: Algorithm,
    s: usize,
    t: usize,
    tolerance: f64,
) -> Result<PathRecord> {
    let n = points.len();
    if s >= n || t >= n {
        return Err(Error::PreconditionViolated(format!("vertex out of range for {n} points")));
    }
    let l1_st = l1(&points[s], &points[t]);
    let euclid_st = euclid(&points[s], &points[t]);
    let (path, trace, factor, base, lemma) = match algo {
        Algorithm::Light => {
            let path = algorithm1_light_path(points, graph, s, t)?;
            let protected = is_protected(points, graph, s, &ProtectionContext::new(&points[t]));
            let factor = protected.then_some(LIGHT_PATH_FACTOR);
            (path, Vec::new(), factor, l1_st.to_f64(), "light path, 3 L1 for a t-protected source")
        }
        Algorithm::Quadrant => {
            let (path, trace) = one_empty_quadrant_path(points, graph, s, t)?;
            (path, trace.levels, Some(QUADRANT_FACTOR), l1_st.to_f64(), "one empty quadrant, 18 L1")
        }
        Algorithm::Lemma2 => {
            let path = lemma2_path(points, graph, s, t)?;
            (path, Vec::new(), Some(LEMMA2_FACTOR), euclid_st, "empty corner square, (sqrt2 + 36) |st|")
        }
        Algorithm::Spanner => {
            let tri = tri.ok_or_else(|| Error::PreconditionViolated("spanner routing needs a triangulation".into()))?;
            let path = spanner_path(points, graph, tri, s, t)?;
            (path, Vec::new(), Some(SPANNER_THRESHOLD), euclid_st, "spanner, 236.07 |st|")
        }
    };
    let bound = factor.map(|f| f * base);
    let length = path.length();
    let ratio = if base > 0.0 { length / base } else { 1.0 };
    Ok(PathRecord {
        vertices: path.vertices().to_vec(),
        edges: path.edges().to_vec(),
        case_trace: trace,
        length,
        l1_st: l1_st.to_exact_string(),
        euclid_st,
        bound,
        factor,
        ratio,
        lemma: lemma.to_string(),
        pass: bound.is_none_or(|b| length <= b * (1.0 + tolerance)),
    })
}
