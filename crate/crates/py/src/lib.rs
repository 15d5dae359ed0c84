use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

use theta4::analysis::lower_bound::lower_bound_instance;
use theta4::analysis::stretch::stretch_factor_with;
use theta4::analysis::verify::{to_json_lines, verify_suite, CorpusConfig, Suite};
use theta4::gen::{generate, Distribution2d};
use theta4::io::{path_to_json, points_from_json, points_to_json, triangulation_to_json};
use theta4::routing::{route, Algorithm, TOLERANCE};
use theta4::{build_linf_delaunay, build_theta_graph, Error, Point, Rational};

fn err(e: Error) -> PyErr {
    if e.is_io() {
        PyOSError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// Ints and strings are exact; floats go through `repr`, so `0.1` means 1/10.
fn coordinate(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Rational::from_int(i));
    }
    let text = match v.cast::<PyString>() {
        Ok(s) => s.to_string(),
        Err(_) => v.repr()?.to_string(),
    };
    text.parse().map_err(err)
}

/// Planar point set in general position.
#[pyclass(name = "PointSet", frozen)]
struct PyPointSet {
    inner: theta4::PointSet,
}

#[pymethods]
impl PyPointSet {
    #[new]
    fn new(points: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let pts = points
            .iter()
            .map(|(x, y)| Ok(Point::new(coordinate(x)?, coordinate(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: theta4::PointSet::new(pts).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: points_from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        points_to_json(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Coordinates as exact strings.
    fn coords(&self) -> Vec<(String, String)> {
        self.inner
            .iter()
            .map(|p| (p.x.to_exact_string(), p.y.to_exact_string()))
            .collect()
    }

    fn to_floats(&self) -> Vec<(f64, f64)> {
        self.inner.iter().map(Point::to_f64).collect()
    }

    #[pyo3(signature = (m = 4))]
    fn theta_graph(&self, py: Python<'_>, m: usize) -> PyResult<Vec<(usize, usize)>> {
        let g = py.detach(|| build_theta_graph(&self.inner, m)).map_err(err)?;
        Ok(g.edges().to_vec())
    }

    /// Edges, triangles and witness squares of the L∞-Delaunay triangulation.
    fn linf_delaunay<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = py.detach(|| build_linf_delaunay(&self.inner)).map_err(err)?;
        loads(py, &triangulation_to_json(&t))
    }

    /// Route from `s` to `t` with one of "light", "quadrant", "lemma2" or
    /// "spanner" and return the path record as a dict.
    #[pyo3(signature = (algo, s, t, tolerance = TOLERANCE))]
    fn route<'py>(&self, py: Python<'py>, algo: &str, s: usize, t: usize, tolerance: f64) -> PyResult<Bound<'py, PyAny>> {
        let algo: Algorithm = algo.parse().map_err(err)?;
        let record = py
            .detach(|| {
                let g = build_theta_graph(&self.inner, 4)?;
                let tri = match algo {
                    Algorithm::Spanner => Some(build_linf_delaunay(&self.inner)?),
                    _ => None,
                };
                route(&self.inner, &g, tri.as_ref(), algo, s, t, tolerance)
            })
            .map_err(err)?;
        loads(py, &path_to_json(&record))
    }

    /// Stretch factor of the θ_m-graph (`graph="theta"`) or the L∞-Delaunay
    /// triangulation (`graph="linfdt"`).
    #[pyo3(signature = (graph = "theta", m = 4, table = false))]
    fn stretch<'py>(&self, py: Python<'py>, graph: &str, m: usize, table: bool) -> PyResult<Bound<'py, PyAny>> {
        let report = py
            .detach(|| {
                let edges = match graph {
                    "theta" => build_theta_graph(&self.inner, m)?.edges().to_vec(),
                    "linfdt" => build_linf_delaunay(&self.inner)?.edges().to_vec(),
                    other => return Err(Error::Parse(format!("unknown graph {other:?}"))),
                };
                stretch_factor_with(&self.inner, &edges, table)
            })
            .map_err(err)?;
        let text = serde_json_string(&report)?;
        loads(py, &text)
    }
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (n, seed, kind = "uniform"))]
fn gen(n: usize, seed: u64, kind: &str) -> PyResult<PyPointSet> {
    let kind = match kind {
        "uniform" => Distribution2d::Uniform,
        "clustered" => Distribution2d::Clustered,
        other => return Err(PyValueError::new_err(format!("unknown distribution {other:?}"))),
    };
    Ok(PyPointSet { inner: generate(kind, n, seed) })
}

/// The 26-point instance whose θ₄ stretch approaches 7 as `epsilon` shrinks.
#[pyfunction]
#[pyo3(signature = (epsilon, scale = "1"))]
fn lower_bound(epsilon: &Bound<'_, PyAny>, scale: &str) -> PyResult<PyPointSet> {
    let eps = coordinate(epsilon)?;
    let scale: Rational = scale.parse().map_err(err)?;
    let inst = lower_bound_instance(&eps, &scale).map_err(err)?;
    Ok(PyPointSet { inner: inst.points })
}

/// Run the named suites over seeded uniform sets; one dict per check.
#[pyfunction]
#[pyo3(signature = (seeds, n = 100, suites = None, pairs = 10))]
fn verify<'py>(
    py: Python<'py>,
    seeds: Vec<u64>,
    n: usize,
    suites: Option<Vec<String>>,
    pairs: usize,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let suites = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| Suite::parse(s).ok_or_else(|| PyValueError::new_err(format!("unknown suite {s:?}"))))
            .collect::<PyResult<_>>()?,
    };
    let config = CorpusConfig { suites, seeds, n, pairs_per_set: pairs, ..CorpusConfig::default() };
    let text = py.detach(|| to_json_lines(&verify_suite(&config)));
    text.lines().map(|l| loads(py, l)).collect()
}

#[pymodule]
fn theta4_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPointSet>()?;
    m.add_function(wrap_pyfunction!(gen, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
