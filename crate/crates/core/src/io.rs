//! JSON formats for point sets, graphs, triangulations and routed paths.
//!
//! Coordinates are written as exact strings (`"1.25"`, `"1/3"`), so a file
//! round-trips without loss. Reading also accepts plain JSON numbers, parsed
//! from their decimal text.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet, Square};
use crate::linf::Triangulation;
use crate::path::PathEdge;
use crate::rational::Rational;
use crate::routing::QuadrantCase;
use crate::theta::ConeGraph;

#[derive(Serialize, Deserialize)]
struct PointsFile {
    points: Vec<[Value; 2]>,
}

fn coordinate(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        other => Err(Error::Parse(format!("coordinate must be a string or number, got {other}"))),
    }
}

/// Parses a point set and checks general position.
pub fn points_from_json(text: &str) -> Result<PointSet> {
    PointSet::new(points_from_json_unchecked(text)?)
}

pub fn points_from_json_unchecked(text: &str) -> Result<Vec<Point>> {
    let file: PointsFile = serde_json::from_str(text)?;
    file.points
        .iter()
        .map(|[x, y]| Ok(Point::new(coordinate(x)?, coordinate(y)?)))
        .collect()
}

pub fn points_to_json(points: &PointSet) -> String {
    let file = PointsFile {
        points: points
            .iter()
            .map(|p| [Value::String(p.x.to_exact_string()), Value::String(p.y.to_exact_string())])
            .collect(),
    };
    to_pretty(&file)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    points_from_json(&fs::read_to_string(path)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub m: usize,
    /// `[u, v, cone]` with `cone` the generating cone at `u`.
    pub edges: Vec<[usize; 3]>,
}

pub fn graph_file(graph: &ConeGraph) -> GraphFile {
    GraphFile {
        n: graph.n(),
        m: graph.m(),
        edges: graph.labeled_edges().into_iter().map(|(u, v, c)| [u, v, c]).collect(),
    }
}

pub fn graph_to_json(graph: &ConeGraph) -> String {
    to_pretty(&graph_file(graph))
}

pub fn graph_from_json(text: &str) -> Result<GraphFile> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SquareRecord {
    pub cx: String,
    pub cy: String,
    /// Half the side length.
    pub h: String,
}

impl SquareRecord {
    pub fn from_square(sq: &Square) -> Self {
        SquareRecord {
            cx: sq.center.x.to_exact_string(),
            cy: sq.center.y.to_exact_string(),
            h: sq.half_side.to_exact_string(),
        }
    }

    pub fn to_square(&self) -> Result<Square> {
        Ok(Square::new(Point::parse(&self.cx, &self.cy)?, self.h.parse()?))
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct TriangulationFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub witnesses: Vec<SquareRecord>,
}

pub fn triangulation_file(tri: &Triangulation) -> TriangulationFile {
    TriangulationFile {
        n: tri.n(),
        edges: tri.edges().iter().map(|&(a, b)| [a, b]).collect(),
        triangles: tri.triangles().to_vec(),
        witnesses: tri.triangle_witnesses().iter().map(SquareRecord::from_square).collect(),
    }
}

pub fn triangulation_to_json(tri: &Triangulation) -> String {
    to_pretty(&triangulation_file(tri))
}

pub fn triangulation_from_json(text: &str) -> Result<TriangulationFile> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PathRecord {
    pub vertices: Vec<usize>,
    pub edges: Vec<PathEdge>,
    pub case_trace: Vec<QuadrantCase>,
    pub length: f64,
    /// Exact L1 distance between the endpoints.
    pub l1_st: String,
    pub euclid_st: f64,
    /// The length the path is checked against, `factor * base`. Absent when
    /// no bound applies (a light path from an unprotected source).
    pub bound: Option<f64>,
    pub factor: Option<f64>,
    /// Length over the base quantity: L1 for light and quadrant paths,
    /// Euclidean distance otherwise.
    pub ratio: f64,
    pub lemma: String,
    pub pass: bool,
}

pub fn path_to_json(record: &PathRecord) -> String {
    to_pretty(record)
}

pub fn path_from_json(text: &str) -> Result<PathRecord> {
    Ok(serde_json::from_str(text)?)
}
