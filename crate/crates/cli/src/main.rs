use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use theta4::analysis::lower_bound::lower_bound_instance;
use theta4::analysis::stretch::stretch_factor_with;
use theta4::analysis::verify::{failures, to_json_lines, verify_suite, CorpusConfig, Suite};
use theta4::gen::{generate, Distribution2d};
use theta4::io::{
    graph_to_json, path_from_json, path_to_json, points_to_json, read_points, triangulation_to_json,
};
use theta4::routing::{route, Algorithm, TOLERANCE};
use theta4::svg::{render, Scene};
use theta4::theta::empty_triangle;
use theta4::{build_linf_delaunay, build_theta_graph, Error, PointSet, Rational};

#[derive(Parser)]
#[command(name = "theta4", version, about = "Theta-4 graphs, L-infinity Delaunay triangulations and spanner paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a point set
    Gen(GenArgs),
    /// Build a graph from a point set
    Build(BuildArgs),
    /// Build the θ_m-graph (shorthand for `build --graph theta`)
    Theta(GraphArgs),
    /// Build the L∞-Delaunay triangulation (shorthand for `build --graph linfdt`)
    Linfdt(GraphArgs),
    /// Route between two points and check the path against its bound
    Route(RouteArgs),
    /// Exact stretch factor of a graph over a point set
    Stretch(StretchArgs),
    /// Run invariant checks over a seeded corpus, one JSON line per check
    Verify(VerifyArgs),
    /// Render points, a graph and optional overlays as SVG
    ExportSvg(SvgArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Uniform,
    Clustered,
    Lowerbound,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum GraphKind {
    Theta,
    Linfdt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Light,
    Quadrant,
    Lemma2,
    Spanner,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    kind: Kind,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Offset for the lower-bound instance, relative to |uw|
    #[arg(long, default_value = "1/1000000")]
    epsilon: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Cone count for the θ-graph
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    graph: GraphKind,
    #[command(flatten)]
    inner: GraphArgs,
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = TOLERANCE)]
    tolerance: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct StretchArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "theta")]
    graph: GraphKind,
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Include the full table of pair ratios
    #[arg(long)]
    table: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all")]
    suite: String,
    /// First corpus seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of point sets
    #[arg(long, default_value_t = 10)]
    sets: u64,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    pairs: usize,
    /// Lower-bound offset; the suite also runs at half and a quarter of it
    #[arg(long, default_value = "1/1000000")]
    epsilon: String,
    #[arg(long, default_value_t = TOLERANCE)]
    tolerance: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SvgArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "theta")]
    graph: GraphKind,
    /// Path JSON files (as written by `route`) to overlay
    #[arg(long = "path")]
    paths: Vec<PathBuf>,
    /// Draw the witness square of every Delaunay triangle
    #[arg(long)]
    squares: bool,
    /// Draw the empty triangle of every θ₄ edge
    #[arg(long)]
    triangles: bool,
    #[command(flatten)]
    output: Output,
}

fn emit(output: &Output, text: &str) -> theta4::Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(path: &Path) -> theta4::Result<PointSet> {
    read_points(path)
}

fn graph_json(kind: GraphKind, args: &GraphArgs) -> theta4::Result<String> {
    let points = load(&args.input)?;
    match kind {
        GraphKind::Theta => Ok(graph_to_json(&build_theta_graph(&points, args.m)?)),
        GraphKind::Linfdt => Ok(triangulation_to_json(&build_linf_delaunay(&points)?)),
    }
}

fn run(cli: Cli) -> theta4::Result<()> {
    match cli.command {
        Command::Gen(a) => {
            let points = match a.kind {
                Kind::Uniform => generate(Distribution2d::Uniform, a.n, a.seed),
                Kind::Clustered => generate(Distribution2d::Clustered, a.n, a.seed),
                Kind::Lowerbound => {
                    let eps: Rational = a.epsilon.parse()?;
                    lower_bound_instance(&eps, &Rational::one())?.points
                }
            };
            emit(&a.output, &points_to_json(&points))
        }
        Command::Build(a) => emit(&a.inner.output, &graph_json(a.graph, &a.inner)?),
        Command::Theta(a) => emit(&a.output, &graph_json(GraphKind::Theta, &a)?),
        Command::Linfdt(a) => emit(&a.output, &graph_json(GraphKind::Linfdt, &a)?),
        Command::Route(a) => {
            let points = load(&a.input)?;
            let graph = build_theta_graph(&points, 4)?;
            let algo = match a.algo {
                Algo::Light => Algorithm::Light,
                Algo::Quadrant => Algorithm::Quadrant,
                Algo::Lemma2 => Algorithm::Lemma2,
                Algo::Spanner => Algorithm::Spanner,
            };
            let tri = match algo {
                Algorithm::Spanner => Some(build_linf_delaunay(&points)?),
                _ => None,
            };
            let record = route(&points, &graph, tri.as_ref(), algo, a.s, a.t, a.tolerance)?;
            emit(&a.output, &path_to_json(&record))
        }
        Command::Stretch(a) => {
            let points = load(&a.input)?;
            let edges = match a.graph {
                GraphKind::Theta => build_theta_graph(&points, a.m)?.edges().to_vec(),
                GraphKind::Linfdt => build_linf_delaunay(&points)?.edges().to_vec(),
            };
            let report = stretch_factor_with(&points, &edges, a.table)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(&a.output, &text)
        }
        Command::Verify(a) => {
            let suites = if a.suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&a.suite).ok_or_else(|| Error::Parse(format!("unknown suite {:?}", a.suite)))?]
            };
            let eps: Rational = a.epsilon.parse()?;
            let config = CorpusConfig {
                suites,
                seeds: (a.seed..a.seed + a.sets).collect(),
                n: a.n,
                pairs_per_set: a.pairs,
                lower_bound_epsilons: vec![eps.clone(), eps.half(), eps.half().half()],
                tolerance: a.tolerance,
                ..CorpusConfig::default()
            };
            let records = verify_suite(&config);
            let bad = failures(&records).len();
            eprintln!("{} checks, {bad} failed", records.len());
            emit(&a.output, &to_json_lines(&records))
        }
        Command::ExportSvg(a) => {
            let points = load(&a.input)?;
            let mut scene = Scene::default();
            let graph = build_theta_graph(&points, 4)?;
            let tri = if a.graph == GraphKind::Linfdt || a.squares {
                Some(build_linf_delaunay(&points)?)
            } else {
                None
            };
            scene.edges = match (&a.graph, &tri) {
                (GraphKind::Linfdt, Some(t)) => t.edges().to_vec(),
                _ => graph.edges().to_vec(),
            };
            if a.squares {
                scene.squares = tri.as_ref().map(|t| t.triangle_witnesses().to_vec()).unwrap_or_default();
            }
            if a.triangles {
                for (u, _, c) in graph.labeled_edges() {
                    scene.triangles.push(empty_triangle(&points, &graph, u, c)?);
                }
            }
            let records = a
                .paths
                .iter()
                .map(|p| path_from_json(&fs::read_to_string(p)?))
                .collect::<theta4::Result<Vec<_>>>()?;
            if let Some(v) = records.iter().flat_map(|r| &r.vertices).find(|&&v| v >= points.len()) {
                return Err(Error::PreconditionViolated(format!("path vertex {v} out of range")));
            }
            scene.paths = records.iter().map(|r| r.vertices.as_slice()).collect();
            emit(&a.output, &render(&points, &scene))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("theta4: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
