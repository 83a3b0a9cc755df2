//! `tracklab` command-line front end. Every subcommand reads JSON, calls one
//! library operation and writes JSON (or DOT for dual trees).
//!
//! Exit codes: 0 success, 1 validation or structure-check failure, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use tracklab::builder::TraceStep;
use tracklab::corpus::{run_corpus, CorpusConfig};
use tracklab::dual::{decompose_pattern, DualTree, StructureReport};
use tracklab::pattern::ValidationReport;
use tracklab::rewrite::RewriteReport;
use tracklab::{
    build_maximal, classify_track, dual_tree, extract_tracks, generate, normalize, pattern_kind, realize,
    seed_vertex_links, surgery, validate_pattern, verify_structure, CurveSystem, GeneratorSpec, PatternCoords,
    PatternKind, TrackKind, Triangulation,
};

#[derive(Parser)]
#[command(name = "tracklab", version, about = "Patterns, tracks and dual trees on triangulated 2-spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a sphere triangulation.
    Gen {
        /// tetrahedron, octahedron, icosahedron, bipyramid:N or random:N
        #[arg(long)]
        kind: GeneratorSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a triangulation, and optionally a pattern on it.
    Validate {
        tri: PathBuf,
        pattern: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Realize a pattern and list its tracks.
    Tracks {
        tri: PathBuf,
        pattern: PathBuf,
        /// Also write the realized curve system.
        #[arg(long)]
        curves_out: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Remove returning arcs from a curve system.
    Normalize {
        curves: PathBuf,
        #[arg(long)]
        tri: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Surgery at crossings `pos` and `pos + 1` of an edge.
    Surgery {
        curves: PathBuf,
        #[arg(long)]
        tri: PathBuf,
        /// Edge as `u-v`.
        #[arg(long)]
        edge: String,
        #[arg(long)]
        pos: u32,
        /// Normalize the result afterwards.
        #[arg(long)]
        normalize: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a maximal pattern from the vertex links.
    Maximal {
        tri: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also write the combined pattern in pattern JSON form.
        #[arg(long)]
        pattern_out: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check the dual-tree structure of a pattern.
    Verify {
        tri: PathBuf,
        pattern: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Dual tree of a pattern as JSON, optionally DOT.
    Dptree {
        tri: PathBuf,
        pattern: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build and verify maximal patterns on random triangulations.
    Corpus {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long = "min-v", default_value_t = 5)]
        min_v: usize,
        #[arg(long = "max-v", default_value_t = 30)]
        max_v: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// A bad invocation discovered after parsing (unreadable file, bad flag value).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())).into())
}

fn load_tri(path: &Path) -> Result<Triangulation> {
    Triangulation::from_json_str(&read(path)?).with_context(|| format!("triangulation {}", path.display()))
}

fn load_pattern(tri: &Triangulation, path: &Path) -> Result<PatternCoords> {
    PatternCoords::from_json_str(tri, &read(path)?).with_context(|| format!("pattern {}", path.display()))
}

fn load_curves(tri: &Triangulation, path: &Path) -> Result<CurveSystem> {
    CurveSystem::from_json_str(tri, &read(path)?).with_context(|| format!("curves {}", path.display()))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Usage(format!("cannot write {}: {e}", p.display())).into()),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn emit<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    write_text(path, &serde_json::to_string_pretty(value)?)
}

#[derive(Serialize)]
struct TrackOut {
    weights: BTreeMap<String, u32>,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<TrackKind>,
}

#[derive(Serialize)]
struct TracksOut {
    tracks: Vec<TrackOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern_kind: Option<PatternKind>,
}

#[derive(Serialize)]
struct ValidateOut {
    valid: bool,
    v: usize,
    e: usize,
    f: usize,
    euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<ValidationReport>,
}

#[derive(Serialize)]
struct CurvesOut {
    curves: tracklab::curves::CurveSystemJson,
    normal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<RewriteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    same_track: Option<bool>,
}

#[derive(Serialize)]
struct MaximalOut {
    tracks: Vec<BTreeMap<String, u32>>,
    #[serde(rename = "e_P")]
    e_p: usize,
    trace: Vec<TraceStep>,
    structure: StructureReport,
}

#[derive(Serialize)]
struct DptreeOut {
    tree: DualTree,
    structure: Option<StructureReport>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen { kind, seed, out } => {
            let tri = generate(kind, seed)?;
            emit(out.as_deref(), &tri.to_json())?;
        }
        Cmd::Validate { tri, pattern, out } => {
            let t = match Triangulation::from_json_str(&read(&tri)?) {
                Ok(t) => t,
                Err(e) => {
                    emit(out.as_deref(), &serde_json::json!({ "valid": false, "error": e.to_string() }))?;
                    return Ok(ExitCode::from(1));
                }
            };
            let report = pattern.map(|p| load_pattern(&t, &p).and_then(|p| Ok(validate_pattern(&t, &p)?))).transpose()?;
            let ok = report.as_ref().is_none_or(ValidationReport::is_valid);
            emit(
                out.as_deref(),
                &ValidateOut {
                    valid: ok,
                    v: t.vertex_count(),
                    e: t.edge_count(),
                    f: t.face_count(),
                    euler_characteristic: t.euler_characteristic(),
                    pattern: report,
                },
            )?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Tracks { tri, pattern, curves_out, out } => {
            let t = load_tri(&tri)?;
            let p = load_pattern(&t, &pattern)?;
            let cs = realize(&t, &p)?;
            if let Some(path) = curves_out {
                emit(Some(&path), &cs.to_json(&t))?;
            }
            let tracks = extract_tracks(&t, &cs)?;
            let body = TracksOut {
                tracks: tracks
                    .iter()
                    .map(|tr| TrackOut { weights: tr.weights.weight_map(&t), n: tr.n(), kind: classify_track(&t, tr).kind })
                    .collect(),
                pattern_kind: pattern_kind(&t, &p).ok(),
            };
            emit(out.as_deref(), &body)?;
        }
        Cmd::Normalize { curves, tri, out } => {
            let t = load_tri(&tri)?;
            let cs = load_curves(&t, &curves)?;
            let (n, report) = normalize(&t, &cs);
            emit(
                out.as_deref(),
                &CurvesOut { curves: n.to_json(&t), normal: n.is_normal(), report: Some(report), same_track: None },
            )?;
        }
        Cmd::Surgery { curves, tri, edge, pos, normalize: norm, out } => {
            let t = load_tri(&tri)?;
            let cs = load_curves(&t, &curves)?;
            let e = t.parse_edge(&edge).map_err(|err| Usage(format!("--edge {edge}: {err}")))?;
            let o = surgery(&t, &cs, e, pos)?;
            let (system, report) = if norm {
                let (n, r) = normalize(&t, &o.system);
                (n, Some(r))
            } else {
                (o.system, None)
            };
            emit(
                out.as_deref(),
                &CurvesOut {
                    curves: system.to_json(&t),
                    normal: system.is_normal(),
                    report,
                    same_track: Some(o.same_track),
                },
            )?;
        }
        Cmd::Maximal { tri, dot, pattern_out, out } => {
            let t = load_tri(&tri)?;
            let state = build_maximal(&t, seed_vertex_links(&t))?;
            let structure = verify_structure(&t, &state.combined)?;
            if let Some(path) = dot {
                let tree = dual_tree(&decompose_pattern(&t, &state.combined)?)?;
                write_text(Some(&path), &tree.to_dot())?;
            }
            if let Some(path) = pattern_out {
                emit(Some(&path), &state.combined.to_json(&t))?;
            }
            let ok = structure.passed;
            emit(
                out.as_deref(),
                &MaximalOut {
                    tracks: state.registry.iter().map(|w| w.weight_map(&t)).collect(),
                    e_p: state.track_count(),
                    trace: state.trace,
                    structure,
                },
            )?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Verify { tri, pattern, out } => {
            let t = load_tri(&tri)?;
            let p = load_pattern(&t, &pattern)?;
            let report = verify_structure(&t, &p)?;
            emit(out.as_deref(), &report)?;
            return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Dptree { tri, pattern, dot, out } => {
            let t = load_tri(&tri)?;
            let p = load_pattern(&t, &pattern)?;
            let tree = dual_tree(&decompose_pattern(&t, &p)?)?;
            if let Some(path) = dot {
                write_text(Some(&path), &tree.to_dot())?;
            }
            emit(out.as_deref(), &DptreeOut { structure: verify_structure(&t, &p).ok(), tree })?;
        }
        Cmd::Corpus { trials, min_v, max_v, seed, jobs, out } => {
            if min_v < 4 || min_v > max_v {
                return Err(Usage(format!("--min-v {min_v} --max-v {max_v}: need 4 <= min-v <= max-v")).into());
            }
            if jobs == Some(0) {
                return Err(Usage("--jobs must be positive".into()).into());
            }
            let report = run_corpus(&CorpusConfig { trials, seed, min_vertices: min_v, max_vertices: max_v, jobs });
            emit(out.as_deref(), &report)?;
            eprintln!("{}/{} trials passed in {:.1} ms", report.passed, trials, report.wall_ms);
            return Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Usage>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
