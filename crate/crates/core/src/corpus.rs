//! Randomized corpus runs: build and verify a maximal pattern on many
//! random triangulations.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::builder::{build_maximal, seed_vertex_links};
use crate::dual::verify_structure;
use crate::par::map_ordered;
use crate::surface::{generate, GeneratorSpec, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub trials: usize,
    pub seed: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self { trials: 100, seed: 1, min_vertices: 5, max_vertices: 30, jobs: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub e_p: usize,
    pub expected_e_p: usize,
    pub steps: usize,
    /// All dual-tree checks held.
    pub structure_pass: bool,
    pub pass: bool,
    /// Failed check names, or the error that stopped the trial.
    pub failures: Vec<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub parallel: bool,
    pub passed: usize,
    pub failed: usize,
    pub wall_ms: f64,
    pub records: Vec<TrialRecord>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Per-trial seed, a splitmix64 step off the master seed.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The random triangulation of one trial, with its seed and vertex count.
pub fn trial_triangulation(cfg: &CorpusConfig, trial: usize) -> (u64, usize, crate::Result<Triangulation>) {
    let seed = trial_seed(cfg.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = cfg.min_vertices.max(4);
    let v = rng.gen_range(lo..=cfg.max_vertices.max(lo));
    (seed, v, generate(GeneratorSpec::Random(v), rng.gen()))
}

pub fn run_trial(cfg: &CorpusConfig, trial: usize) -> TrialRecord {
    let start = Instant::now();
    let (seed, v, tri) = trial_triangulation(cfg, trial);
    let mut rec = TrialRecord {
        trial,
        seed,
        v,
        e: 0,
        f: 0,
        e_p: 0,
        expected_e_p: 2 * v - 3,
        steps: 0,
        structure_pass: false,
        pass: false,
        failures: Vec::new(),
        wall_ms: 0.0,
    };
    let outcome = (|| -> crate::Result<()> {
        let tri = tri?;
        rec.e = tri.edge_count();
        rec.f = tri.face_count();
        let state = build_maximal(&tri, seed_vertex_links(&tri))?;
        rec.steps = state.trace.len() - tri.vertex_count();
        rec.e_p = state.track_count();
        let report = verify_structure(&tri, &state.combined)?;
        rec.structure_pass = report.passed && report.euler_sum == 2;
        if report.euler_sum != 2 {
            rec.failures.push(format!("euler sum {}", report.euler_sum));
        }
        rec.failures.extend(report.checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()));
        if rec.e_p != rec.expected_e_p {
            rec.failures.push(format!("e_p {} != {}", rec.e_p, rec.expected_e_p));
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        rec.failures.push(e.to_string());
    }
    rec.pass = rec.failures.is_empty();
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

pub fn run_corpus(cfg: &CorpusConfig) -> CorpusReport {
    let start = Instant::now();
    let records = map_ordered((0..cfg.trials).collect(), cfg.jobs, |i| run_trial(cfg, i));
    let passed = records.iter().filter(|r| r.pass).count();
    CorpusReport {
        config: cfg.clone(),
        parallel: crate::par::is_parallel() && cfg.jobs != Some(1),
        passed,
        failed: records.len() - passed,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        records,
    }
}
