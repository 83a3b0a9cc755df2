//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tracklab::builder::oracle_extensions;
use tracklab::corpus::{run_corpus, trial_triangulation, CorpusConfig};
use tracklab::curves::track_multiset;
use tracklab::dual::{decompose_pattern, edge_path};
use tracklab::par::map_ordered;
use tracklab::rewrite::{normalize_with, surgery};
use tracklab::{
    build_maximal, classify_track, dual_tree, extract_tracks, generate, normalize, pattern_kind, seed_vertex_links,
    GeneratorSpec, PatternKind, TrackKind,
};

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_TRIALS: usize = 100;
const CORPUS_MIN_V: usize = 5;
const CORPUS_MAX_V: usize = 30;
const CORPUS_SEED: u64 = 2024;
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const REWRITE_SYSTEMS: usize = 1000;
const REWRITE_ORDERS: usize = 3;
const SURGERY_SYSTEMS: usize = 1000;
const ORACLE_BOUND: u32 = 3;
const ORACLE_LIMIT: Duration = Duration::from_secs(120);

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, name: &str, o: &Outcome) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{tag}] {name}: {}", o.detail);
}

fn golden() -> Outcome {
    let start = Instant::now();
    let t = generate(GeneratorSpec::Tetrahedron, 0).unwrap();
    let s = build_maximal(&t, seed_vertex_links(&t)).unwrap();
    let rd = decompose_pattern(&t, &s.combined).unwrap();
    let tree = dual_tree(&rd).unwrap();
    let kind = pattern_kind(&t, &s.combined).unwrap();
    let elapsed = start.elapsed();
    let kinds: Vec<_> = rd.tracks.iter().map(|tr| classify_track(&t, tr).kind).collect();
    let links = kinds.iter().filter(|k| **k == Some(TrackKind::VertexLink3Track)).count();
    let octs = kinds.iter().filter(|k| **k == Some(TrackKind::Octagon8Track)).count();
    let pass = s.track_count() == 5
        && rd.tracks.len() == 5
        && links == 4
        && octs == 1
        && tree.vertex_count == 6
        && tree.edge_count() == 5
        && tree.degree_multiset() == vec![1, 1, 1, 1, 3, 3]
        && kind == PatternKind::AlmostNormal
        && elapsed < GOLDEN_LIMIT;
    Outcome {
        pass,
        detail: format!(
            "{} tracks ({links} links, {octs} octagon), D_P {}v/{}e degrees {:?}, kind {kind:?}, {:.1} ms",
            s.track_count(),
            tree.vertex_count,
            tree.edge_count(),
            tree.degree_multiset(),
            elapsed.as_secs_f64() * 1e3
        ),
    }
}

fn corpus_cfg() -> CorpusConfig {
    CorpusConfig {
        trials: CORPUS_TRIALS,
        seed: CORPUS_SEED,
        min_vertices: CORPUS_MIN_V,
        max_vertices: CORPUS_MAX_V,
        jobs: None,
    }
}

fn counting_and_profiles() -> (Outcome, Outcome) {
    let start = Instant::now();
    let cfg = corpus_cfg();
    let rep = run_corpus(&cfg);
    let elapsed = start.elapsed();
    let mut count_bad = Vec::new();
    let mut profile_bad = Vec::new();
    for r in &rep.records {
        let shape_ok = r.e == 3 * r.v - 6 && r.f == 2 * r.v - 4;
        if !(shape_ok && r.e_p == 2 * r.v - 3 && r.e_p == r.f / 2 + r.v - 1) {
            count_bad.push(r.trial);
        }
        if !r.structure_pass {
            profile_bad.push((r.trial, r.failures.clone()));
        }
    }
    // regenerate each pattern to cross-check the tree shape independently
    let trees = map_ordered((0..cfg.trials).collect(), None, |i| {
        let (_, _, tri) = trial_triangulation(&cfg, i);
        let tri = tri.ok()?;
        let s = build_maximal(&tri, seed_vertex_links(&tri)).ok()?;
        let rd = decompose_pattern(&tri, &s.combined).ok()?;
        let tree = dual_tree(&rd).ok()?;
        let deg3 = tree.degrees.iter().filter(|&&d| d == 3).count();
        let chi: i64 = tree.profiles.iter().map(|p| p.euler_characteristic).sum();
        Some((tree.vertex_count == tree.edge_count() + 1 && 2 * deg3 == tri.face_count(), chi == 2))
    });
    for (i, t) in trees.iter().enumerate() {
        match t {
            Some((true, true)) => {}
            Some((tree_ok, chi_ok)) => {
                if !tree_ok {
                    count_bad.push(i);
                }
                if !chi_ok {
                    profile_bad.push((i, vec!["euler sum".into()]));
                }
            }
            None => count_bad.push(i),
        }
    }
    count_bad.sort_unstable();
    count_bad.dedup();
    let vs: BTreeSet<usize> = rep.records.iter().map(|r| r.v).collect();
    let c2 = Outcome {
        pass: rep.records.len() >= CORPUS_TRIALS && count_bad.is_empty() && elapsed < CORPUS_LIMIT,
        detail: format!(
            "{} trials, v in {}..={}, {} with e_P != 2v-3 or bad tree shape {:?}, {:.1} s",
            rep.records.len(),
            vs.first().unwrap_or(&0),
            vs.last().unwrap_or(&0),
            count_bad.len(),
            count_bad,
            elapsed.as_secs_f64()
        ),
    };
    let c3 = Outcome {
        pass: rep.records.len() >= CORPUS_TRIALS && profile_bad.is_empty(),
        detail: format!("{} patterns checked, {} failing {:?}", rep.records.len(), profile_bad.len(), profile_bad),
    };
    (c2, c3)
}

fn rewrite_laws() -> Outcome {
    let pool = common::pool(12, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0usize;
    let mut non_normal = 0usize;
    let mut steps_total = 0usize;
    let mut draws = 0;
    while non_normal < REWRITE_SYSTEMS && draws < 10 * REWRITE_SYSTEMS {
        draws += 1;
        let (tri, state) = &pool[draws % pool.len()];
        let base = common::random_normal(&mut rng, tri, state);
        let want = track_multiset(&extract_tracks(tri, &base).unwrap());
        let moves = rng.gen_range(1..=6);
        let messy = common::perturb(&mut rng, tri, &base, moves);
        if messy.is_normal() {
            continue;
        }
        non_normal += 1;
        let (out, r) = normalize(tri, &messy);
        steps_total += r.steps;
        let mut ok = r.crossings_removed == 2 * r.steps as u64
            && messy.total_crossings() - out.total_crossings() == r.crossings_removed
            && out.is_normal()
            && r.final_normal;
        ok &= extract_tracks(tri, &out).map(|t| track_multiset(&t)).ok().as_ref() == Some(&want);
        for _ in 0..REWRITE_ORDERS {
            let (alt, _) = normalize_with(tri, &messy, |arcs| rng.gen_range(0..arcs.len()));
            ok &= extract_tracks(tri, &alt).map(|t| track_multiset(&t)).ok().as_ref() == Some(&want);
        }
        bad += usize::from(!ok);
    }
    Outcome {
        pass: non_normal >= REWRITE_SYSTEMS && bad == 0,
        detail: format!(
            "{non_normal} non-normal systems, {steps_total} removals, {REWRITE_ORDERS} random orders each, {bad} mismatches"
        ),
    }
}

fn surgery_parity() -> Outcome {
    let pool = common::pool(12, 23);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut same, mut distinct, mut bad) = (0usize, 0usize, 0usize, 0usize);
    let mut attempts = 0;
    while checked < SURGERY_SYSTEMS && attempts < 20 * SURGERY_SYSTEMS {
        attempts += 1;
        let (tri, state) = &pool[attempts % pool.len()];
        let cs = common::random_normal(&mut rng, tri, state);
        let edges: Vec<_> = (0..tri.edge_count()).filter(|&e| cs.count(e) >= 2).collect();
        if edges.is_empty() {
            continue;
        }
        let e = edges[rng.gen_range(0..edges.len())];
        let pos = rng.gen_range(0..cs.count(e) - 1);
        let curves = cs.curves(tri);
        let owner = |p: u32| curves.iter().position(|c| c.iter().any(|x| x.edge == e && x.pos == p)).unwrap();
        let on_one = owner(pos) == owner(pos + 1);
        let out = surgery(tri, &cs, e, pos).unwrap();
        let after = out.system.curve_count(tri);
        let ok = out.same_track == on_one
            && if on_one { after == curves.len() + 1 } else { after + 1 == curves.len() };
        checked += 1;
        if on_one {
            same += 1;
        } else {
            distinct += 1;
        }
        bad += usize::from(!ok);
    }
    Outcome {
        pass: checked >= SURGERY_SYSTEMS && same > 0 && distinct > 0 && bad == 0,
        detail: format!("{checked} surgeries ({same} same-track, {distinct} distinct-track), {bad} parity violations"),
    }
}

fn oracle_maximality() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for spec in [GeneratorSpec::Tetrahedron, GeneratorSpec::Bipyramid(3), GeneratorSpec::Octahedron] {
        let t = generate(spec, 0).unwrap();
        let s = build_maximal(&t, seed_vertex_links(&t)).unwrap();
        match oracle_extensions(&t, &s, ORACLE_BOUND) {
            Ok(ext) => {
                pass &= ext.is_empty();
                parts.push(format!("{spec}: {} tracks, {} extensions", s.track_count(), ext.len()));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{spec}: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: pass && elapsed < ORACLE_LIMIT,
        detail: format!("bound {ORACLE_BOUND}; {}; {:.1} s", parts.join("; "), elapsed.as_secs_f64()),
    }
}

fn edge_paths() -> Outcome {
    let cfg = corpus_cfg();
    let results = map_ordered((0..cfg.trials).collect(), None, |i| {
        let (_, _, tri) = trial_triangulation(&cfg, i);
        let tri = tri.ok()?;
        let s = build_maximal(&tri, seed_vertex_links(&tri)).ok()?;
        let mut bad = 0usize;
        for e in 0..tri.edge_count() {
            let Ok(path) = edge_path(&tri, &s.combined, e) else {
                bad += 1;
                continue;
            };
            let k = path.crossing_tracks.len();
            let same: Vec<usize> =
                (1..k).filter(|&j| path.crossing_tracks[j - 1] == path.crossing_tracks[j]).collect();
            let ok = path.start_degree == 1 && path.end_degree == 1 && path.backtracks == same;
            bad += usize::from(!ok);
        }
        Some((tri.edge_count(), bad))
    });
    let (mut edges, mut bad, mut missing) = (0, 0, 0);
    for r in results {
        match r {
            Some((e, b)) => {
                edges += e;
                bad += b;
            }
            None => missing += 1,
        }
    }
    Outcome {
        pass: missing == 0 && bad == 0,
        detail: format!("{edges} edges over {CORPUS_TRIALS} patterns, {bad} violations, {missing} trials failed to build"),
    }
}

fn main() {
    let mut all = true;
    let mut run = |id, name, o: Outcome| {
        report(id, name, &o);
        all &= o.pass;
    };
    run(1, "tetrahedron golden case", golden());
    let (c2, c3) = counting_and_profiles();
    run(2, "counting law", c2);
    run(3, "region profile suite", c3);
    run(4, "rewrite laws", rewrite_laws());
    run(5, "surgery parity", surgery_parity());
    run(6, "oracle maximality", oracle_maximality());
    run(7, "edge-path property", edge_paths());
    if !all {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
