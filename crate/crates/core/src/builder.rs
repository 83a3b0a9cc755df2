//! Growing a maximal pattern one track at a time, and an exhaustive oracle
//! over bounded weight vectors used to certify maximality.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::curves::{extract_tracks, realize, track_multiset, Chord, CurveSystem};
use crate::dual::{decompose, RegionDecomposition};
use crate::error::{Error, Result};
use crate::par::map_ordered;
use crate::pattern::{is_pattern, vertex_link, PatternCoords};
use crate::rewrite::{bridge, normalize, surgery};
use crate::surface::{EdgeId, Triangulation};

/// Default ceiling on `(bound + 1)^e` for [`oracle_enumerate_tracks`].
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 28;
pub const ORACLE_CAP_ENV: &str = "TRACKLAB_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Seed,
    Bridge,
    DistinctSurgery,
    SameSurgery,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub kind: MoveKind,
    /// Region that was failing when the track was found.
    pub region: Option<usize>,
    pub edge: Option<String>,
    pub segment: Option<u32>,
    pub track_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuilderState {
    /// Pairwise distinct, mutually disjoint tracks.
    pub registry: Vec<PatternCoords>,
    pub combined: PatternCoords,
    pub trace: Vec<TraceStep>,
}

impl BuilderState {
    pub fn track_count(&self) -> usize {
        self.registry.len()
    }

    fn push(&mut self, w: PatternCoords, step: TraceStep) {
        self.combined = &self.combined + &w;
        self.registry.push(w);
        self.trace.push(step);
    }
}

/// All vertex links, one track per vertex.
pub fn seed_vertex_links(tri: &Triangulation) -> BuilderState {
    let mut s = BuilderState { registry: Vec::new(), combined: PatternCoords::zero(tri), trace: Vec::new() };
    for v in 0..tri.vertex_count() {
        let w = vertex_link(tri, v).expect("vertex in range");
        let track_size = w.total();
        s.push(w, TraceStep { kind: MoveKind::Seed, region: None, edge: None, segment: None, track_size });
    }
    s
}

/// True iff `t` is not already registered and adding it to the combined
/// pattern yields exactly the registered tracks plus `t`.
pub fn extends_registry(tri: &Triangulation, registry: &[PatternCoords], combined: &PatternCoords, t: &PatternCoords) -> bool {
    if t.is_zero() || registry.contains(t) {
        return false;
    }
    let Ok(cs) = realize(tri, &(combined + t)) else { return false };
    let Ok(tracks) = extract_tracks(tri, &cs) else { return false };
    if tracks.len() != registry.len() + 1 {
        return false;
    }
    let got = track_multiset(&tracks);
    let mut want: BTreeSet<&PatternCoords> = registry.iter().collect();
    want.insert(t);
    got.len() == want.len() && got.iter().all(|(w, &k)| k == 1 && want.contains(w))
}

fn is_good(rd: &RegionDecomposition, r: usize) -> bool {
    let p = rd.profile(r);
    p.is_vertex_disc() || p.is_pants()
}

fn chord_track(rd: &RegionDecomposition, c: &Chord) -> usize {
    rd.crossing_track[c.a.edge][c.a.pos as usize]
}

/// Candidate systems for one segment, tier by tier.
fn candidates(
    tri: &Triangulation,
    cs: &CurveSystem,
    rd: &RegionDecomposition,
    edge: EdgeId,
    seg: u32,
) -> Vec<(MoveKind, CurveSystem)> {
    let mut out = Vec::new();
    let [p0, p1] = rd.segment_pieces[edge][seg as usize];
    let far = |p: usize| -> Vec<Chord> {
        let mut v: Vec<Chord> = rd.pieces[p].chords.iter().copied().filter(|c| !c.touches_edge(edge)).collect();
        v.sort_by_key(|c| (chord_track(rd, c), *c));
        v
    };
    let mut pairs: Vec<(usize, usize, Chord, Chord)> = Vec::new();
    for c0 in far(p0) {
        for c1 in far(p1) {
            let (t0, t1) = (chord_track(rd, &c0), chord_track(rd, &c1));
            if t0 != t1 {
                pairs.push((t0.min(t1), t0.max(t1), c0, c1));
            }
        }
    }
    pairs.sort();
    for (_, _, c0, c1) in pairs {
        if let Ok(next) = bridge(tri, cs, edge, seg, c0, c1) {
            out.push((MoveKind::Bridge, next));
        }
    }
    let k = cs.count(edge);
    if seg >= 1 && seg < k {
        let pos = seg - 1;
        if let Ok(o) = surgery(tri, cs, edge, pos) {
            let kind = if o.same_track { MoveKind::SameSurgery } else { MoveKind::DistinctSurgery };
            out.push((kind, o.system));
        }
    }
    // distinct-track surgeries before same-track ones
    out.sort_by_key(|(k, _)| match k {
        MoveKind::Bridge => 0,
        MoveKind::DistinctSurgery => 1,
        _ => 2,
    });
    out
}

/// Try to add one track. Returns the new state and whether it changed.
pub fn extend_once(tri: &Triangulation, state: &BuilderState) -> Result<(BuilderState, bool)> {
    let cs = realize(tri, &state.combined)?;
    let rd = decompose(tri, &cs)?;
    let failing: Vec<usize> = (0..rd.region_count()).filter(|&r| !is_good(&rd, r)).collect();
    let Some(&first_bad) = failing.first() else {
        return Ok((state.clone(), false));
    };
    let registered: BTreeSet<&PatternCoords> = state.registry.iter().collect();
    for &r in &failing {
        for edge in 0..tri.edge_count() {
            for seg in 0..=cs.count(edge) {
                if rd.segment_region(edge, seg) != r {
                    continue;
                }
                for (kind, cand) in candidates(tri, &cs, &rd, edge, seg) {
                    let (normal, _) = normalize(tri, &cand);
                    let Ok(tracks) = extract_tracks(tri, &normal) else { continue };
                    for t in tracks {
                        if registered.contains(&t.weights) {
                            continue;
                        }
                        if extends_registry(tri, &state.registry, &state.combined, &t.weights) {
                            let mut next = state.clone();
                            let track_size = t.weights.total();
                            next.push(
                                t.weights,
                                TraceStep {
                                    kind,
                                    region: Some(r),
                                    edge: Some(tri.edge_label(edge)),
                                    segment: Some(seg),
                                    track_size,
                                },
                            );
                            return Ok((next, true));
                        }
                    }
                }
            }
        }
    }
    Err(Error::InternalNoProgress { region: first_bad })
}

/// Extend `seed` until every region is a vertex disc or a pair of pants.
/// Usually seeded with [`seed_vertex_links`].
pub fn build_maximal(tri: &Triangulation, seed: BuilderState) -> Result<BuilderState> {
    let mut state = seed;
    // a pattern never holds more than 2v - 3 disjoint non-parallel tracks
    for _ in 0..=tri.edge_count() {
        let (next, changed) = extend_once(tri, &state)?;
        if !changed {
            return Ok(next);
        }
        state = next;
    }
    Err(Error::InternalNoProgress { region: 0 })
}

fn oracle_cap() -> u128 {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

struct Enumerator<'a> {
    tri: &'a Triangulation,
    bound: u32,
    /// Faces whose last edge (by id) is the key.
    closing: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn face_ok(&self, w: &[u32], f: usize) -> bool {
        let [x, y, z] = self.tri.face_edges(f).map(|e| w[e]);
        (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y
    }

    fn run(&self, w: &mut Vec<u32>, out: &mut Vec<PatternCoords>) {
        let e = w.len();
        if e == self.tri.edge_count() {
            let p = PatternCoords::from_weights(w.clone());
            if p.is_zero() {
                return;
            }
            if let Ok(cs) = realize(self.tri, &p) {
                if cs.curve_count(self.tri) == 1 {
                    out.push(p);
                }
            }
            return;
        }
        for x in 0..=self.bound {
            w.push(x);
            if self.closing[e].iter().all(|&f| self.face_ok(w, f)) {
                self.run(w, out);
            }
            w.pop();
        }
    }
}

/// Every single-track pattern with all weights at most `bound`, sorted.
/// Refuses when `(bound + 1)^e` exceeds the cap from `TRACKLAB_ORACLE_CAP`.
pub fn oracle_enumerate_tracks(tri: &Triangulation, bound: u32) -> Result<Vec<PatternCoords>> {
    let e = tri.edge_count();
    let requested = (u128::from(bound) + 1).checked_pow(e as u32).unwrap_or(u128::MAX);
    let cap = oracle_cap();
    if requested > cap {
        return Err(Error::BoundTooLarge { requested, cap });
    }
    let mut closing = vec![Vec::new(); e];
    for f in 0..tri.face_count() {
        let last = tri.face_edges(f).into_iter().max().expect("three edges");
        closing[last].push(f);
    }
    let en = Enumerator { tri, bound, closing };
    // shard on the first two edges
    let depth = e.min(2);
    let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let shards = map_ordered(prefixes, None, |mut w| {
        let mut out = Vec::new();
        let ok = (0..w.len()).all(|i| en.closing[i].iter().all(|&f| en.face_ok(&w[..=i], f)));
        if ok {
            en.run(&mut w, &mut out);
        }
        out
    });
    let mut all: Vec<PatternCoords> = shards.into_iter().flatten().collect();
    all.sort();
    debug_assert!(all.iter().all(|p| is_pattern(tri, p)));
    Ok(all)
}

/// Oracle tracks up to `bound` that would extend the state.
pub fn oracle_extensions(tri: &Triangulation, state: &BuilderState, bound: u32) -> Result<Vec<PatternCoords>> {
    let tracks = oracle_enumerate_tracks(tri, bound)?;
    let hits = map_ordered(tracks, None, |t| {
        extends_registry(tri, &state.registry, &state.combined, &t).then_some(t)
    });
    Ok(hits.into_iter().flatten().collect())
}
