//! Embedded curve systems and track extraction.
//!
//! A [`CurveSystem`] records, for every edge, how many crossings lie on it
//! (positions `0..count`, counted from the smaller endpoint) and, for every
//! face, the chords joining pairs of crossings on its boundary. Each
//! crossing carries exactly one chord in each of the two faces at its edge,
//! so the chords close up into disjoint simple closed curves. Chords with
//! both ends on one edge (returning arcs) are allowed; a system without
//! them is *normal*.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{corners_of, ensure_pattern, face_weights, PatternCoords};
use crate::surface::{EdgeId, FaceId, Triangulation, VertexId};

/// A point where a curve meets an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: EdgeId,
    pub pos: u32,
}

impl Crossing {
    pub fn new(edge: EdgeId, pos: u32) -> Self {
        Self { edge, pos }
    }
}

/// An arc inside one face joining two boundary crossings. Endpoints are
/// stored in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: Crossing,
    pub b: Crossing,
}

impl Chord {
    pub fn new(x: Crossing, y: Crossing) -> Self {
        if x <= y {
            Self { a: x, b: y }
        } else {
            Self { a: y, b: x }
        }
    }

    pub fn is_returning(&self) -> bool {
        self.a.edge == self.b.edge
    }

    pub fn touches_edge(&self, e: EdgeId) -> bool {
        self.a.edge == e || self.b.edge == e
    }

    pub fn other(&self, c: Crossing) -> Crossing {
        if self.a == c {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveSystem {
    counts: Vec<u32>,
    chords: Vec<Vec<Chord>>,
}

/// Crossing adjacency: `mates[g][slot]` is the crossing joined to `g` by its
/// chord in the `slot`-th face of `g`'s edge.
pub(crate) struct Links {
    offsets: Vec<usize>,
    crossings: Vec<Crossing>,
    mates: Vec<[usize; 2]>,
}

impl Links {
    pub(crate) fn id(&self, c: Crossing) -> usize {
        self.offsets[c.edge] + c.pos as usize
    }

    pub(crate) fn crossing(&self, g: usize) -> Crossing {
        self.crossings[g]
    }

    pub(crate) fn len(&self) -> usize {
        self.crossings.len()
    }

    pub(crate) fn mate(&self, g: usize, slot: usize) -> usize {
        self.mates[g][slot]
    }
}

/// Position of a crossing along the boundary of `face`, walking
/// `a -> b -> c -> a` for face vertices `a < b < c`.
pub(crate) fn boundary_coord(tri: &Triangulation, counts: &[u32], face: FaceId, c: Crossing) -> u64 {
    let [bc, ac, ab] = tri.face_edges(face);
    const SIDE: u64 = 1 << 32;
    if c.edge == ab {
        u64::from(c.pos)
    } else if c.edge == bc {
        SIDE + u64::from(c.pos)
    } else {
        debug_assert_eq!(c.edge, ac);
        2 * SIDE + u64::from(counts[ac] - 1 - c.pos)
    }
}

impl CurveSystem {
    pub fn empty(tri: &Triangulation) -> Self {
        Self { counts: vec![0; tri.edge_count()], chords: vec![Vec::new(); tri.face_count()] }
    }

    /// Assemble a system from raw parts, checking every invariant.
    pub fn from_parts(tri: &Triangulation, counts: Vec<u32>, chords: Vec<Vec<Chord>>) -> Result<Self> {
        let cs = Self::raw(counts, chords);
        cs.validate(tri)?;
        Ok(cs)
    }

    pub(crate) fn raw(counts: Vec<u32>, mut chords: Vec<Vec<Chord>>) -> Self {
        for list in &mut chords {
            list.sort_unstable();
        }
        Self { counts, chords }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, e: EdgeId) -> u32 {
        self.counts[e]
    }

    pub fn chords(&self, face: FaceId) -> &[Chord] {
        &self.chords[face]
    }

    pub fn face_count(&self) -> usize {
        self.chords.len()
    }

    pub(crate) fn all_chords(&self) -> Vec<Vec<Chord>> {
        self.chords.clone()
    }

    pub fn total_crossings(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Crossing counts as a weight vector.
    pub fn weights(&self) -> PatternCoords {
        PatternCoords::from_weights(self.counts.clone())
    }

    pub fn is_normal(&self) -> bool {
        self.chords.iter().flatten().all(|c| !c.is_returning())
    }

    pub fn fits(&self, tri: &Triangulation) -> bool {
        self.counts.len() == tri.edge_count() && self.chords.len() == tri.face_count()
    }

    /// Check the two-chords-per-crossing and non-crossing invariants.
    pub fn validate(&self, tri: &Triangulation) -> Result<()> {
        if !self.fits(tri) {
            return Err(Error::MismatchedTriangulation);
        }
        let bad = |m: String| Err(Error::InvalidCurveSystem(m));
        let mut seen: Vec<Vec<[u8; 2]>> = self.counts.iter().map(|&k| vec![[0, 0]; k as usize]).collect();
        for (f, list) in self.chords.iter().enumerate() {
            for ch in list {
                for c in [ch.a, ch.b] {
                    if c.edge >= self.counts.len() || c.pos >= self.counts[c.edge] {
                        return bad(format!("chord endpoint {c:?} does not exist"));
                    }
                    if !tri.face_has_edge(f, c.edge) {
                        return bad(format!("chord endpoint {c:?} is not on face {:?}", tri.face(f)));
                    }
                    let slot = usize::from(tri.edge_faces(c.edge)[1] == f);
                    seen[c.edge][c.pos as usize][slot] += 1;
                }
                if ch.a == ch.b {
                    return bad(format!("chord {ch:?} is a loop"));
                }
            }
            if !chords_nest(tri, &self.counts, f, list) {
                return bad(format!("chords cross inside face {:?}", tri.face(f)));
            }
        }
        for (e, marks) in seen.iter().enumerate() {
            for (pos, m) in marks.iter().enumerate() {
                if *m != [1, 1] {
                    return bad(format!(
                        "crossing {}@{pos} has chord counts {m:?} in its two faces",
                        tri.edge_label(e)
                    ));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn links(&self, tri: &Triangulation) -> Links {
        let mut offsets = Vec::with_capacity(self.counts.len());
        let mut crossings = Vec::new();
        for (e, &k) in self.counts.iter().enumerate() {
            offsets.push(crossings.len());
            crossings.extend((0..k).map(|p| Crossing::new(e, p)));
        }
        let mut links = Links { mates: vec![[usize::MAX; 2]; crossings.len()], offsets, crossings };
        for (f, list) in self.chords.iter().enumerate() {
            for ch in list {
                let (ga, gb) = (links.id(ch.a), links.id(ch.b));
                let sa = usize::from(tri.edge_faces(ch.a.edge)[1] == f);
                let sb = usize::from(tri.edge_faces(ch.b.edge)[1] == f);
                links.mates[ga][sa] = gb;
                links.mates[gb][sb] = ga;
            }
        }
        links
    }

    /// Decompose into closed curves. Each curve starts at its smallest
    /// crossing and first follows the chord in the lower-numbered face;
    /// curves are ordered by starting crossing.
    pub fn curves(&self, tri: &Triangulation) -> Vec<Vec<Crossing>> {
        let links = self.links(tri);
        let mut visited = vec![false; links.len()];
        let mut out = Vec::new();
        for start in 0..links.len() {
            if visited[start] {
                continue;
            }
            let mut curve = Vec::new();
            let (mut cur, mut slot) = (start, 0);
            loop {
                visited[cur] = true;
                curve.push(links.crossing(cur));
                let face = tri.edge_faces(links.crossing(cur).edge)[slot];
                let next = links.mate(cur, slot);
                if next == start {
                    break;
                }
                let ne = links.crossing(next).edge;
                slot = usize::from(tri.edge_faces(ne)[0] == face);
                cur = next;
            }
            out.push(curve);
        }
        out
    }

    pub fn curve_count(&self, tri: &Triangulation) -> usize {
        self.curves(tri).len()
    }

    /// Curve index of every crossing, keyed by `(edge, pos)`.
    pub(crate) fn curve_ids(&self, tri: &Triangulation) -> (Vec<Vec<usize>>, usize) {
        let curves = self.curves(tri);
        let mut ids: Vec<Vec<usize>> = self.counts.iter().map(|&k| vec![0; k as usize]).collect();
        for (i, c) in curves.iter().enumerate() {
            for x in c {
                ids[x.edge][x.pos as usize] = i;
            }
        }
        (ids, curves.len())
    }

    /// Keep only the crossings accepted by `keep`, re-indexing positions.
    /// Chords with a dropped endpoint are dropped; callers drop whole curves.
    pub(crate) fn retain(&self, keep: impl Fn(Crossing) -> bool) -> Self {
        let mut new_pos: Vec<Vec<Option<u32>>> = Vec::with_capacity(self.counts.len());
        let mut counts = Vec::with_capacity(self.counts.len());
        for (e, &k) in self.counts.iter().enumerate() {
            let mut next = 0;
            let v = (0..k)
                .map(|p| {
                    keep(Crossing::new(e, p)).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            new_pos.push(v);
            counts.push(next);
        }
        let map = |c: Crossing| new_pos[c.edge][c.pos as usize].map(|p| Crossing::new(c.edge, p));
        let chords = self
            .chords
            .iter()
            .map(|list| {
                list.iter()
                    .filter_map(|ch| Some(Chord::new(map(ch.a)?, map(ch.b)?)))
                    .collect()
            })
            .collect();
        Self::raw(counts, chords)
    }

    /// The subsystem made of the listed curves (indices into [`Self::curves`]).
    pub fn select_curves(&self, tri: &Triangulation, which: &[usize]) -> Self {
        let (ids, _) = self.curve_ids(tri);
        self.retain(|c| which.contains(&ids[c.edge][c.pos as usize]))
    }

    /// Build from cyclic crossing sequences. The face of each chord is
    /// inferred: a chord between two edges lies in their common face, and
    /// consecutive chords at a crossing use the two faces of its edge.
    pub fn from_curves(tri: &Triangulation, curves: &[Vec<Crossing>]) -> Result<Self> {
        let mut counts = vec![0u32; tri.edge_count()];
        for c in curves.iter().flatten() {
            if c.edge >= tri.edge_count() {
                return Err(Error::UnknownEdge(format!("edge id {}", c.edge)));
            }
            counts[c.edge] = counts[c.edge].max(c.pos + 1);
        }
        let mut chords = vec![Vec::new(); tri.face_count()];
        for curve in curves {
            let n = curve.len();
            if n < 2 {
                return Err(Error::InvalidCurveSystem(format!("curve of length {n}")));
            }
            let common_face = |x: Crossing, y: Crossing| -> Result<Option<FaceId>> {
                if x.edge == y.edge {
                    return Ok(None);
                }
                let [f0, f1] = tri.edge_faces(x.edge);
                if tri.face_has_edge(f0, y.edge) {
                    Ok(Some(f0))
                } else if tri.face_has_edge(f1, y.edge) {
                    Ok(Some(f1))
                } else {
                    Err(Error::InvalidCurveSystem(format!(
                        "consecutive crossings on {} and {} share no face",
                        tri.edge_label(x.edge),
                        tri.edge_label(y.edge)
                    )))
                }
            };
            // face of chord i joins curve[i] and curve[i+1]
            let mut faces: Vec<Option<FaceId>> = Vec::with_capacity(n);
            for i in 0..n {
                faces.push(common_face(curve[i], curve[(i + 1) % n])?);
            }
            let anchor = faces.iter().position(Option::is_some);
            let start = anchor.unwrap_or(0);
            if anchor.is_none() {
                faces[0] = Some(tri.edge_faces(curve[0].edge)[0]);
            }
            for step in 1..=n {
                let i = (start + step) % n;
                let prev = faces[(i + n - 1) % n].expect("propagated");
                let forced = tri.other_face(curve[i].edge, prev);
                if !tri.face_has_edge(prev, curve[i].edge) {
                    return Err(Error::InvalidCurveSystem("inconsistent chord faces".into()));
                }
                match faces[i] {
                    Some(f) if f != forced => {
                        return Err(Error::InvalidCurveSystem(format!(
                            "crossing {}@{} would need two chords in one face",
                            tri.edge_label(curve[i].edge),
                            curve[i].pos
                        )))
                    }
                    _ => faces[i] = Some(forced),
                }
            }
            for i in 0..n {
                let f = faces[i].expect("assigned");
                chords[f].push(Chord::new(curve[i], curve[(i + 1) % n]));
            }
        }
        Self::from_parts(tri, counts, chords)
    }

    pub fn to_json(&self, tri: &Triangulation) -> CurveSystemJson {
        CurveSystemJson {
            curves: self
                .curves(tri)
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|x| CrossingJson { edge: tri.edge_label(x.edge), pos: x.pos })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(tri: &Triangulation, j: &CurveSystemJson) -> Result<Self> {
        let curves = j
            .curves
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| Ok(Crossing::new(tri.parse_edge(&x.edge)?, x.pos)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_curves(tri, &curves)
    }

    pub fn from_json_str(tri: &Triangulation, s: &str) -> Result<Self> {
        let j: CurveSystemJson = serde_json::from_str(s)?;
        Self::from_json(tri, &j)
    }
}

/// True iff the chords of `face` are pairwise non-crossing: reading
/// endpoints around the boundary must give a balanced bracket sequence.
pub(crate) fn chords_nest(tri: &Triangulation, counts: &[u32], face: FaceId, chords: &[Chord]) -> bool {
    let mut ends: Vec<(u64, usize)> = chords
        .iter()
        .enumerate()
        .flat_map(|(i, ch)| {
            [(boundary_coord(tri, counts, face, ch.a), i), (boundary_coord(tri, counts, face, ch.b), i)]
        })
        .collect();
    ends.sort_unstable();
    let mut stack: Vec<usize> = Vec::new();
    for (_, i) in ends {
        if stack.last() == Some(&i) {
            stack.pop();
        } else {
            stack.push(i);
        }
    }
    stack.is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub edge: String,
    pub pos: u32,
}

/// On-disk curve format: `{"curves": [[{"edge": "u-v", "pos": k}, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystemJson {
    pub curves: Vec<Vec<CrossingJson>>,
}

/// Canonical normal realization of a pattern: arcs around each corner are
/// nested, the `i`-th from the corner on one edge joined to the `i`-th from
/// the corner on the other.
pub fn realize(tri: &Triangulation, p: &PatternCoords) -> Result<CurveSystem> {
    ensure_pattern(tri, p)?;
    let counts = p.weights().to_vec();
    let mut chords = Vec::with_capacity(tri.face_count());
    for f in 0..tri.face_count() {
        let verts = tri.face(f);
        let fe = tri.face_edges(f);
        let t = corners_of(face_weights(tri, p, f));
        let mut list = Vec::new();
        for i in 0..3 {
            let x = verts[i];
            let (e1, e2) = (fe[(i + 1) % 3], fe[(i + 2) % 3]);
            for k in 0..t[i] {
                list.push(Chord::new(
                    Crossing::new(e1, pos_from(tri, &counts, x, e1, k)),
                    Crossing::new(e2, pos_from(tri, &counts, x, e2, k)),
                ));
            }
        }
        chords.push(list);
    }
    let cs = CurveSystem::raw(counts, chords);
    debug_assert!(cs.validate(tri).is_ok());
    Ok(cs)
}

/// Position of the `k`-th crossing of `e` counted from endpoint `x`.
fn pos_from(tri: &Triangulation, counts: &[u32], x: VertexId, e: EdgeId, k: u32) -> u32 {
    if tri.edge(e).0 == x {
        k
    } else {
        counts[e] - 1 - k
    }
}

/// One connected closed curve of a normal system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Track {
    pub crossings: Vec<Crossing>,
    pub weights: PatternCoords,
}

impl Track {
    /// Number of intersections with the 1-skeleton.
    pub fn n(&self) -> usize {
        self.crossings.len()
    }
}

fn curve_weights(tri: &Triangulation, curve: &[Crossing]) -> PatternCoords {
    let mut w = PatternCoords::zero(tri);
    for c in curve {
        w.set(c.edge, w.weight(c.edge) + 1);
    }
    w
}

pub fn extract_tracks(tri: &Triangulation, cs: &CurveSystem) -> Result<Vec<Track>> {
    if !cs.fits(tri) {
        return Err(Error::MismatchedTriangulation);
    }
    if !cs.is_normal() {
        return Err(Error::NotNormal);
    }
    Ok(cs
        .curves(tri)
        .into_iter()
        .map(|crossings| Track { weights: curve_weights(tri, &crossings), crossings })
        .collect())
}

/// Equivalent disjoint tracks are parallel; normal realizations are always
/// disjoint, so this compares weight vectors.
pub fn are_parallel(t1: &Track, t2: &Track) -> Result<bool> {
    if t1.weights.len() != t2.weights.len() {
        return Err(Error::MismatchedTriangulation);
    }
    Ok(t1.weights == t2.weights)
}

/// Track shapes on the boundary of a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrackKind {
    VertexLink3Track,
    Quad4Track,
    Octagon8Track,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrackClass {
    pub n: usize,
    /// Only assigned on the boundary of a tetrahedron.
    pub kind: Option<TrackKind>,
}

pub fn classify_track(tri: &Triangulation, t: &Track) -> TrackClass {
    TrackClass {
        n: t.n(),
        kind: tri.is_tetrahedron().then(|| tetrahedron_kind(tri, &t.weights)),
    }
}

pub(crate) fn tetrahedron_kind(tri: &Triangulation, w: &PatternCoords) -> TrackKind {
    let opposite = |e: EdgeId, g: EdgeId| {
        let ((a, b), (c, d)) = (tri.edge(e), tri.edge(g));
        a != c && a != d && b != c && b != d
    };
    let edges: Vec<EdgeId> = (0..tri.edge_count()).collect();
    let with = |k: u32| edges.iter().copied().filter(|&e| w.weight(e) == k).collect::<Vec<_>>();
    let (zeros, ones, twos) = (with(0), with(1), with(2));
    if ones.len() + zeros.len() == 6
        && ones.len() == 3
        && (0..tri.vertex_count()).any(|v| tri.vertex_edges(v).iter().all(|e| ones.contains(e)))
    {
        return TrackKind::VertexLink3Track;
    }
    if ones.len() == 4 && zeros.len() == 2 && opposite(zeros[0], zeros[1]) {
        return TrackKind::Quad4Track;
    }
    if ones.len() == 4 && twos.len() == 2 && opposite(twos[0], twos[1]) {
        return TrackKind::Octagon8Track;
    }
    TrackKind::Other
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternKind {
    Normal,
    AlmostNormal,
    Other,
}

/// Normal: every track is a 3- or 4-track. Almost normal: additionally
/// exactly one 8-track. The empty pattern counts as normal.
pub fn pattern_kind(tri: &Triangulation, p: &PatternCoords) -> Result<PatternKind> {
    if !tri.is_tetrahedron() {
        return Err(Error::UnsupportedTriangulation);
    }
    let tracks = extract_tracks(tri, &realize(tri, p)?)?;
    let mut eights = 0;
    for t in &tracks {
        match tetrahedron_kind(tri, &t.weights) {
            TrackKind::VertexLink3Track | TrackKind::Quad4Track => {}
            TrackKind::Octagon8Track => eights += 1,
            TrackKind::Other => return Ok(PatternKind::Other),
        }
    }
    Ok(match eights {
        0 => PatternKind::Normal,
        1 => PatternKind::AlmostNormal,
        _ => PatternKind::Other,
    })
}

/// Count of tracks of each weight vector.
pub fn track_multiset(tracks: &[Track]) -> BTreeMap<PatternCoords, usize> {
    let mut m = BTreeMap::new();
    for t in tracks {
        *m.entry(t.weights.clone()).or_insert(0) += 1;
    }
    m
}
