//! Rewriting curve systems: returning-arc removal, normalization, surgery at
//! adjacent crossings, and the two band moves used to build test inputs and
//! new tracks.

use serde::Serialize;

use crate::curves::{chords_nest, Chord, Crossing, CurveSystem};
use crate::error::{Error, Result};
use crate::surface::{EdgeId, FaceId, Triangulation};

/// A chord with both ends on one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ReturningArc {
    pub edge: EdgeId,
    pub low: u32,
    pub high: u32,
    pub face: FaceId,
    /// Endpoints are adjacent on the edge, so nothing lies between them.
    pub innermost: bool,
}

impl ReturningArc {
    pub fn chord(&self) -> Chord {
        Chord::new(Crossing::new(self.edge, self.low), Crossing::new(self.edge, self.high))
    }
}

/// All returning arcs, ordered by edge, then lower endpoint.
pub fn find_returning_arcs(cs: &CurveSystem) -> Vec<ReturningArc> {
    let mut out: Vec<_> = (0..cs.face_count())
        .flat_map(|f| {
            cs.chords(f).iter().filter(|c| c.is_returning()).map(move |c| ReturningArc {
                edge: c.a.edge,
                low: c.a.pos,
                high: c.b.pos,
                face: f,
                innermost: c.b.pos == c.a.pos + 1,
            })
        })
        .collect();
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub system: CurveSystem,
    /// The arc closed up with its partner in the other face, and the whole
    /// two-crossing curve vanished.
    pub annihilated: bool,
}

/// Remove an innermost returning arc in `face`: its two crossings disappear
/// and the two chords they fed in the neighbouring face merge into one.
pub fn remove_returning_arc(tri: &Triangulation, cs: &CurveSystem, face: FaceId, chord: Chord) -> Result<Removal> {
    if !cs.fits(tri) {
        return Err(Error::MismatchedTriangulation);
    }
    if !chord.is_returning() {
        return Err(Error::NotReturning);
    }
    if !cs.chords(face).contains(&chord) {
        return Err(Error::InvalidCurveSystem(format!("no such chord in face {:?}", tri.face(face))));
    }
    if chord.b.pos != chord.a.pos + 1 {
        return Err(Error::NotInnermost);
    }
    let (p, q) = (chord.a, chord.b);
    let edge = p.edge;
    let other = tri.other_face(edge, face);
    let mut chords = cs.all_chords();
    chords[face].retain(|c| *c != chord);
    let cp = chord_at(&chords[other], p);
    let cq = chord_at(&chords[other], q);
    let annihilated = cp == cq;
    chords[other].retain(|c| *c != cp && *c != cq);
    if !annihilated {
        chords[other].push(Chord::new(cp.other(p), cq.other(q)));
    }
    let system = delete_pair(cs, chords, edge, p.pos);
    debug_assert!(system.validate(tri).is_ok());
    Ok(Removal { system, annihilated })
}

fn chord_at(list: &[Chord], c: Crossing) -> Chord {
    *list.iter().find(|ch| ch.a == c || ch.b == c).expect("every crossing has a chord in each face")
}

/// Drop crossings `pos` and `pos + 1` of `edge`, shifting later positions.
fn delete_pair(cs: &CurveSystem, chords: Vec<Vec<Chord>>, edge: EdgeId, pos: u32) -> CurveSystem {
    let mut counts = cs.counts().to_vec();
    counts[edge] -= 2;
    let shift = |c: Crossing| {
        if c.edge == edge && c.pos > pos + 1 {
            Crossing::new(edge, c.pos - 2)
        } else {
            c
        }
    };
    let chords = chords
        .into_iter()
        .map(|l| l.into_iter().map(|ch| Chord::new(shift(ch.a), shift(ch.b))).collect())
        .collect();
    CurveSystem::raw(counts, chords)
}

/// Open a gap of two crossings at `gap` on `edge` (between old positions
/// `gap - 1` and `gap`); returns the shifted chords and the two new crossings.
fn open_gap(cs: &CurveSystem, edge: EdgeId, gap: u32) -> (Vec<u32>, Vec<Vec<Chord>>, Crossing, Crossing) {
    let mut counts = cs.counts().to_vec();
    counts[edge] += 2;
    let shift = |c: Crossing| {
        if c.edge == edge && c.pos >= gap {
            Crossing::new(edge, c.pos + 2)
        } else {
            c
        }
    };
    let chords = cs
        .all_chords()
        .into_iter()
        .map(|l| l.into_iter().map(|ch| Chord::new(shift(ch.a), shift(ch.b))).collect())
        .collect();
    (counts, chords, Crossing::new(edge, gap), Crossing::new(edge, gap + 1))
}

/// Statistics from a normalization run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RewriteReport {
    pub steps: usize,
    pub crossings_removed: u64,
    pub annihilated_curves: usize,
    pub final_normal: bool,
}

/// Remove innermost returning arcs until none are left, always taking the
/// lowest `(edge, position)` first.
pub fn normalize(tri: &Triangulation, cs: &CurveSystem) -> (CurveSystem, RewriteReport) {
    normalize_with(tri, cs, |_| 0)
}

/// Like [`normalize`], but `choose` picks which innermost arc (an index into
/// the slice it is given) to remove at each step.
pub fn normalize_with(
    tri: &Triangulation,
    cs: &CurveSystem,
    mut choose: impl FnMut(&[ReturningArc]) -> usize,
) -> (CurveSystem, RewriteReport) {
    let mut cur = cs.clone();
    let mut report = RewriteReport::default();
    loop {
        let innermost: Vec<_> = find_returning_arcs(&cur).into_iter().filter(|a| a.innermost).collect();
        if innermost.is_empty() {
            break;
        }
        let arc = innermost[choose(&innermost).min(innermost.len() - 1)];
        let r = remove_returning_arc(tri, &cur, arc.face, arc.chord()).expect("innermost arc is removable");
        report.steps += 1;
        report.crossings_removed += 2;
        report.annihilated_curves += usize::from(r.annihilated);
        cur = r.system;
    }
    report.final_normal = cur.is_normal();
    (cur, report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryOutcome {
    pub system: CurveSystem,
    /// The two crossings were on one curve, which splits in two; otherwise
    /// two curves merge into one.
    pub same_track: bool,
}

/// Cut out the adjacent crossings `pos`, `pos + 1` of `edge` and reconnect
/// their chord ends with arcs running parallel to the edge, in both faces.
/// The result may contain returning arcs.
pub fn surgery(tri: &Triangulation, cs: &CurveSystem, edge: EdgeId, pos: u32) -> Result<SurgeryOutcome> {
    if !cs.fits(tri) {
        return Err(Error::MismatchedTriangulation);
    }
    if edge >= tri.edge_count() {
        return Err(Error::UnknownEdge(format!("edge id {edge}")));
    }
    if !cs.is_normal() {
        return Err(Error::NotNormal);
    }
    if pos + 1 >= cs.count(edge) {
        return Err(Error::NoAdjacentPair { edge: tri.edge_label(edge), pos: pos as usize });
    }
    let (a, b) = (Crossing::new(edge, pos), Crossing::new(edge, pos + 1));
    let (ids, _) = cs.curve_ids(tri);
    let same_track = ids[edge][pos as usize] == ids[edge][pos as usize + 1];
    let mut chords = cs.all_chords();
    for f in tri.edge_faces(edge) {
        let ca = chord_at(&chords[f], a);
        let cb = chord_at(&chords[f], b);
        chords[f].retain(|c| *c != ca && *c != cb);
        chords[f].push(Chord::new(ca.other(a), cb.other(b)));
    }
    let system = delete_pair(cs, chords, edge, pos);
    debug_assert!(system.validate(tri).is_ok());
    Ok(SurgeryOutcome { system, same_track })
}

/// Replace `chord = (x, y)` in `face` by `(x, A)`, `(y, B)` (or the swapped
/// pairing, whichever keeps the face embedded).
fn split_chord(
    tri: &Triangulation,
    counts: &[u32],
    chords: &mut [Vec<Chord>],
    face: FaceId,
    chord: Chord,
    a: Crossing,
    b: Crossing,
) -> Result<()> {
    let base: Vec<Chord> = chords[face].iter().copied().filter(|c| *c != chord).collect();
    for (p, q) in [(a, b), (b, a)] {
        let mut trial = base.clone();
        trial.push(Chord::new(chord.a, p));
        trial.push(Chord::new(chord.b, q));
        if chords_nest(tri, counts, face, &trial) {
            chords[face] = trial;
            return Ok(());
        }
    }
    Err(Error::NotEmbeddable(format!(
        "chord cannot reach the gap inside face {:?}",
        tri.face(face)
    )))
}

fn shifted(c: Crossing, edge: EdgeId, gap: u32) -> Crossing {
    if c.edge == edge && c.pos >= gap {
        Crossing::new(edge, c.pos + 2)
    } else {
        c
    }
}

/// Finger move: push `chord` of `face` across its side `edge` at `gap`,
/// creating an innermost returning arc in the neighbouring face. This is
/// the inverse of [`remove_returning_arc`].
pub fn push_across(
    tri: &Triangulation,
    cs: &CurveSystem,
    face: FaceId,
    chord: Chord,
    edge: EdgeId,
    gap: u32,
) -> Result<CurveSystem> {
    if !tri.face_has_edge(face, edge) || gap > cs.count(edge) {
        return Err(Error::NotEmbeddable("gap is not on this face".into()));
    }
    if !cs.chords(face).contains(&chord) {
        return Err(Error::InvalidCurveSystem("no such chord".into()));
    }
    let (counts, mut chords, a, b) = open_gap(cs, edge, gap);
    let moved = Chord::new(shifted(chord.a, edge, gap), shifted(chord.b, edge, gap));
    split_chord(tri, &counts, &mut chords, face, moved, a, b)?;
    chords[tri.other_face(edge, face)].push(Chord::new(a, b));
    let out = CurveSystem::raw(counts, chords);
    out.validate(tri)?;
    Ok(out)
}

/// Insert a small closed curve around the interior of `edge` at `gap`.
pub fn insert_null_curve(tri: &Triangulation, cs: &CurveSystem, edge: EdgeId, gap: u32) -> Result<CurveSystem> {
    if gap > cs.count(edge) {
        return Err(Error::NotEmbeddable("gap out of range".into()));
    }
    let (counts, mut chords, a, b) = open_gap(cs, edge, gap);
    for f in tri.edge_faces(edge) {
        chords[f].push(Chord::new(a, b));
    }
    let out = CurveSystem::raw(counts, chords);
    out.validate(tri)?;
    Ok(out)
}

/// Band move across an edge: join `chord0` (in the first face of `edge`) to
/// `chord1` (in the second face) by a band that crosses `edge` through the
/// segment `gap`. When the chords belong to different curves they merge.
/// Cutting the result at the two new crossings by [`surgery`] undoes it.
pub fn bridge(
    tri: &Triangulation,
    cs: &CurveSystem,
    edge: EdgeId,
    gap: u32,
    chord0: Chord,
    chord1: Chord,
) -> Result<CurveSystem> {
    let [f0, f1] = tri.edge_faces(edge);
    if gap > cs.count(edge) {
        return Err(Error::NotEmbeddable("gap out of range".into()));
    }
    if !cs.chords(f0).contains(&chord0) || !cs.chords(f1).contains(&chord1) {
        return Err(Error::InvalidCurveSystem("no such chord".into()));
    }
    let (counts, mut chords, a, b) = open_gap(cs, edge, gap);
    let c0 = Chord::new(shifted(chord0.a, edge, gap), shifted(chord0.b, edge, gap));
    let c1 = Chord::new(shifted(chord1.a, edge, gap), shifted(chord1.b, edge, gap));
    split_chord(tri, &counts, &mut chords, f0, c0, a, b)?;
    split_chord(tri, &counts, &mut chords, f1, c1, a, b)?;
    let out = CurveSystem::raw(counts, chords);
    out.validate(tri)?;
    Ok(out)
}
