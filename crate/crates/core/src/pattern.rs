//! Patterns as edge-weight vectors.
//!
//! A pattern is determined up to isotopy by how many times it meets each
//! edge, so [`PatternCoords`] stores only that count. A weight vector is a
//! pattern exactly when every face satisfies the matching conditions: the
//! three weights have even sum and obey the triangle inequality.

use std::collections::BTreeMap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{EdgeId, FaceId, Triangulation, VertexId};

/// Number of intersections of a pattern with each edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PatternCoords {
    weights: Vec<u32>,
}

impl PatternCoords {
    pub fn zero(tri: &Triangulation) -> Self {
        Self { weights: vec![0; tri.edge_count()] }
    }

    pub fn from_weights(weights: Vec<u32>) -> Self {
        Self { weights }
    }

    /// Weights from `(u, v, w)` triples; unlisted edges get 0.
    pub fn from_edge_weights(tri: &Triangulation, entries: &[(VertexId, VertexId, u32)]) -> Result<Self> {
        let mut p = Self::zero(tri);
        for &(u, v, w) in entries {
            let e = tri
                .edge_id(u, v)
                .ok_or_else(|| Error::UnknownEdge(format!("{u}-{v}")))?;
            p.weights[e] = w;
        }
        Ok(p)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, e: EdgeId) -> u32 {
        self.weights[e]
    }

    pub fn set(&mut self, e: EdgeId, w: u32) {
        self.weights[e] = w;
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Total number of intersections with the 1-skeleton.
    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }

    pub fn fits(&self, tri: &Triangulation) -> bool {
        self.weights.len() == tri.edge_count()
    }

    pub fn to_json(&self, tri: &Triangulation) -> PatternJson {
        PatternJson { weights: self.weight_map(tri) }
    }

    /// Nonzero weights keyed by `"u-v"`.
    pub fn weight_map(&self, tri: &Triangulation) -> BTreeMap<String, u32> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0)
            .map(|(e, &w)| (tri.edge_label(e), w))
            .collect()
    }

    pub fn from_json(tri: &Triangulation, j: &PatternJson) -> Result<Self> {
        Self::from_weight_map(tri, &j.weights)
    }

    pub fn from_weight_map(tri: &Triangulation, map: &BTreeMap<String, u32>) -> Result<Self> {
        let mut p = Self::zero(tri);
        for (k, &w) in map {
            let (a, b) = k.split_once('-').ok_or_else(|| Error::UnknownEdge(k.clone()))?;
            let (a, b): (usize, usize) = match (a.trim().parse(), b.trim().parse()) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Err(Error::UnknownEdge(k.clone())),
            };
            if a >= b {
                return Err(Error::UnknownEdge(format!("{k} (keys must be written u-v with u < v)")));
            }
            let e = tri.edge_id(a, b).ok_or_else(|| Error::UnknownEdge(k.clone()))?;
            p.weights[e] = w;
        }
        Ok(p)
    }

    pub fn from_json_str(tri: &Triangulation, s: &str) -> Result<Self> {
        let j: PatternJson = serde_json::from_str(s)?;
        Self::from_json(tri, &j)
    }
}

impl Add for &PatternCoords {
    type Output = PatternCoords;

    fn add(self, rhs: &PatternCoords) -> PatternCoords {
        assert_eq!(self.weights.len(), rhs.weights.len(), "pattern length mismatch");
        PatternCoords {
            weights: self.weights.iter().zip(&rhs.weights).map(|(a, b)| a + b).collect(),
        }
    }
}

/// On-disk pattern format: `{"weights": {"u-v": w, ...}}`, omitted edges are 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternJson {
    pub weights: BTreeMap<String, u32>,
}

/// Per-corner arc counts of a pattern in one face.
///
/// `corners[i]` counts the arcs cutting off the `i`-th face vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CornerTriple {
    pub face: FaceId,
    pub corners: [u32; 3],
}

pub fn corner_coordinates(tri: &Triangulation, p: &PatternCoords, face: FaceId) -> Result<CornerTriple> {
    if !p.fits(tri) {
        return Err(Error::MismatchedTriangulation);
    }
    let w = face_weights(tri, p, face);
    if let Some(kind) = face_violation(w) {
        return Err(Error::InvalidPattern(format!(
            "face {:?} with opposite-edge weights {w:?}: {kind:?}",
            tri.face(face)
        )));
    }
    Ok(CornerTriple { face, corners: corners_of(w) })
}

/// Weights of the edges opposite each face vertex.
pub(crate) fn face_weights(tri: &Triangulation, p: &PatternCoords, face: FaceId) -> [u32; 3] {
    tri.face_edges(face).map(|e| p.weight(e))
}

/// `opposite[i]` is the weight of the edge opposite corner `i`.
pub(crate) fn corners_of(opposite: [u32; 3]) -> [u32; 3] {
    let total: u32 = opposite.iter().sum();
    // t_i = (sum of the two edges at i - opposite) / 2 = total/2 - opposite
    opposite.map(|o| total / 2 - o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    OddSum,
    TriangleInequality,
}

fn face_violation(w: [u32; 3]) -> Option<ViolationKind> {
    let total: u32 = w.iter().sum();
    if total % 2 == 1 {
        Some(ViolationKind::OddSum)
    } else if w.iter().any(|&x| 2 * x > total) {
        Some(ViolationKind::TriangleInequality)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceViolation {
    pub face: FaceId,
    pub vertices: [VertexId; 3],
    /// Weights of the edges opposite each face vertex.
    pub opposite_weights: [u32; 3],
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<FaceViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the matching conditions on every face.
pub fn validate_pattern(tri: &Triangulation, p: &PatternCoords) -> Result<ValidationReport> {
    if !p.fits(tri) {
        return Err(Error::MismatchedTriangulation);
    }
    let violations = (0..tri.face_count())
        .filter_map(|f| {
            let w = face_weights(tri, p, f);
            face_violation(w).map(|kind| FaceViolation {
                face: f,
                vertices: tri.face(f),
                opposite_weights: w,
                kind,
            })
        })
        .collect();
    Ok(ValidationReport { violations })
}

pub fn is_pattern(tri: &Triangulation, p: &PatternCoords) -> bool {
    p.fits(tri) && (0..tri.face_count()).all(|f| face_violation(face_weights(tri, p, f)).is_none())
}

pub(crate) fn ensure_pattern(tri: &Triangulation, p: &PatternCoords) -> Result<()> {
    let report = validate_pattern(tri, p)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidPattern(format!(
            "face {:?} violates {:?} (opposite weights {:?})",
            v.vertices, v.kind, v.opposite_weights
        ))),
    }
}

/// The track surrounding vertex `v`: weight 1 on each incident edge.
pub fn vertex_link(tri: &Triangulation, v: VertexId) -> Result<PatternCoords> {
    if v >= tri.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let mut p = PatternCoords::zero(tri);
    for e in tri.vertex_edges(v) {
        p.set(e, 1);
    }
    Ok(p)
}

pub fn sum_patterns(p: &PatternCoords, q: &PatternCoords) -> Result<PatternCoords> {
    if p.len() != q.len() {
        return Err(Error::MismatchedTriangulation);
    }
    Ok(p + q)
}
