//! Simplicial triangulations of the 2-sphere.
//!
//! Vertices are `0..vertex_count`. Edges are unordered pairs stored as
//! `(u, v)` with `u < v` and indexed in lexicographic order; every edge is
//! oriented from its smaller endpoint, so crossing positions along an edge
//! are always counted from the smaller vertex. Face vertices are stored in
//! ascending order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// A validated triangulation of the 2-sphere. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    vertex_count: usize,
    faces: Vec<[VertexId; 3]>,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    edge_faces: Vec<[FaceId; 2]>,
    // face_edges[f][i] is the edge opposite faces[f][i]
    face_edges: Vec<[EdgeId; 3]>,
    vertex_faces: Vec<Vec<FaceId>>,
    vertex_neighbors: Vec<Vec<VertexId>>,
}

/// Build a triangulation from a face list, inferring the vertex count.
pub fn build_triangulation(faces: &[[usize; 3]]) -> Result<Triangulation> {
    let vertex_count = faces
        .iter()
        .flat_map(|f| f.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    Triangulation::new(vertex_count, faces)
}

impl Triangulation {
    pub fn new(vertex_count: usize, faces: &[[usize; 3]]) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::NotSimplicial("face list is empty".into()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted_faces = Vec::with_capacity(faces.len());
        for f in faces {
            let mut s = *f;
            s.sort_unstable();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::NotSimplicial(format!("degenerate face {f:?}")));
            }
            if s[2] >= vertex_count {
                return Err(Error::NotSimplicial(format!(
                    "face {f:?} uses a vertex outside 0..{vertex_count}"
                )));
            }
            if !seen.insert(s) {
                return Err(Error::NotSimplicial(format!("repeated face {f:?}")));
            }
            sorted_faces.push(s);
        }

        let mut edge_set = BTreeSet::new();
        for &[a, b, c] in &sorted_faces {
            edge_set.insert((a, b));
            edge_set.insert((a, c));
            edge_set.insert((b, c));
        }
        let edges: Vec<_> = edge_set.into_iter().collect();
        let edge_index: HashMap<_, _> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let mut incident: Vec<Vec<FaceId>> = vec![Vec::new(); edges.len()];
        let mut face_edges = Vec::with_capacity(sorted_faces.len());
        for (fi, &[a, b, c]) in sorted_faces.iter().enumerate() {
            let fe = [edge_index[&(b, c)], edge_index[&(a, c)], edge_index[&(a, b)]];
            for &e in &fe {
                incident[e].push(fi);
            }
            face_edges.push(fe);
        }
        let mut edge_faces = Vec::with_capacity(edges.len());
        for (e, fs) in incident.iter().enumerate() {
            if fs.len() != 2 {
                let (u, v) = edges[e];
                return Err(Error::NotClosed(format!(
                    "edge {u}-{v} lies in {} faces",
                    fs.len()
                )));
            }
            edge_faces.push([fs[0], fs[1]]);
        }

        let mut vertex_faces: Vec<Vec<FaceId>> = vec![Vec::new(); vertex_count];
        for (fi, f) in sorted_faces.iter().enumerate() {
            for &v in f {
                vertex_faces[v].push(fi);
            }
        }
        if vertex_faces.iter().any(Vec::is_empty) {
            return Err(Error::NotConnected);
        }

        let mut vertex_neighbors = Vec::with_capacity(vertex_count);
        let mut ordered_faces = Vec::with_capacity(vertex_count);
        for (v, faces_at) in vertex_faces.iter().enumerate() {
            let (nbrs, fs) = link_cycle(v, faces_at, &sorted_faces)?;
            vertex_neighbors.push(nbrs);
            ordered_faces.push(fs);
        }

        // connectivity over the face adjacency graph
        let mut reached = vec![false; sorted_faces.len()];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(f) = stack.pop() {
            for &e in &face_edges[f] {
                for &g in &edge_faces[e] {
                    if !reached[g] {
                        reached[g] = true;
                        stack.push(g);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::NotConnected);
        }

        let chi = vertex_count as i64 - edges.len() as i64 + sorted_faces.len() as i64;
        if chi != 2 {
            return Err(Error::NotASphere(format!("Euler characteristic is {chi}")));
        }

        Ok(Self {
            vertex_count,
            faces: sorted_faces,
            edges,
            edge_index,
            edge_faces,
            face_edges,
            vertex_faces: ordered_faces,
            vertex_neighbors,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[[VertexId; 3]] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> [VertexId; 3] {
        self.faces[f]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edge_index.get(&key).copied()
    }

    /// The two faces containing `e`, in ascending order.
    pub fn edge_faces(&self, e: EdgeId) -> [FaceId; 2] {
        self.edge_faces[e]
    }

    /// The face across `e` from `f`.
    pub fn other_face(&self, e: EdgeId, f: FaceId) -> FaceId {
        let [a, b] = self.edge_faces[e];
        if a == f {
            b
        } else {
            a
        }
    }

    /// Edges of face `f`; entry `i` is opposite the `i`-th face vertex.
    pub fn face_edges(&self, f: FaceId) -> [EdgeId; 3] {
        self.face_edges[f]
    }

    pub fn face_has_edge(&self, f: FaceId, e: EdgeId) -> bool {
        self.face_edges[f].contains(&e)
    }

    /// Faces around `v` in cyclic order.
    pub fn vertex_faces(&self, v: VertexId) -> &[FaceId] {
        &self.vertex_faces[v]
    }

    /// Neighbours of `v` in cyclic order (the vertex link).
    pub fn vertex_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.vertex_neighbors[v]
    }

    /// Edges incident to `v` in cyclic order.
    pub fn vertex_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.vertex_neighbors[v]
            .iter()
            .map(|&w| self.edge_id(v, w).expect("link neighbour is adjacent"))
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_neighbors[v].len()
    }

    /// True for the boundary of a tetrahedron.
    pub fn is_tetrahedron(&self) -> bool {
        self.vertex_count == 4 && self.faces.len() == 4
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn edge_label(&self, e: EdgeId) -> String {
        let (u, v) = self.edges[e];
        format!("{u}-{v}")
    }

    /// Parse an `"u-v"` edge key.
    pub fn parse_edge(&self, key: &str) -> Result<EdgeId> {
        let (a, b) = key
            .split_once('-')
            .ok_or_else(|| Error::UnknownEdge(key.to_string()))?;
        let a: usize = a.trim().parse().map_err(|_| Error::UnknownEdge(key.to_string()))?;
        let b: usize = b.trim().parse().map_err(|_| Error::UnknownEdge(key.to_string()))?;
        self.edge_id(a, b).ok_or_else(|| Error::UnknownEdge(key.to_string()))
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson { vertices: self.vertex_count, faces: self.faces.clone() }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: TriangulationJson = serde_json::from_str(s)?;
        Self::new(j.vertices, &j.faces)
    }
}

/// Chain the faces around `v` into one cycle.
fn link_cycle(
    v: VertexId,
    faces_at: &[FaceId],
    faces: &[[VertexId; 3]],
) -> Result<(Vec<VertexId>, Vec<FaceId>)> {
    let mut adj: HashMap<VertexId, Vec<(VertexId, FaceId)>> = HashMap::new();
    for &f in faces_at {
        let others: Vec<_> = faces[f].iter().copied().filter(|&w| w != v).collect();
        adj.entry(others[0]).or_default().push((others[1], f));
        adj.entry(others[1]).or_default().push((others[0], f));
    }
    if adj.values().any(|n| n.len() != 2) {
        return Err(Error::NotASphere(format!("link of vertex {v} is not a cycle")));
    }
    let start = *adj.keys().min().expect("vertex has faces");
    let mut nbrs = vec![start];
    let mut fs = Vec::new();
    let mut prev_face = usize::MAX;
    let mut cur = start;
    loop {
        let &(next, f) = adj[&cur]
            .iter()
            .filter(|(_, f)| *f != prev_face)
            .min()
            .expect("two link edges");
        fs.push(f);
        prev_face = f;
        if next == start {
            break;
        }
        nbrs.push(next);
        cur = next;
        if nbrs.len() > adj.len() {
            break;
        }
    }
    if nbrs.len() != adj.len() {
        return Err(Error::NotASphere(format!(
            "link of vertex {v} is not a single cycle (pinch point)"
        )));
    }
    Ok((nbrs, fs))
}

/// On-disk triangulation format: `{"vertices": n, "faces": [[a,b,c], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub vertices: usize,
    pub faces: Vec<[usize; 3]>,
}

/// Which family of sphere triangulation to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Tetrahedron,
    /// Suspension of an `n`-gon: `n + 2` vertices.
    Bipyramid(usize),
    Octahedron,
    Icosahedron,
    /// Random triangulation with the given vertex count.
    Random(usize),
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Accepts `tetrahedron`, `octahedron`, `icosahedron`, `bipyramid:N`,
    /// `bipyramid(N)`, `random:N` and `random(N)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.find([':', '(', '=']) {
            Some(i) => {
                let arg = s[i + 1..].trim_end_matches(')');
                let n: usize = arg
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad size in {s:?}")))?;
                (&s[..i], Some(n))
            }
            None => (s.as_str(), None),
        };
        match (name, arg) {
            ("tetrahedron", None) => Ok(Self::Tetrahedron),
            ("octahedron", None) => Ok(Self::Octahedron),
            ("icosahedron", None) => Ok(Self::Icosahedron),
            ("bipyramid", Some(n)) => Ok(Self::Bipyramid(n)),
            ("random", Some(n)) => Ok(Self::Random(n)),
            _ => Err(Error::InvalidSpec(format!("unknown generator {s:?}"))),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Tetrahedron => write!(f, "tetrahedron"),
            Self::Bipyramid(n) => write!(f, "bipyramid:{n}"),
            Self::Octahedron => write!(f, "octahedron"),
            Self::Icosahedron => write!(f, "icosahedron"),
            Self::Random(n) => write!(f, "random:{n}"),
        }
    }
}

/// Generate a triangulation. Only `Random` consumes the seed.
pub fn generate(kind: GeneratorSpec, seed: u64) -> Result<Triangulation> {
    let faces = match kind {
        GeneratorSpec::Tetrahedron => vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        GeneratorSpec::Bipyramid(n) => {
            if n < 3 {
                return Err(Error::InvalidSpec(format!("bipyramid needs n >= 3, got {n}")));
            }
            bipyramid_faces(n)
        }
        GeneratorSpec::Octahedron => bipyramid_faces(4),
        GeneratorSpec::Icosahedron => icosahedron_faces(),
        GeneratorSpec::Random(target) => {
            if target < 4 {
                return Err(Error::InvalidSpec(format!(
                    "random triangulation needs at least 4 vertices, got {target}"
                )));
            }
            random_faces(target, seed)
        }
    };
    build_triangulation(&faces)
}

fn bipyramid_faces(n: usize) -> Vec<[usize; 3]> {
    let (north, south) = (n, n + 1);
    (0..n)
        .flat_map(|i| {
            let j = (i + 1) % n;
            [[i, j, north], [i, j, south]]
        })
        .collect()
}

fn icosahedron_faces() -> Vec<[usize; 3]> {
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut faces = Vec::with_capacity(20);
    for i in 0..5 {
        faces.push([0, up(i), up(i + 1)]);
        faces.push([11, low(i), low(i + 1)]);
        faces.push([up(i), up(i + 1), low(i)]);
        faces.push([up(i + 1), low(i + 1), low(i)]);
    }
    faces
}

const FLIPS_PER_INSERTION: usize = 2;

/// Repeated 1->3 subdivisions interleaved with legal edge flips.
fn random_faces(target: usize, seed: u64) -> Vec<[usize; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut next = 4;
    while next < target {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.push([a, b, next]);
        faces.push([a, c, next]);
        faces.push([b, c, next]);
        next += 1;
        for _ in 0..FLIPS_PER_INSERTION {
            try_random_flip(&mut faces, &mut rng);
        }
    }
    faces
}

fn try_random_flip(faces: &mut [[usize; 3]], rng: &mut ChaCha8Rng) -> bool {
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        let mut s = *f;
        s.sort_unstable();
        for (u, v) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            edge_faces.entry((u, v)).or_default().push(fi);
        }
    }
    let mut keys: Vec<_> = edge_faces.keys().copied().collect();
    keys.sort_unstable();
    let &(a, b) = keys.choose(rng).expect("nonempty");
    let fs = &edge_faces[&(a, b)];
    let apex = |f: usize| faces[f].iter().copied().find(|&x| x != a && x != b).unwrap();
    let (c, d) = (apex(fs[0]), apex(fs[1]));
    let key = if c < d { (c, d) } else { (d, c) };
    if edge_faces.contains_key(&key) {
        return false;
    }
    let (f0, f1) = (fs[0], fs[1]);
    faces[f0] = [c, d, a];
    faces[f1] = [c, d, b];
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus7() -> Vec<[usize; 3]> {
        (0..7)
            .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
            .collect()
    }

    #[test]
    fn tetrahedron_counts() {
        let t = build_triangulation(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (4, 6, 4));
        assert_eq!(t.edges()[0], (0, 1));
        assert_eq!(t.degree(0), 3);
    }

    #[test]
    fn duplicate_face_rejected() {
        let err = build_triangulation(&[[0, 1, 2], [2, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn degenerate_face_rejected() {
        let err = build_triangulation(&[[0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn open_disc_rejected() {
        let err = build_triangulation(&[[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotClosed(_)));
    }

    #[test]
    fn torus_rejected() {
        let err = build_triangulation(&torus7()).unwrap_err();
        assert!(matches!(err, Error::NotASphere(_)), "{err:?}");
    }

    #[test]
    fn two_spheres_rejected() {
        let mut faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        faces.extend([[4, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7]]);
        assert_eq!(build_triangulation(&faces).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn isolated_vertex_rejected() {
        let t = Triangulation::new(5, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(t.unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn pinched_spheres_rejected() {
        // two tetrahedra sharing vertex 0
        let faces = [
            [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3],
            [0, 4, 5], [0, 4, 6], [0, 5, 6], [4, 5, 6],
        ];
        let err = build_triangulation(&faces).unwrap_err();
        assert!(matches!(err, Error::NotASphere(_)), "{err:?}");
    }

    #[test]
    fn platonic_generators() {
        let o = generate(GeneratorSpec::Octahedron, 0).unwrap();
        assert_eq!((o.vertex_count(), o.edge_count(), o.face_count()), (6, 12, 8));
        let i = generate(GeneratorSpec::Icosahedron, 0).unwrap();
        assert_eq!((i.vertex_count(), i.edge_count(), i.face_count()), (12, 30, 20));
        assert!((0..12).all(|v| i.degree(v) == 5));
        let b = generate(GeneratorSpec::Bipyramid(3), 0).unwrap();
        assert_eq!(b.vertex_count(), 5);
        assert!(generate(GeneratorSpec::Bipyramid(2), 0).is_err());
        assert!(generate(GeneratorSpec::Random(3), 0).is_err());
    }

    #[test]
    fn random_counts_forced() {
        let t = generate(GeneratorSpec::Random(20), 7).unwrap();
        assert_eq!((t.vertex_count(), t.face_count(), t.edge_count()), (20, 36, 54));
    }

    #[test]
    fn random_is_deterministic() {
        let a = generate(GeneratorSpec::Random(25), 11).unwrap();
        let b = generate(GeneratorSpec::Random(25), 11).unwrap();
        assert_eq!(a.faces(), b.faces());
        let c = generate(GeneratorSpec::Random(25), 12).unwrap();
        assert_ne!(a.faces(), c.faces());
    }

    #[test]
    fn vertex_links_are_cycles() {
        let t = generate(GeneratorSpec::Random(15), 3).unwrap();
        for v in 0..t.vertex_count() {
            let n = t.vertex_neighbors(v);
            assert_eq!(n.len(), t.vertex_faces(v).len());
            for i in 0..n.len() {
                assert!(t.edge_id(n[i], n[(i + 1) % n.len()]).is_some());
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("bipyramid:5".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Bipyramid(5));
        assert_eq!("random(12)".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Random(12));
        assert_eq!("Tetrahedron".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Tetrahedron);
        assert!("cube".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = generate(GeneratorSpec::Random(9), 1).unwrap();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(Triangulation::from_json_str(&s).unwrap(), t);
    }
}
