//! Complementary regions of a pattern and the dual tree `D_P`.
//!
//! The chords of a normal system cut each face into polygonal pieces.
//! Pieces in neighbouring faces that share an edge segment belong to the
//! same region. Regions are the vertices of the dual graph and tracks its
//! edges; on a sphere every track separates, so the graph is a tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::curves::{extract_tracks, realize, Chord, Crossing, CurveSystem, Track};
use crate::error::{Error, Result};
use crate::pattern::{ensure_pattern, PatternCoords};
use crate::surface::{EdgeId, FaceId, Triangulation, VertexId};

/// A polygon of one face cut out by chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub face: FaceId,
    /// Edge segments `(edge, index)` on the boundary; segment `i` of an edge
    /// runs from crossing `i - 1` to crossing `i`, counted from the smaller end.
    pub segments: Vec<(EdgeId, u32)>,
    pub chords: Vec<Chord>,
    pub corners: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub pieces: Vec<usize>,
    pub vertices: Vec<VertexId>,
    /// Bordering tracks, ascending.
    pub tracks: Vec<usize>,
    pub segment_count: usize,
}

#[derive(Debug, Clone)]
pub struct RegionDecomposition {
    pub tracks: Vec<Track>,
    pub pieces: Vec<Piece>,
    pub piece_region: Vec<usize>,
    pub regions: Vec<Region>,
    /// The regions on the two sides of each track (equal if it fails to separate).
    pub track_regions: Vec<[usize; 2]>,
    /// `segment_pieces[e][i]`: the pieces containing segment `i` of edge `e`,
    /// in the order of `Triangulation::edge_faces(e)`.
    pub segment_pieces: Vec<Vec<[usize; 2]>>,
    /// Track index of every crossing.
    pub crossing_track: Vec<Vec<usize>>,
    /// Region of every triangulation vertex.
    pub vertex_region: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Point {
    Corner(VertexId),
    Cross(Crossing),
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let up = self.0[x];
            self.0[x] = r;
            x = up;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Boundary points of `face` in cyclic order `a -> b -> c -> a`.
fn boundary_points(tri: &Triangulation, cs: &CurveSystem, face: FaceId) -> Vec<Point> {
    let [a, b, c] = tri.face(face);
    let [bc, ac, ab] = tri.face_edges(face);
    let mut pts = vec![Point::Corner(a)];
    pts.extend((0..cs.count(ab)).map(|p| Point::Cross(Crossing::new(ab, p))));
    pts.push(Point::Corner(b));
    pts.extend((0..cs.count(bc)).map(|p| Point::Cross(Crossing::new(bc, p))));
    pts.push(Point::Corner(c));
    pts.extend((0..cs.count(ac)).rev().map(|p| Point::Cross(Crossing::new(ac, p))));
    pts
}

/// Coordinate of a point along `edge`: smaller endpoint -1, larger `count`.
fn edge_coord(tri: &Triangulation, cs: &CurveSystem, edge: EdgeId, p: Point) -> i64 {
    match p {
        Point::Cross(c) => i64::from(c.pos),
        Point::Corner(v) if v == tri.edge(edge).0 => -1,
        Point::Corner(_) => i64::from(cs.count(edge)),
    }
}

fn gap_edge(tri: &Triangulation, face: FaceId, p: Point, q: Point) -> EdgeId {
    let on = |pt: Point| match pt {
        Point::Cross(c) => vec![c.edge],
        Point::Corner(v) => tri.face_edges(face).into_iter().filter(|&e| {
            let (x, y) = tri.edge(e);
            x == v || y == v
        }).collect(),
    };
    let (ep, eq) = (on(p), on(q));
    *ep.iter().find(|e| eq.contains(e)).expect("consecutive boundary points share an edge")
}

pub fn decompose(tri: &Triangulation, cs: &CurveSystem) -> Result<RegionDecomposition> {
    let tracks = extract_tracks(tri, cs)?;
    let mut crossing_track: Vec<Vec<usize>> = cs.counts().iter().map(|&k| vec![0; k as usize]).collect();
    for (i, t) in tracks.iter().enumerate() {
        for c in &t.crossings {
            crossing_track[c.edge][c.pos as usize] = i;
        }
    }

    let mut pieces: Vec<Piece> = Vec::new();
    let mut segment_pieces: Vec<Vec<[usize; 2]>> =
        cs.counts().iter().map(|&k| vec![[usize::MAX; 2]; k as usize + 1]).collect();
    for f in 0..tri.face_count() {
        let pts = boundary_points(tri, cs, f);
        let n = pts.len();
        let index_of = |c: Crossing| pts.iter().position(|p| *p == Point::Cross(c)).expect("on boundary");
        let partner: Vec<Option<usize>> = pts
            .iter()
            .map(|p| match p {
                Point::Cross(c) => {
                    let ch = cs.chords(f).iter().find(|ch| ch.a == *c || ch.b == *c).expect("chord");
                    Some(index_of(ch.other(*c)))
                }
                Point::Corner(_) => None,
            })
            .collect();
        let mut gap_seen = vec![false; n];
        for start in 0..n {
            if gap_seen[start] {
                continue;
            }
            let mut piece = Piece { face: f, segments: Vec::new(), chords: Vec::new(), corners: Vec::new() };
            let mut g = start;
            loop {
                gap_seen[g] = true;
                let (p, q) = (pts[g], pts[(g + 1) % n]);
                let e = gap_edge(tri, f, p, q);
                let s = edge_coord(tri, cs, e, p).min(edge_coord(tri, cs, e, q)) + 1;
                piece.segments.push((e, s as u32));
                let slot = usize::from(tri.edge_faces(e)[1] == f);
                segment_pieces[e][s as usize][slot] = pieces.len();
                let arrive = (g + 1) % n;
                g = match (pts[arrive], partner[arrive]) {
                    (Point::Cross(c), Some(j)) => {
                        let Point::Cross(d) = pts[j] else { unreachable!() };
                        piece.chords.push(Chord::new(c, d));
                        j
                    }
                    (Point::Corner(v), _) => {
                        piece.corners.push(v);
                        arrive
                    }
                    _ => unreachable!(),
                };
                if g == start {
                    break;
                }
            }
            pieces.push(piece);
        }
    }

    let mut dsu = Dsu((0..pieces.len()).collect());
    for segs in &segment_pieces {
        for &[p, q] in segs {
            dsu.union(p, q);
        }
    }
    let mut root_region: BTreeMap<usize, usize> = BTreeMap::new();
    let mut piece_region = Vec::with_capacity(pieces.len());
    for i in 0..pieces.len() {
        let r = dsu.find(i);
        let next = root_region.len();
        piece_region.push(*root_region.entry(r).or_insert(next));
    }
    let mut regions: Vec<Region> = (0..root_region.len())
        .map(|_| Region { pieces: Vec::new(), vertices: Vec::new(), tracks: Vec::new(), segment_count: 0 })
        .collect();
    let mut vertex_region = vec![usize::MAX; tri.vertex_count()];
    let mut track_sides: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); tracks.len()];
    for (i, piece) in pieces.iter().enumerate() {
        let r = piece_region[i];
        regions[r].pieces.push(i);
        for &v in &piece.corners {
            if vertex_region[v] == usize::MAX {
                vertex_region[v] = r;
                regions[r].vertices.push(v);
            } else {
                debug_assert_eq!(vertex_region[v], r);
            }
        }
        for ch in &piece.chords {
            let t = crossing_track[ch.a.edge][ch.a.pos as usize];
            track_sides[t].insert(r);
        }
    }
    for segs in &segment_pieces {
        for &[p, _] in segs {
            regions[piece_region[p]].segment_count += 1;
        }
    }
    let mut track_regions = Vec::with_capacity(tracks.len());
    for (t, sides) in track_sides.iter().enumerate() {
        let s: Vec<_> = sides.iter().copied().collect();
        let pair = match s.as_slice() {
            [a] => [*a, *a],
            [a, b] => [*a, *b],
            _ => unreachable!("a track has two sides"),
        };
        for &r in sides {
            regions[r].tracks.push(t);
        }
        track_regions.push(pair);
    }
    for r in &mut regions {
        r.vertices.sort_unstable();
        r.tracks.sort_unstable();
    }

    Ok(RegionDecomposition {
        tracks,
        pieces,
        piece_region,
        regions,
        track_regions,
        segment_pieces,
        crossing_track,
        vertex_region,
    })
}

/// Realize `p` and decompose along it.
pub fn decompose_pattern(tri: &Triangulation, p: &PatternCoords) -> Result<RegionDecomposition> {
    decompose(tri, &realize(tri, p)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionProfile {
    pub degree: usize,
    pub interior_vertices: usize,
    /// Euler characteristic of the closed region, boundary tracks included.
    pub euler_characteristic: i64,
}

impl RegionProfile {
    /// Degree one, one vertex, a disc.
    pub fn is_vertex_disc(&self) -> bool {
        (self.degree, self.interior_vertices, self.euler_characteristic) == (1, 1, 1)
    }

    /// Degree three, no vertex, a disc with two holes.
    pub fn is_pants(&self) -> bool {
        (self.degree, self.interior_vertices, self.euler_characteristic) == (3, 0, -1)
    }
}

impl RegionDecomposition {
    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    /// Region containing segment `seg` of `edge`.
    pub fn segment_region(&self, edge: EdgeId, seg: u32) -> usize {
        self.piece_region[self.segment_pieces[edge][seg as usize][0]]
    }

    pub fn profile(&self, region: usize) -> RegionProfile {
        let r = &self.regions[region];
        RegionProfile {
            degree: r.tracks.len(),
            interior_vertices: r.vertices.len(),
            // crossings and chords of the boundary circles cancel
            euler_characteristic: r.vertices.len() as i64 - r.segment_count as i64 + r.pieces.len() as i64,
        }
    }

    pub fn profiles(&self) -> Vec<RegionProfile> {
        (0..self.regions.len()).map(|r| self.profile(r)).collect()
    }
}

pub fn region_profile(rd: &RegionDecomposition, region: usize) -> Result<RegionProfile> {
    if region >= rd.regions.len() {
        return Err(Error::UnknownRegion(region));
    }
    Ok(rd.profile(region))
}

/// The dual graph: regions as vertices, tracks as edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualTree {
    pub vertex_count: usize,
    /// `edges[t]` joins the two regions on either side of track `t`.
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
    pub profiles: Vec<RegionProfile>,
    /// Interior triangulation vertices of each region.
    pub region_vertices: Vec<Vec<VertexId>>,
    /// Crossing count of each track.
    pub track_sizes: Vec<usize>,
}

pub fn dual_tree(rd: &RegionDecomposition) -> Result<DualTree> {
    let n = rd.regions.len();
    let mut edges = Vec::with_capacity(rd.tracks.len());
    for (t, &[a, b]) in rd.track_regions.iter().enumerate() {
        if a == b {
            return Err(Error::NotATree(format!("track {t} does not separate")));
        }
        edges.push((a, b));
    }
    if edges.len() + 1 != n {
        return Err(Error::NotATree(format!("{n} regions but {} tracks", edges.len())));
    }
    let mut dsu = Dsu((0..n).collect());
    for &(a, b) in &edges {
        if dsu.find(a) == dsu.find(b) {
            return Err(Error::NotATree("cycle in dual graph".into()));
        }
        dsu.union(a, b);
    }
    let mut degrees = vec![0; n];
    for &(a, b) in &edges {
        degrees[a] += 1;
        degrees[b] += 1;
    }
    Ok(DualTree {
        vertex_count: n,
        edges,
        degrees,
        profiles: rd.profiles(),
        region_vertices: rd.regions.iter().map(|r| r.vertices.clone()).collect(),
        track_sizes: rd.tracks.iter().map(Track::n).collect(),
    })
}

impl DualTree {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted degree multiset.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    /// Graphviz rendering. Vertex-disc leaves are labelled by their vertex,
    /// pairs of pants by `P2`; edges carry the track's crossing count.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dual_tree {\n");
        for (r, p) in self.profiles.iter().enumerate() {
            let label = if p.is_vertex_disc() {
                format!("v{}", self.region_vertices[r][0])
            } else if p.is_pants() {
                "P2".to_string()
            } else {
                let vs: Vec<String> = self.region_vertices[r].iter().map(|v| format!("v{v}")).collect();
                format!("R{r}[{}]", vs.join(","))
            };
            let _ = writeln!(s, "  r{r} [label=\"{label}\"];");
        }
        for (t, &(a, b)) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  r{a} -- r{b} [label=\"{}\"];", self.track_sizes[t]);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness_region: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub v_p: usize,
    pub e_p: usize,
    pub degree_counts: BTreeMap<usize, usize>,
    pub euler_sum: i64,
    pub checks: Vec<StructureCheck>,
    pub passed: bool,
}

impl StructureReport {
    pub fn check(&self, name: &str) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Check the dual-tree structure of a pattern with pairwise non-parallel
/// tracks: degrees, region shapes and the track count `f/2 + v - 1`.
pub fn verify_structure(tri: &Triangulation, p: &PatternCoords) -> Result<StructureReport> {
    ensure_pattern(tri, p)?;
    let rd = decompose_pattern(tri, p)?;
    let mut seen: BTreeMap<&PatternCoords, usize> = BTreeMap::new();
    for (i, t) in rd.tracks.iter().enumerate() {
        if let Some(&j) = seen.get(&t.weights) {
            return Err(Error::ParallelTracksPresent(j, i));
        }
        seen.insert(&t.weights, i);
    }
    let tree = dual_tree(&rd)?;
    Ok(structure_report(tri, &tree))
}

pub(crate) fn structure_report(tri: &Triangulation, tree: &DualTree) -> StructureReport {
    let (v, e, f) = (tri.vertex_count(), tri.edge_count(), tri.face_count());
    let profiles = &tree.profiles;
    let first = |pred: &dyn Fn(&RegionProfile) -> bool| profiles.iter().position(pred);
    let mut checks = Vec::new();

    let bad_degree = first(&|p| p.degree != 1 && p.degree != 3);
    checks.push(StructureCheck {
        name: "degrees_one_or_three",
        passed: bad_degree.is_none(),
        witness_region: bad_degree,
        detail: bad_degree.map_or_else(String::new, |r| format!("region {r} has degree {}", profiles[r].degree)),
    });
    let bad_leaf = first(&|p| p.degree == 1 && !p.is_vertex_disc());
    checks.push(StructureCheck {
        name: "leaves_are_vertex_discs",
        passed: bad_leaf.is_none(),
        witness_region: bad_leaf,
        detail: bad_leaf.map_or_else(String::new, |r| {
            format!(
                "leaf region {r} holds {} vertices, chi = {}",
                profiles[r].interior_vertices, profiles[r].euler_characteristic
            )
        }),
    });
    let bad_pants = first(&|p| p.degree == 3 && !p.is_pants());
    checks.push(StructureCheck {
        name: "trivalent_regions_are_pants",
        passed: bad_pants.is_none(),
        witness_region: bad_pants,
        detail: bad_pants.map_or_else(String::new, |r| {
            format!(
                "region {r} holds {} vertices, chi = {}",
                profiles[r].interior_vertices, profiles[r].euler_characteristic
            )
        }),
    });
    let leaves = tree.degrees.iter().filter(|&&d| d == 1).count();
    let trivalent = tree.degrees.iter().filter(|&&d| d == 3).count();
    checks.push(StructureCheck {
        name: "region_counts",
        passed: leaves == v && 2 * trivalent == f,
        witness_region: None,
        detail: format!("{leaves} leaves (want {v}), {trivalent} trivalent (want {})", f / 2),
    });
    let e_p = tree.edge_count();
    let want = f / 2 + v - 1;
    checks.push(StructureCheck {
        name: "track_count",
        passed: e_p == want,
        witness_region: None,
        detail: format!("e_P = {e_p}, f/2 + v - 1 = {want}"),
    });

    let mut degree_counts = BTreeMap::new();
    for &d in &tree.degrees {
        *degree_counts.entry(d).or_insert(0) += 1;
    }
    StructureReport {
        v,
        e,
        f,
        v_p: tree.vertex_count,
        e_p,
        degree_counts,
        euler_sum: profiles.iter().map(|p| p.euler_characteristic).sum(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Regions met walking along an edge from its smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgePath {
    pub edge: EdgeId,
    pub regions: Vec<usize>,
    /// Track of each crossing along the edge.
    pub crossing_tracks: Vec<usize>,
    /// Indices into `regions` where the walk turns back.
    pub backtracks: Vec<usize>,
    pub start_degree: usize,
    pub end_degree: usize,
}

pub fn edge_path(tri: &Triangulation, p: &PatternCoords, edge: EdgeId) -> Result<EdgePath> {
    if edge >= tri.edge_count() {
        return Err(Error::UnknownEdge(format!("edge id {edge}")));
    }
    let rd = decompose_pattern(tri, p)?;
    Ok(edge_path_in(&rd, p, edge))
}

pub(crate) fn edge_path_in(rd: &RegionDecomposition, p: &PatternCoords, edge: EdgeId) -> EdgePath {
    let k = p.weight(edge);
    let regions: Vec<usize> = (0..=k).map(|s| rd.segment_region(edge, s)).collect();
    let backtracks = (1..regions.len().saturating_sub(1))
        .filter(|&j| regions[j - 1] == regions[j + 1])
        .collect();
    let degree = |r: usize| rd.regions[r].tracks.len();
    EdgePath {
        edge,
        start_degree: degree(regions[0]),
        end_degree: degree(*regions.last().expect("nonempty")),
        crossing_tracks: rd.crossing_track[edge].clone(),
        backtracks,
        regions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::vertex_link;
    use crate::surface::{generate, GeneratorSpec};

    fn tet() -> Triangulation {
        generate(GeneratorSpec::Tetrahedron, 0).unwrap()
    }

    fn golden_pattern(t: &Triangulation) -> PatternCoords {
        let oct = PatternCoords::from_edge_weights(t, &[(0, 1, 2), (2, 3, 2), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)])
            .unwrap();
        &PatternCoords::from_weights(vec![2; 6]) + &oct
    }

    #[test]
    fn empty_pattern_one_region() {
        let t = tet();
        let rd = decompose_pattern(&t, &PatternCoords::zero(&t)).unwrap();
        assert_eq!(rd.region_count(), 1);
        assert_eq!(rd.regions[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(
            region_profile(&rd, 0).unwrap(),
            RegionProfile { degree: 0, interior_vertices: 4, euler_characteristic: 2 }
        );
        let tree = dual_tree(&rd).unwrap();
        assert_eq!((tree.vertex_count, tree.edge_count()), (1, 0));
        assert_eq!(region_profile(&rd, 1).unwrap_err(), Error::UnknownRegion(1));
    }

    #[test]
    fn single_link_two_regions() {
        let t = tet();
        let rd = decompose_pattern(&t, &vertex_link(&t, 0).unwrap()).unwrap();
        assert_eq!(rd.region_count(), 2);
        let mut sizes: Vec<_> = rd.regions.iter().map(|r| r.vertices.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
        let leaf = rd.vertex_region[0];
        assert_eq!(
            rd.profile(leaf),
            RegionProfile { degree: 1, interior_vertices: 1, euler_characteristic: 1 }
        );
        let tree = dual_tree(&rd).unwrap();
        assert_eq!(tree.degree_multiset(), vec![1, 1]);
    }

    #[test]
    fn golden_pattern_tree() {
        let t = tet();
        let rd = decompose_pattern(&t, &golden_pattern(&t)).unwrap();
        assert_eq!(rd.region_count(), 6);
        let tree = dual_tree(&rd).unwrap();
        assert_eq!(tree.edge_count(), 5);
        assert_eq!(tree.degree_multiset(), vec![1, 1, 1, 1, 3, 3]);
        for (r, p) in tree.profiles.iter().enumerate() {
            if tree.degrees[r] == 3 {
                assert_eq!(*p, RegionProfile { degree: 3, interior_vertices: 0, euler_characteristic: -1 });
            }
        }
        let report = verify_structure(&t, &golden_pattern(&t)).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.e_p, 5);
        assert_eq!(report.euler_sum, 2);
    }

    #[test]
    fn single_link_fails_structure_check() {
        let t = tet();
        let r = verify_structure(&t, &vertex_link(&t, 0).unwrap()).unwrap();
        assert!(!r.passed);
        let leaf = r.check("leaves_are_vertex_discs").unwrap();
        assert!(!leaf.passed);
        let w = leaf.witness_region.unwrap();
        let rd = decompose_pattern(&t, &vertex_link(&t, 0).unwrap()).unwrap();
        assert_eq!(rd.regions[w].vertices.len(), 3);
    }

    #[test]
    fn empty_pattern_witness_is_degree_zero() {
        let t = tet();
        let r = verify_structure(&t, &PatternCoords::zero(&t)).unwrap();
        let c = r.check("degrees_one_or_three").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness_region, Some(0));
    }

    #[test]
    fn parallel_tracks_refused() {
        let t = tet();
        let p = &vertex_link(&t, 1).unwrap() + &vertex_link(&t, 1).unwrap();
        assert!(matches!(verify_structure(&t, &p), Err(Error::ParallelTracksPresent(_, _))));
    }

    #[test]
    fn edge_paths_on_golden_pattern() {
        let t = tet();
        let p = golden_pattern(&t);
        // 0-2 is met once by the octagon: link, octagon, link
        let path = edge_path(&t, &p, t.edge_id(0, 2).unwrap()).unwrap();
        assert_eq!(path.regions.len(), 4);
        assert_eq!((path.start_degree, path.end_degree), (1, 1));
        assert!(path.backtracks.is_empty());
        // 0-1 carries the octagon twice
        let path = edge_path(&t, &p, t.edge_id(0, 1).unwrap()).unwrap();
        assert_eq!(path.regions.len(), 5);
        assert_eq!(path.backtracks, vec![2]);
        let rd = decompose_pattern(&t, &p).unwrap();
        assert_eq!(rd.regions[path.regions[2]].tracks.len(), 3);
    }

    #[test]
    fn edge_path_single_link() {
        let t = tet();
        let p = vertex_link(&t, 0).unwrap();
        let path = edge_path(&t, &p, t.edge_id(0, 1).unwrap()).unwrap();
        assert_eq!(path.regions.len(), 2);
        assert_eq!(path.crossing_tracks.len(), 1);
        assert!(edge_path(&t, &p, 99).is_err());
    }

    #[test]
    fn dot_labels() {
        let t = tet();
        let rd = decompose_pattern(&t, &golden_pattern(&t)).unwrap();
        let dot = dual_tree(&rd).unwrap().to_dot();
        assert_eq!(dot.matches("P2").count(), 2);
        for v in 0..4 {
            assert!(dot.contains(&format!("label=\"v{v}\"")));
        }
        assert!(dot.contains("label=\"8\""));
    }
}
