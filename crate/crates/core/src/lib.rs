//! Patterns and tracks on triangulated 2-spheres.
//!
//! A pattern is a finite family of disjoint normal curves, stored as the
//! number of times it meets each edge. This crate realizes patterns as
//! embedded curve systems, rewrites them (returning-arc removal and surgery
//! at adjacent crossings), decomposes the sphere along a pattern into the
//! dual tree of regions, and builds maximal sets of pairwise non-parallel
//! tracks. On a sphere with `v` vertices and `f` faces every maximal set has
//! `f / 2 + v - 1` tracks, every region of the dual tree has degree one or
//! three, leaves hold one vertex each and degree-three regions are pairs of
//! pants; [`dual::verify_structure`] checks all of this on a given pattern.

pub mod builder;
pub mod corpus;
pub mod curves;
pub mod dual;
pub mod error;
pub mod par;
pub mod pattern;
pub mod rewrite;
pub mod surface;

pub use builder::{build_maximal, extend_once, oracle_enumerate_tracks, seed_vertex_links, BuilderState};
pub use curves::{
    are_parallel, classify_track, extract_tracks, pattern_kind, realize, Chord, Crossing, CurveSystem,
    PatternKind, Track, TrackClass, TrackKind,
};
pub use dual::{decompose, dual_tree, edge_path, region_profile, verify_structure, DualTree, RegionDecomposition};
pub use error::{Error, Result};
pub use pattern::{corner_coordinates, sum_patterns, validate_pattern, vertex_link, CornerTriple, PatternCoords};
pub use rewrite::{find_returning_arcs, normalize, remove_returning_arc, surgery, RewriteReport};
pub use surface::{build_triangulation, generate, GeneratorSpec, Triangulation};
