#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use tracklab::rewrite::{insert_null_curve, push_across};
use tracklab::{
    build_maximal, generate, realize, seed_vertex_links, BuilderState, CurveSystem, GeneratorSpec, PatternCoords,
    Triangulation,
};

/// Small triangulations together with a maximal registry on each.
pub fn pool(count: usize, seed: u64) -> Vec<(Triangulation, BuilderState)> {
    let mut out = Vec::new();
    for spec in [GeneratorSpec::Tetrahedron, GeneratorSpec::Octahedron, GeneratorSpec::Bipyramid(3)] {
        let t = generate(spec, 0).unwrap();
        let s = build_maximal(&t, seed_vertex_links(&t)).unwrap();
        out.push((t, s));
    }
    for i in 0..count.saturating_sub(out.len()) {
        let t = generate(GeneratorSpec::Random(5 + i % 6), seed.wrapping_add(i as u64)).unwrap();
        let s = build_maximal(&t, seed_vertex_links(&t)).unwrap();
        out.push((t, s));
    }
    out
}

/// A nonempty sum of registry tracks with multiplicities 0 to 2.
pub fn random_pattern(rng: &mut impl Rng, tri: &Triangulation, state: &BuilderState) -> PatternCoords {
    loop {
        let mut p = PatternCoords::zero(tri);
        for w in &state.registry {
            for _ in 0..rng.gen_range(0..=2) {
                p = &p + w;
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_normal(rng: &mut impl Rng, tri: &Triangulation, state: &BuilderState) -> CurveSystem {
    realize(tri, &random_pattern(rng, tri, state)).unwrap()
}

/// Apply `moves` finger moves and null-curve insertions at random.
pub fn perturb(rng: &mut impl Rng, tri: &Triangulation, cs: &CurveSystem, moves: usize) -> CurveSystem {
    let mut cur = cs.clone();
    let mut done = 0;
    let mut attempts = 0;
    while done < moves && attempts < 50 * moves {
        attempts += 1;
        let next = if rng.gen_bool(0.2) || cur.is_empty() {
            let e = rng.gen_range(0..tri.edge_count());
            insert_null_curve(tri, &cur, e, rng.gen_range(0..=cur.count(e)))
        } else {
            let f = rng.gen_range(0..tri.face_count());
            let Some(&chord) = cur.chords(f).choose(rng) else { continue };
            let e = tri.face_edges(f)[rng.gen_range(0..3)];
            push_across(tri, &cur, f, chord, e, rng.gen_range(0..=cur.count(e)))
        };
        if let Ok(n) = next {
            cur = n;
            done += 1;
        }
    }
    cur
}
