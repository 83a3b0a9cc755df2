use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tracklab::corpus::{run_corpus, CorpusConfig};
use tracklab::{generate, oracle_enumerate_tracks, GeneratorSpec};

fn corpus(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    // jobs = 1 is the sequential path
    for jobs in [1usize, 0] {
        let cfg = CorpusConfig {
            trials: 16,
            seed: 7,
            min_vertices: 8,
            max_vertices: 16,
            jobs: (jobs > 0).then_some(jobs),
        };
        let name = if jobs == 1 { "sequential" } else { "parallel" };
        g.bench_with_input(BenchmarkId::new(name, cfg.trials), &cfg, |b, cfg| b.iter(|| run_corpus(cfg)));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let tri = generate(GeneratorSpec::Tetrahedron, 0).unwrap();
    c.bench_function("oracle_tetrahedron_b3", |b| b.iter(|| oracle_enumerate_tracks(&tri, 3).unwrap()));
}

criterion_group!(benches, corpus, oracle);
criterion_main!(benches);
