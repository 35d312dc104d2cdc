use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tableau_core::checks::{random_instances, type_a_sweep};
use tableau_core::localalg::hop;
use tableau_core::par::{par_map, seq_map};
use tableau_core::switching::pesh;
use tableau_core::TableauPair;

fn hop_ok(p: &TableauPair) -> bool {
    hop(&p.inner, &p.outer).is_ok()
}

// par_map falls back to a plain loop without the `parallel` feature
fn sweep(c: &mut Criterion) {
    let pairs = type_a_sweep(3, 4, 9);
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("hop", "sequential"), |b| b.iter(|| seq_map(&pairs, hop_ok)));
    g.bench_function(BenchmarkId::new("hop", if tableau_core::par::is_parallel() { "rayon" } else { "fallback" }), |b| {
        b.iter(|| par_map(&pairs, hop_ok))
    });
    g.finish();
}

fn local_vs_oracle(c: &mut Criterion) {
    let pairs = random_instances(7, 200);
    let mut g = c.benchmark_group("pesh");
    g.bench_function("hop", |b| b.iter(|| seq_map(&pairs, hop_ok)));
    g.bench_function("oracle", |b| b.iter(|| seq_map(&pairs, |p| pesh(p).is_ok())));
    g.finish();
}

criterion_group!(benches, sweep, local_vs_oracle);
criterion_main!(benches);
