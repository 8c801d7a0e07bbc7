use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use isgw::congruences::{all_congruences_rees, double_arrow};
use isgw::corpus::{builtin, CorpusConfig};
use isgw::groupoid::build_groupoids;
use isgw::verify::{verify_corpus, VerifyConfig};
use isgw::InverseSemigroup;
use isgw_bench::{looped_cycle, symmetric_generators};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [3, 4, 5] {
        let gens = symmetric_generators(n);
        group.bench_function(format!("I{n}"), |b| {
            b.iter(|| black_box(InverseSemigroup::from_generators(black_box(&gens), 10_000).unwrap()))
        });
    }
    group.finish();
}

fn congruences(c: &mut Criterion) {
    let i3 = InverseSemigroup::from_generators(&symmetric_generators(3), 100).unwrap();
    let i4 = InverseSemigroup::from_generators(&symmetric_generators(4), 1000).unwrap();
    let i2 = InverseSemigroup::from_generators(&symmetric_generators(2), 100).unwrap();
    c.bench_function("double_arrow/I4", |b| b.iter(|| black_box(double_arrow(black_box(&i4)).unwrap())));
    c.bench_function("all_rees/I2_enumerated", |b| {
        b.iter(|| black_box(all_congruences_rees(black_box(&i2), 10).unwrap()))
    });
    c.bench_function("all_rees/I3_by_ideals", |b| {
        b.iter(|| black_box(all_congruences_rees(black_box(&i3), 10).unwrap()))
    });
}

fn groupoids(c: &mut Criterion) {
    let i3 = InverseSemigroup::from_generators(&symmetric_generators(3), 100).unwrap();
    let i4 = InverseSemigroup::from_generators(&symmetric_generators(4), 1000).unwrap();
    c.bench_function("groupoids/I3", |b| b.iter(|| black_box(build_groupoids(black_box(&i3)).unwrap())));
    c.bench_function("groupoids/I4", |b| b.iter(|| black_box(build_groupoids(black_box(&i4)).unwrap())));
}

fn graphs(c: &mut Criterion) {
    let g = looped_cycle(8);
    c.bench_function("graph_conditions/looped_cycle_8", |b| b.iter(|| black_box(black_box(&g).conditions())));
    c.bench_function("hereditary_sets/looped_cycle_8", |b| {
        b.iter(|| black_box(black_box(&g).hereditary_sets().unwrap()))
    });
}

fn corpus(c: &mut Criterion) {
    let entries = builtin(&CorpusConfig::default());
    let cfg = VerifyConfig::default();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("builtin_corpus", |b| b.iter(|| black_box(verify_corpus(black_box(&entries), &cfg).unwrap())));
    group.finish();
}

criterion_group!(benches, closure, congruences, groupoids, graphs, corpus);
criterion_main!(benches);
