use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use metadice::{duel, generate, verify_family, Die, Preset};

fn duels(c: &mut Criterion) {
    let a: Die = "222x2,489x2,954x2".parse().unwrap();
    let b: Die = "122x2,689x2,854x2".parse().unwrap();
    c.bench_function("duel/width-3", |bench| {
        bench.iter(|| duel(black_box(&a), black_box(&b)).unwrap())
    });
}

fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for k in [3usize, 5, 7] {
        let stack = Preset::Uniform(k).stack().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &stack, |bench, s| {
            bench.iter(|| generate(s, 2).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for preset in [Preset::Paper3, Preset::Uniform(4), Preset::Uniform(5)] {
        let family = generate(&preset.stack().unwrap(), 2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(preset), &family, |bench, f| {
            bench.iter(|| verify_family(black_box(f)))
        });
    }
    group.finish();
}

criterion_group!(benches, duels, generation, verification);
criterion_main!(benches);
