use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use iecc_bench::builtin;
use iecc_core::attacks::{attack_two, merge_triple_word, mount_attack_one, SearchConfig};
use iecc_core::combinatorics::{close_triples, FamilyKind};
use iecc_core::harness::{run, RunConfig};
use iecc_core::rational::ratio;
use iecc_core::BitString;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn attacks(c: &mut Criterion) {
    let echo = builtin("codebook-echo", 470, 10, 0).protocol;
    c.bench_function("attack_one/codebook-echo n=470", |b| {
        b.iter(|| mount_attack_one(black_box(&echo), [0, 1, 2]).unwrap())
    });

    let small = builtin("codebook-echo", 40, 4, 0).protocol;
    c.bench_function("attack_two/codebook-echo n=40 k=4", |b| {
        b.iter(|| attack_two(black_box(&small), ratio(1, 8), &SearchConfig::default()))
    });

    let prg = builtin("prg", 60, 4, 3);
    c.bench_function("run/prg n=60 k=4", |b| {
        b.iter(|| run(black_box(&prg), &RunConfig::default()).unwrap())
    });
}

fn combinatorics(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let family = FamilyKind::Random.generate(&mut rng, 32, 64);
    c.bench_function("close_triples K=32 l=64", |b| {
        b.iter(|| close_triples(black_box(&family), ratio(1, 16)).len())
    });

    let words: Vec<BitString> = ["0011010110010111", "0110110010010101", "1011010011000111"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    c.bench_function("merge_triple_word A=16", |b| {
        b.iter(|| merge_triple_word(&words[0], &words[1], &words[2], ratio(1, 8)).unwrap())
    });
}

criterion_group!(benches, attacks, combinatorics);
criterion_main!(benches);
