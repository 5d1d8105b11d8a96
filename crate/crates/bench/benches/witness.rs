use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use terna_core::lemmas::lemma22_construct;
use terna_core::witness::{construct, Clause};

fn clauses(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    for clause in Clause::ALL {
        g.bench_with_input(
            BenchmarkId::from_parameter(clause.tag()),
            &clause,
            |b, &cl| {
                let mut n = 0u64;
                b.iter(|| {
                    n = (n + 7919) % 1_000_000;
                    construct(cl, black_box(n)).unwrap()
                })
            },
        );
    }
    g.finish();
}

fn five_five_one(c: &mut Criterion) {
    c.bench_function("lemma22/n<=5000", |b| {
        b.iter(|| {
            for n in (0..=5000u64).step_by(97) {
                black_box(lemma22_construct(n, 6).unwrap());
                black_box(lemma22_construct(n, 14).unwrap());
            }
        })
    });
}

criterion_group!(benches, clauses, five_five_one);
criterion_main!(benches);
