use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pblp_core::breakpoints::enumerate_breakpoints_with;
use pblp_core::io::parse_problem;
use pblp_core::random::{random_instance, random_lp, InstanceShape};
use pblp_core::{build_tolp, decompose, solve_lp, Case, Method, Pblp};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXAMPLE_TWO: &str = include_str!("../../../data/example2.pblp");

fn corpus(count: usize) -> Vec<Pblp> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..count)
        .map(|i| {
            let case = if i % 2 == 0 { Case::One } else { Case::Two };
            random_instance(&mut rng, InstanceShape::default(), case)
        })
        .collect()
}

fn decomposition(c: &mut Criterion) {
    let p = parse_problem(EXAMPLE_TWO).unwrap();
    let t = build_tolp(&p);
    c.bench_function("decompose/example2", |b| {
        b.iter(|| decompose(black_box(&t)).unwrap())
    });
    let instances = corpus(20);
    c.bench_function("decompose/random20", |b| {
        b.iter(|| {
            for p in &instances {
                black_box(decompose(&build_tolp(p)).unwrap());
            }
        })
    });
}

fn intervals(c: &mut Criterion) {
    let mut group = c.benchmark_group("intervals");
    let instances: Vec<_> = corpus(20)
        .into_iter()
        .map(|p| {
            let dec = decompose(&build_tolp(&p)).unwrap();
            (p, dec)
        })
        .collect();
    for method in [Method::AlgorithmOne, Method::AdaptedWsd] {
        group.bench_with_input(
            BenchmarkId::from_parameter(method.name()),
            &method,
            |b, &m| {
                b.iter(|| {
                    for (p, dec) in &instances {
                        black_box(enumerate_breakpoints_with(p, dec, m).unwrap());
                    }
                })
            },
        );
    }
    group.finish();
}

fn simplex(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let lps: Vec<_> = (0..50)
        .map(|_| random_lp(&mut rng, InstanceShape::default()))
        .collect();
    c.bench_function("solve_lp/random50", |b| {
        b.iter(|| {
            for lp in &lps {
                black_box(solve_lp(lp));
            }
        })
    });
}

criterion_group!(benches, decomposition, intervals, simplex);
criterion_main!(benches);
