use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use goeritz::amalgam::random_word;
use goeritz::farey::random_loop;
use goeritz::word::is_primitive;
use goeritz::{
    ball, contract_loop, normal_form, seeded_rng, FareyConfig, FareyOracles, ReducedWord, SimplicialLoop, Slope,
};

fn normal_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    let mut rng = seeded_rng(0);
    for len in [10, 100, 1000] {
        let w = random_word(&mut rng, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| b.iter(|| normal_form(black_box(w))));
    }
    group.finish();
}

fn tree_balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    for (radius, max_power) in [(2, 2), (4, 2), (6, 3)] {
        group.bench_function(format!("r{radius}_k{max_power}"), |b| {
            b.iter(|| ball(black_box(radius), black_box(max_power)).unwrap())
        });
    }
    group.finish();
}

fn primitivity(c: &mut Criterion) {
    let words: Vec<ReducedWord> =
        ["xyxyy", "xxyxxyxy", "xyXYxy", "xxxyxxyxxxy"].iter().map(|s| s.parse().unwrap()).collect();
    c.bench_function("is_primitive", |b| b.iter(|| words.iter().filter(|w| is_primitive(black_box(w))).count()));
}

fn contraction(c: &mut Criterion) {
    let oracles = FareyOracles::new(50);
    let loops: Vec<SimplicialLoop<Slope>> = (0..10)
        .map(|seed| {
            let images = random_loop(&mut seeded_rng(seed), 50, 30, FareyConfig::default());
            SimplicialLoop::new(images, &oracles, &Slope::INF).unwrap()
        })
        .collect();
    c.bench_function("contract_loop/farey_10_loops", |b| {
        b.iter(|| {
            loops
                .iter()
                .map(|lp| contract_loop(&oracles, &oracles, &oracles, lp, 1_000_000).unwrap().certificate.moves.len())
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, normal_forms, tree_balls, primitivity, contraction);
criterion_main!(benches);
