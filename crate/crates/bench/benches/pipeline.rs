use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use dlqs_bench::{chain, corpus};
use dlqs_core::pipeline::{prepare, Config, Engine};

fn grounding(c: &mut Criterion) {
    let (kb, _) = chain();
    let cfg = Config::default();
    c.bench_function("prepare/chain", |b| b.iter(|| prepare(black_box(&kb), &cfg).unwrap()));
}

fn consistency(c: &mut Criterion) {
    let (kb, _) = chain();
    let cfg = Config::default();
    let p = prepare(&kb, &cfg).unwrap();
    c.bench_function("check/chain", |b| b.iter(|| p.check(&cfg).unwrap().is_satisfiable()));
}

fn answering(c: &mut Criterion) {
    let (kb, q) = chain();
    let cfg = Config::default();
    let p = prepare(&kb, &cfg).unwrap();
    let psi = p.psi(&q).unwrap();
    let mut g = c.benchmark_group("query/chain");
    g.sample_size(20);
    g.bench_function("tableau", |b| b.iter(|| p.query(&psi, Engine::Tableau, &cfg).unwrap()));
    g.bench_function("naive", |b| b.iter(|| p.query(&psi, Engine::Naive, &cfg).unwrap()));
    g.finish();
}

fn corpus_run(c: &mut Criterion) {
    let pairs = corpus(7, 20);
    let cfg = Config::default();
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    for engine in [Engine::Tableau, Engine::Naive] {
        g.bench_function(format!("{engine:?}").to_lowercase(), |b| {
            b.iter_batched(
                || pairs.clone(),
                |pairs| {
                    for (kb, q) in &pairs {
                        let p = prepare(kb, &cfg).unwrap();
                        let psi = p.psi(q).unwrap();
                        black_box(p.query(&psi, engine, &cfg).unwrap());
                    }
                },
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

criterion_group!(benches, grounding, consistency, answering, corpus_run);
criterion_main!(benches);
