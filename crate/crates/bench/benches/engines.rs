use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use treemult_bench::{caterpillar, lambdas, trees};
use treemult_core::families::Classifier;
use treemult_core::spectrum::{char_poly, multiplicity, multiplicity_via_rank};
use treemult_core::tree::enumerate_trees;
use treemult_core::{sweep, Gamma2Mode, LambdaSpec, SweepConfig};

fn engines(c: &mut Criterion) {
    let t = caterpillar(8);
    let half = LambdaSpec::new(1, 2).unwrap();
    let mut g = c.benchmark_group("multiplicity");
    g.bench_function("division n=24", |b| b.iter(|| multiplicity(black_box(&t), &half)));
    g.bench_function("rank n=24", |b| b.iter(|| multiplicity_via_rank(black_box(&t), &half)));
    g.bench_function("charpoly n=24", |b| b.iter(|| char_poly(black_box(&t))));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate n=14", |b| {
        b.iter(|| enumerate_trees(black_box(14)).unwrap().count())
    });
}

fn classification(c: &mut Criterion) {
    let ts = trees(9);
    let ls = lambdas(6);
    c.bench_function("classify n=9 M<=6 broad", |b| {
        b.iter(|| {
            let cl = Classifier::new();
            let mut members = 0usize;
            for t in &ts {
                for l in &ls {
                    members += usize::from(cl.family(t, l, Gamma2Mode::Broad).level().is_some());
                }
            }
            members
        })
    });
}

fn sweeping(c: &mut Criterion) {
    let config = SweepConfig {
        n_min: 1,
        n_max: 8,
        m_max: 9,
        workers: 1,
        ..SweepConfig::default()
    };
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("n<=8 M<=9", |b| b.iter(|| sweep(black_box(&config)).unwrap().records.len()));
    g.finish();
}

criterion_group!(benches, engines, enumeration, classification, sweeping);
criterion_main!(benches);
