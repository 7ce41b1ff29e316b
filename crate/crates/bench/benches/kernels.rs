use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qtwist::coeffring::{qbinom, qint, RingContext};
use qtwist::hopf::HopfContext;
use qtwist::presentations::ParameterSet;
use qtwist::twistmap::verify_twist;
use qtwist::RootDatum;

fn poly(c: &mut Criterion) {
    let ctx = RingContext::builder().laurent("q", 1).build().unwrap();
    let q = ctx.unit("q").unwrap();
    let a = qint(12, &q).unwrap();
    let b = qint(9, &q).unwrap();
    c.bench_function("qint product", |bch| bch.iter(|| black_box(&a) * black_box(&b)));
    let ab = &a * &b;
    c.bench_function("exact division", |bch| bch.iter(|| black_box(&ab).div_exact(black_box(&b))));
    c.bench_function("qbinom 16", |bch| bch.iter(|| (0..=16).map(|k| qbinom(16, k, &q).unwrap()).count()));
}

fn hopf(c: &mut Criterion) {
    let g2 = RootDatum::builtin("g2").unwrap();
    let h = HopfContext::new(&g2).unwrap();
    c.bench_function("g2 coproduct serre", |bch| bch.iter(|| h.verify_delta_serre(0, 1).unwrap()));
}

fn twist(c: &mut Criterion) {
    let a2 = RootDatum::builtin("a2").unwrap();
    let p = ParameterSet::twist_generic(&a2).unwrap();
    let w = a2.window(1);
    let mut g = c.benchmark_group("twist");
    g.sample_size(10);
    g.bench_function("a2 window 1", |bch| bch.iter(|| verify_twist(&a2, &p, &w).unwrap()));
    g.finish();
}

criterion_group!(benches, poly, hopf, twist);
criterion_main!(benches);
