use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use projcad::projection::cad_projection;
use projcad::subres::resultant;
use projcad::{cad_full, CadOptions, Method, MultiPoly};
use projcad_bench::problems;

fn full(c: &mut Criterion) {
    let mut group = c.benchmark_group("cad_full");
    for p in problems() {
        for method in [Method::McCallum, Method::Collins] {
            let opts = CadOptions { method, ..CadOptions::default() };
            group.bench_function(format!("{}/{method}", p.name), |b| {
                b.iter(|| cad_full(black_box(&p.polys), &p.order, opts).unwrap())
            });
        }
    }
    group.finish();
}

fn projection(c: &mut Criterion) {
    let mut group = c.benchmark_group("projection");
    for p in problems() {
        group.bench_function(p.name, |b| {
            b.iter(|| cad_projection(black_box(&p.polys), p.order.len(), Method::McCallum).unwrap())
        });
    }
    group.finish();
}

fn resultants(c: &mut Criterion) {
    let (x, y) = (MultiPoly::var(0), MultiPoly::var(1));
    let f = y.pow(4) + x.pow(3) * y.pow(2) - &x * &y + MultiPoly::constant(3);
    let g = y.pow(3) - x.pow(2) * y + x.pow(4) - MultiPoly::one();
    c.bench_function("resultant/deg4x3", |b| b.iter(|| resultant(black_box(&f), black_box(&g), 1).unwrap()));
}

criterion_group!(benches, full, projection, resultants);
criterion_main!(benches);
