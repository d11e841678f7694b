use criterion::{black_box, criterion_group, criterion_main, Criterion};

use reflexive::bounds::oldbound_threshold;
use reflexive::moduli::check_fano_theorem;
use reflexive::vanish::infer;
use reflexive_bench::{closed_form_agreements, conic_context, grid};

fn euler(c: &mut Criterion) {
    let g = grid(5, -5..=5, 1..=40, 0..=20);
    c.bench_function("closed form vs rr, quintic grid", |b| {
        b.iter(|| closed_form_agreements(5, black_box(&g)))
    });
}

fn bounds(c: &mut Criterion) {
    c.bench_function("oldbound thresholds 1..=5000", |b| {
        b.iter(|| (1..=5000).map(|s| oldbound_threshold(black_box(s)).unwrap()).sum::<i64>())
    });
}

fn inference(c: &mut Criterion) {
    let ctx = conic_context();
    c.bench_function("infer conic on cubic", |b| b.iter(|| infer(black_box(&ctx)).unwrap()));
    c.bench_function("fano report conic on cubic", |b| {
        b.iter(|| check_fano_theorem(black_box(&ctx)).unwrap())
    });
}

criterion_group!(benches, euler, bounds, inference);
criterion_main!(benches);
