use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ql_bench::{curve_84, etype_40};
use ql_core::anchors::verify_all;
use ql_core::{
    enumerate_rank4_candidates, full_ideal_table, mapping_cone_n_from_e, match_acm_kernel,
    HilbertRow, TwistBounds, Window,
};

fn tables(c: &mut Criterion) {
    let curve = curve_84();
    c.bench_function("full_ideal_table (8,4) on Q", |b| {
        b.iter(|| full_ideal_table(black_box(&curve), Window::default()).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    c.bench_function("enumerate rank-4 candidates [-6,3]", |b| {
        b.iter(|| enumerate_rank4_candidates(black_box(TwistBounds::default()), 10_000).unwrap())
    });
    let target = HilbertRow::from_values(0, vec![0, 0, 0, 0, 8, 32, 80]).unwrap();
    c.bench_function("match kernel 0,0,0,0,8,32,80", |b| {
        b.iter(|| match_acm_kernel(black_box(&target), TwistBounds::default()).unwrap())
    });
}

fn liaison(c: &mut Criterion) {
    let res = etype_40();
    c.bench_function("mapping cone E -> N", |b| {
        b.iter(|| mapping_cone_n_from_e(black_box(&res), 2, 3).unwrap())
    });
}

fn anchors(c: &mut Criterion) {
    c.bench_function("verify all anchors", |b| b.iter(verify_all));
}

criterion_group!(benches, tables, classification, liaison, anchors);
criterion_main!(benches);
