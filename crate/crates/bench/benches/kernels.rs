use criterion::{criterion_group, criterion_main, Criterion};
use wpcount_core::*;

fn ws(v: &[u32]) -> WeightSystem {
    WeightSystem::new(v.to_vec()).unwrap()
}

fn bench_enumerate(c: &mut Criterion) {
    let field = Field::of_order(9).unwrap();
    let w = ws(&[1, 2, 3]);
    c.bench_function("enumerate_points (1,2,3)/GF(9)", |b| {
        b.iter(|| enumerate_points(&w, &field).unwrap())
    });
}

fn bench_count_zeros(c: &mut Criterion) {
    let field = Field::of_order(7).unwrap();
    let w = ws(&[1, 2, 3]);
    let f = parse_poly("X0^6 + X1^3 + X2^2", &w, &field).unwrap();
    c.bench_function("count_zeros sextic on (1,2,3)/GF(7)", |b| {
        b.iter(|| count_zeros(&f, &field).unwrap())
    });
}

fn bench_eq_exhaustive(c: &mut Criterion) {
    let field = Field::of_order(3).unwrap();
    let w = ws(&[1, 1, 2]);
    c.bench_function("eq_exhaustive d=3 (1,1,2)/GF(3)", |b| {
        b.iter(|| eq_exhaustive(&w, 3, &field).unwrap())
    });
}

criterion_group!(benches, bench_enumerate, bench_count_zeros, bench_eq_exhaustive);
criterion_main!(benches);
