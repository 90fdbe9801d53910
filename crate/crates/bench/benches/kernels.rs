use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tropint::intersection::{mixed_volume, stable_intersection};
use tropint::lattice::{hermite_normal_form, smith_decomposition};
use tropint::valued_poly::tropicalize;
use tropint_bench::{dense_matrix, plane_curve};

fn lattice(c: &mut Criterion) {
    let m = dense_matrix(6);
    c.bench_function("hnf 6x6", |b| b.iter(|| hermite_normal_form(black_box(&m))));
    c.bench_function("snf 6x6", |b| b.iter(|| smith_decomposition(black_box(&m))));
}

fn tropical(c: &mut Criterion) {
    let f = plane_curve(3);
    let g = plane_curve(2);
    c.bench_function("tropicalize cubic", |b| b.iter(|| tropicalize(black_box(&f)).unwrap()));
    let a = tropicalize(&f).unwrap();
    let bb = tropicalize(&g).unwrap();
    c.bench_function("stable cubic x conic", |b| {
        b.iter(|| stable_intersection(black_box(&a), black_box(&bb)).unwrap())
    });
    let p = [f.newton_polytope().unwrap(), g.newton_polytope().unwrap()];
    c.bench_function("mixed volume", |b| b.iter(|| mixed_volume(black_box(&p)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lattice, tropical
}
criterion_main!(benches);
