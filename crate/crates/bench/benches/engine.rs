use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tw2cat_core::adj::{adjunction_sweep, comma_truncated, Kind, OrdMap, DEFAULT_COMMA_CEILING};
use tw2cat_core::homology::{derived_limit, nerve_homology, quillen_cohomology, AbDiagram, AbPresentation};
use tw2cat_core::linalg::{smith_normal_form, IntMatrix};
use tw2cat_core::simplicial::{nerve, two_nerve};
use tw2cat_core::tw2::{b2, quillen_model, tw2, Monoid};
use tw2cat_core::two_cat::DEFAULT_CEILING;
use tw2cat_core::FinCategory;

/// A deterministic 12 × 12 matrix with entries in [−9, 9].
fn sample_matrix() -> IntMatrix {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let rows: Vec<Vec<i64>> = (0..12)
        .map(|_| {
            (0..12)
                .map(|_| {
                    state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows, 12)
}

fn linear_algebra(c: &mut Criterion) {
    let m = sample_matrix();
    c.bench_function("smith_normal_form 12x12", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn nerves(c: &mut Criterion) {
    let bz3 = Monoid::cyclic(3).delooping();
    c.bench_function("nerve homology BZ/3 dim 4", |b| b.iter(|| nerve_homology(black_box(&bz3), 4).unwrap()));
    let b2z2 = Arc::new(b2(&Monoid::cyclic(2)).unwrap());
    c.bench_function("2-nerve B2Z/2 dim 4", |b| b.iter(|| two_nerve(black_box(&b2z2), 4, DEFAULT_CEILING).unwrap()));
    let poset = FinCategory::poset((0..4).map(|i| i.to_string()).collect(), |a, b| a == b || (a == 0) || (b == 3));
    let x = nerve(&poset, 4);
    c.bench_function("derived limit of constant Z over a 4-element poset", |b| {
        b.iter(|| derived_limit(&AbDiagram::constant(black_box(&x), AbPresentation::free(1))).unwrap())
    });
}

fn twisted(c: &mut Criterion) {
    let b2z3 = b2(&Monoid::cyclic(3)).unwrap();
    c.bench_function("tw2 of B2Z/3", |b| b.iter(|| tw2(black_box(&b2z3), DEFAULT_CEILING).unwrap()));
    let b2z2 = b2(&Monoid::cyclic(2)).unwrap();
    c.bench_function("Quillen cohomology of B2Z/2 in degrees -2..1", |b| {
        b.iter(|| {
            let model = quillen_model(black_box(&b2z2), 4, DEFAULT_CEILING).unwrap();
            quillen_cohomology(&AbDiagram::constant(&model.nerve, AbPresentation::free(1)), -2, 1).unwrap()
        })
    });
}

fn adjunctions(c: &mut Criterion) {
    c.bench_function("compatibility sweep n, m <= 6", |b| b.iter(|| adjunction_sweep(black_box(6)).unwrap()));
    let sigma = OrdMap::identity(0, 0, 1);
    c.bench_function("split comma truncation at bound 3", |b| {
        b.iter(|| comma_truncated(Kind::Split, black_box(&sigma), 3, DEFAULT_COMMA_CEILING).unwrap())
    });
}

criterion_group!(benches, linear_algebra, nerves, twisted, adjunctions);
criterion_main!(benches);
