use criterion::{criterion_group, criterion_main, Criterion};
use quantdisk::disk::{seminorm_r, ConeModel, IndexTriple};
use quantdisk::exact::rat;
use quantdisk::seminorm::{comparison_constant, HEngine};
use quantdisk::zoo::{PolyBasis, PolyModel};
use quantdisk_bench::{cone_element, dense_poly};
use std::hint::black_box;

fn poly_table(c: &mut Criterion) {
    let model = PolyModel::new(PolyBasis::Factorial);
    let a = dense_poly(8);
    c.bench_function("poly_h_m2", |b| {
        b.iter(|| {
            let engine = HEngine::new(&model, &a).unwrap();
            for g in 0..12u64 {
                for ell in 0..4 {
                    black_box(engine.h(2, ell, &g).unwrap());
                }
            }
        })
    });
}

fn cone_r_seminorm(c: &mut Criterion) {
    let cone = ConeModel::new(1, rat(1, 2)).unwrap();
    let a = cone_element(1, 1);
    c.bench_function("cone_seminorm_r_depth16", |b| {
        b.iter(|| {
            let engine = HEngine::new(&cone, &a).unwrap();
            black_box(seminorm_r(&engine, 1, 1, &rat(2, 1), 16).unwrap())
        })
    });
    c.bench_function("cone_h_m1_unit", |b| {
        b.iter(|| {
            let engine = HEngine::new(&cone, &a).unwrap();
            black_box(engine.h(1, 0, &IndexTriple::unit(1)).unwrap())
        })
    });
}

fn kothe(c: &mut Criterion) {
    c.bench_function("comparison_constant_depth20", |b| b.iter(|| comparison_constant(black_box(&rat(1, 1)), 20).unwrap()));
}

criterion_group!(benches, poly_table, cone_r_seminorm, kothe);
criterion_main!(benches);
