use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quantdisk::algebra::multiply;
use quantdisk::disk::{disk_multiply, ConeModel, DiskModel};
use quantdisk::exact::rat;
use quantdisk::zoo::{PolyBasis, PolyModel};
use quantdisk_bench::{cone_element, dense_poly, disk_element};
use std::hint::black_box;

fn cone_products(c: &mut Criterion) {
    let mut g = c.benchmark_group("cone_product");
    for level in [1u32, 2, 3] {
        let cone = ConeModel::new(1, rat(1, 2)).unwrap();
        let a = cone_element(1, level);
        g.bench_with_input(BenchmarkId::new("n1", level), &level, |b, _| {
            b.iter(|| multiply(&cone, black_box(&a), black_box(&a)).unwrap())
        });
    }
    let cone = ConeModel::new(2, rat(1, 2)).unwrap();
    let a = cone_element(2, 2);
    g.bench_function("n2/2", |b| b.iter(|| multiply(&cone, black_box(&a), black_box(&a)).unwrap()));
    g.finish();
}

fn disk_products(c: &mut Criterion) {
    let mut g = c.benchmark_group("disk_product");
    for level in [1u32, 2, 3] {
        let disk = DiskModel::new(1, rat(1, 2)).unwrap();
        let a = disk_element(1, level);
        g.bench_with_input(BenchmarkId::new("n1", level), &level, |b, _| {
            b.iter(|| disk_multiply(&disk, black_box(&a), black_box(&a)).unwrap())
        });
    }
    g.finish();
}

fn poly_products(c: &mut Criterion) {
    let model = PolyModel::new(PolyBasis::Factorial);
    let a = dense_poly(40);
    c.bench_function("poly_factorial_product/40", |b| b.iter(|| multiply(&model, black_box(&a), black_box(&a)).unwrap()));
}

criterion_group!(benches, cone_products, disk_products, poly_products);
criterion_main!(benches);
