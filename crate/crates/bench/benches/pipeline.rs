use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use muext_bench::example_rings;
use muext_core::cyclotomic::{pth_root_in_field, CycElem};
use muext_core::ext::compute_ext;
use muext_core::local::{is_pth_power_local, local_power_class_generators, LocalFieldSpec};

fn pth_roots(c: &mut Criterion) {
    let x = CycElem::from_int_coeffs(12, &[3, -1, 4, 1]).unwrap().pow(3);
    c.bench_function("pth_root_in_field/cube_in_q_zeta12", |b| b.iter(|| pth_root_in_field(black_box(&x), 3).unwrap()));
}

fn local_tests(c: &mut Criterion) {
    let q2 = LocalFieldSpec::with_default_precision(2, 1).unwrap();
    let minus_seven = q2.from_int(-7).unwrap();
    c.bench_function("is_pth_power_local/minus_seven_q2", |b| {
        b.iter(|| is_pth_power_local(black_box(&minus_seven)).unwrap())
    });
    let q3 = LocalFieldSpec::with_default_precision(3, 12).unwrap();
    c.bench_function("local_power_class_generators/q3_zeta12", |b| {
        b.iter(|| local_power_class_generators(black_box(&q3)).unwrap())
    });
}

fn ext(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_ext");
    group.sample_size(10);
    for (label, ring) in example_rings() {
        group.bench_with_input(BenchmarkId::from_parameter(label), &ring, |b, ring| {
            b.iter(|| compute_ext(ring, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pth_roots, local_tests, ext);
criterion_main!(benches);
