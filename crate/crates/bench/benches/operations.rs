use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use jbcone_bench::{bench_algebras, Fixture};
use jbcone_core::geometry::{geodesic_through, symmetry, thompson_distance};
use jbcone_core::{run_suite, Algebra, SuiteId, SuiteSpec};

fn jordan(c: &mut Criterion) {
    let mut group = c.benchmark_group("jordan");
    for alg in bench_algebras() {
        let f = Fixture::new(alg, 1);
        let name = f.alg.to_string();
        group.bench_with_input(BenchmarkId::new("product", &name), &f, |bch, f| {
            bch.iter(|| black_box(&f.a).product(black_box(&f.b)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("quadratic_rep", &name), &f, |bch, f| {
            bch.iter(|| black_box(&f.a).quadratic_rep())
        });
        group.bench_with_input(BenchmarkId::new("spectral", &name), &f, |bch, f| {
            bch.iter(|| black_box(&f.a).spectral().unwrap())
        });
    }
    group.finish();
}

fn geometry(c: &mut Criterion) {
    let mut group = c.benchmark_group("geometry");
    for alg in bench_algebras() {
        let f = Fixture::new(alg, 2);
        let name = f.alg.to_string();
        group.bench_with_input(BenchmarkId::new("thompson", &name), &f, |bch, f| {
            bch.iter(|| thompson_distance(black_box(&f.x), black_box(&f.y)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("symmetry", &name), &f, |bch, f| {
            bch.iter(|| symmetry(black_box(&f.x), black_box(&f.y)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("geodesic", &name), &f, |bch, f| {
            bch.iter(|| geodesic_through(black_box(&f.x), black_box(&f.y), 0.3).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    for suite in [
        SuiteId::JordanIdentity,
        SuiteId::SymmetryLoos,
        SuiteId::ThompsonCaratheodory,
    ] {
        let spec = SuiteSpec::new(suite, Algebra::Sym(3), 50, 1e-9, 0);
        group.bench_with_input(
            BenchmarkId::from_parameter(suite.as_str()),
            &spec,
            |bch, spec| bch.iter(|| run_suite(black_box(spec)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, jordan, geometry, suites);
criterion_main!(benches);
