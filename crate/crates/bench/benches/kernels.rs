use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sumsq_core::lattice::rd_table_convolution;
use sumsq_core::{bessel_k0, chi_direct, xi_brute, xi_formula, Accuracy, ChiMode, EvalConfig};

fn chi(c: &mut Criterion) {
    let mut g = c.benchmark_group("chi_direct");
    for lambda in [0.1, 1.0, 100.0] {
        g.bench_with_input(BenchmarkId::from_parameter(lambda), &lambda, |b, &l| {
            b.iter(|| chi_direct(black_box(2), l, Accuracy::default()).unwrap())
        });
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("rd_table_convolution");
    g.sample_size(20);
    for d in [2u32, 3, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| rd_table_convolution(d, black_box(100_000)).unwrap())
        });
    }
    g.finish();
}

fn sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("xi");
    g.sample_size(20);
    let cfg = EvalConfig::new(3, 1.0).unwrap();
    g.bench_function("brute_d3_l1", |b| b.iter(|| xi_brute(black_box(cfg), 0).unwrap()));
    g.bench_function("formula_d3_l1", |b| {
        b.iter(|| xi_formula(black_box(cfg), ChiMode::DirectChi).unwrap())
    });
    g.finish();
}

fn k0(c: &mut Criterion) {
    c.bench_function("bessel_k0", |b| {
        b.iter(|| {
            let mut s = 0.0;
            for i in 1..200 {
                s += bessel_k0(black_box(0.05 * i as f64)).unwrap();
            }
            s
        })
    });
}

criterion_group!(benches, chi, tables, sums, k0);
criterion_main!(benches);
