use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hhcyc::catalog;
use hhcyc::cyclic::{delta, hc_minus};
use hhcyc::exactla::rank;
use hhcyc::hochschild::{build_reduced_complex, hh};
use hhcyc::ComputationParams;

const ENTRIES: [&str; 4] = ["ground_field", "a2", "a3", "dual_numbers"];

fn homology(c: &mut Criterion) {
    let params = ComputationParams::default();
    let mut group = c.benchmark_group("hh");
    for name in ENTRIES {
        let cat = catalog::by_name(name).unwrap().category;
        group.bench_with_input(BenchmarkId::from_parameter(name), &cat, |b, cat| b.iter(|| hh(black_box(cat), &params)));
    }
    group.finish();

    let mut group = c.benchmark_group("hc_minus");
    group.sample_size(10);
    for name in ENTRIES {
        let cat = catalog::by_name(name).unwrap().category;
        group.bench_with_input(BenchmarkId::from_parameter(name), &cat, |b, cat| b.iter(|| hc_minus(black_box(cat), &params)));
    }
    group.finish();

    let mut group = c.benchmark_group("delta");
    group.sample_size(10);
    for name in ["a2", "dual_numbers"] {
        let cat = catalog::by_name(name).unwrap().category;
        group.bench_with_input(BenchmarkId::from_parameter(name), &cat, |b, cat| b.iter(|| delta(black_box(cat), &params)));
    }
    group.finish();
}

fn ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for (name, length) in [("a3", 6), ("dual_numbers", 8)] {
        let mixed = build_reduced_complex(&catalog::by_name(name).unwrap().category, length);
        let widest = mixed.degrees().max_by_key(|&n| mixed.words_in_degree(n).len()).unwrap();
        let m = mixed.b_matrix(widest);
        group.bench_function(BenchmarkId::new(name, widest), |b| b.iter(|| rank(black_box(&m))));
    }
    group.finish();
}

criterion_group!(benches, homology, ranks);
criterion_main!(benches);
