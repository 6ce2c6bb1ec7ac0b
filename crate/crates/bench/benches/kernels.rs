use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use cograph::generators::{gnp, path};
use cograph::partition::{pureribbon, rodl_partition, thin_thick_partition};
use cograph::rational::ratio;
use cograph::viral::{count_copies, Pattern};
use cograph::{build_cotree, p4thm_extract, random_cograph};

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_cotree");
    for n in [500, 2000] {
        let (g, _) = random_cograph(n, &ratio(1, 2), 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| build_cotree(black_box(g)).unwrap()));
    }
    group.finish();
}

fn extraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("p4thm_extract");
    for n in [1000, 3000] {
        let (g, t) = random_cograph(n, &ratio(1, 2), 2).unwrap();
        let eps = ratio(1, 4);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| p4thm_extract(black_box(&t), &g, &eps).unwrap())
        });
    }
    group.finish();
}

fn partitioning(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    group.sample_size(10);
    let (g, t) = random_cograph(3000, &ratio(1, 2), 21).unwrap();
    for (label, num, den) in [("1/10", 1, 10), ("3/10", 3, 10), ("1/2", 1, 2)] {
        let eps = ratio(num, den);
        group.bench_function(BenchmarkId::new("rodl", label), |b| {
            b.iter(|| rodl_partition(black_box(&t), &g, &eps).unwrap())
        });
    }
    group.bench_function("pureribbon/1/2", |b| b.iter(|| pureribbon(black_box(&t), &g, &ratio(1, 2)).unwrap()));
    group.bench_function("thin_thick", |b| b.iter(|| thin_thick_partition(black_box(&t), &g).unwrap()));
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_copies_p4");
    group.sample_size(10);
    let p4 = Pattern::new(path(4)).unwrap();
    for n in [100, 300] {
        let g = gnp(n, &ratio(1, 2), 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| count_copies(&p4, black_box(g))));
    }
    group.finish();
}

criterion_group!(benches, recognition, extraction, partitioning, counting);
criterion_main!(benches);
