use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use squiral::{enumerate_windows, inflate, squiral_rule, supertile, Limits, Oracle};

fn bench_inflate(c: &mut Criterion) {
    let rule = squiral_rule();
    let mut group = c.benchmark_group("inflate");
    for level in [5u32, 6, 7] {
        let tile = supertile(level).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(level), &tile, |b, t| {
            b.iter(|| inflate(black_box(t), &rule).unwrap())
        });
    }
    group.finish();
}

fn bench_windows(c: &mut Criterion) {
    let tile = supertile(6).unwrap();
    let mut group = c.benchmark_group("enumerate_windows_t6");
    group.sample_size(20);
    for (h, w) in [(4, 4), (10, 11), (25, 26), (70, 70)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{h}x{w}")),
            &(h, w),
            |b, &(h, w)| b.iter(|| enumerate_windows(black_box(&tile), h, w).unwrap().len()),
        );
    }
    group.finish();
}

fn bench_brute_triple(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_triple");
    group.sample_size(10);
    for n in [10u64, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            // fresh oracle each time so the saturation cache does not hide the work
            b.iter(|| {
                Oracle::new(Limits::default())
                    .brute_force_triple(n)
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_inflate, bench_windows, bench_brute_triple);
criterion_main!(benches);
