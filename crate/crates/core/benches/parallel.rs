use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ebug_core::lfsr::lfsr_translate;
use ebug_core::necklace::{interleave_with, product_with};
use ebug_core::oracle::{max_k_cycles_with, verify_conjecture};
use ebug_core::{Colouring, CyclicWord, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn quaternary() -> Colouring {
    let words = [
        "00030333", "10021233", "11020323", "11120232", "01130223", "10131222", "01031322", "00121332",
    ]
    .iter()
    .map(|s| CyclicWord::parse(s).unwrap())
    .collect();
    Colouring::new(4, 8, 3, words).unwrap()
}

fn combinators(c: &mut Criterion) {
    let table = quaternary();
    let two = lfsr_translate(2, 5, None).unwrap();
    let four = product_with(&two, &two, Exec::Sequential).unwrap();
    let mut g = c.benchmark_group("combinators");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("interleave_table", name), &exec, |b, &e| {
            b.iter(|| interleave_with(&table, 2, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("product_2_16_5", name), &exec, |b, &e| {
            b.iter(|| product_with(&two, &two, e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("interleave_4_16_5", name), &exec, |b, &e| {
            b.iter(|| interleave_with(&four, 2, e).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("max_k_cycles_2_10_7", name), &exec, |b, &e| {
            b.iter(|| max_k_cycles_with(2, 10, 7, Duration::from_secs(60), e).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("conjecture_16", name), &exec, |b, &e| {
            b.iter(|| verify_conjecture(16, Duration::from_secs(60), e))
        });
    }
    g.finish();
}

criterion_group!(benches, combinators, search);
criterion_main!(benches);
