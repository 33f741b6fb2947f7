//! Timings for the three computation paths on the same inputs, plus the
//! building blocks they share. Run with `cargo bench -p semiq-bench`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semiq_core::oracle::build_sieve;
use semiq_core::{
    apery_set, gap_aap_quotient, ob_solve, quotient_invariants, structured_invariants,
    GeneratorList, ObTable, QuotientSpec, StructuredFamily,
};

/// The gap family instance (a=300, h=4, d=7, skip 6, top 13) at p=5, small
/// enough for the sieve yet large enough to separate the three paths.
fn gap_family() -> (StructuredFamily, GeneratorList) {
    let b: Vec<u64> = (7..=13).collect();
    let fam = StructuredFamily::new(300, 4, 7, &b).unwrap();
    let gens = fam.generator_list().clone();
    (fam, gens)
}

fn bench_paths(c: &mut Criterion) {
    let (fam, gens) = gap_family();
    let mut group = c.benchmark_group("quotient-paths");

    group.bench_function("closed-form", |bench| {
        bench.iter(|| gap_aap_quotient(black_box(300), 4, 7, 6, 13, 5).unwrap())
    });
    group.bench_function("min-coins", |bench| {
        bench.iter(|| structured_invariants(black_box(&fam), 5).unwrap())
    });
    group.bench_function("apery-scan", |bench| {
        bench.iter(|| {
            let q = QuotientSpec::new(black_box(&gens).clone(), 5).unwrap();
            quotient_invariants(&q).unwrap()
        })
    });

    group.finish();
}

fn bench_apery_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("apery-table");
    for modulus in [101u64, 1009, 10007] {
        let gens =
            GeneratorList::from_unsigned(&[modulus, 2 * modulus + 3, 3 * modulus + 7]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(modulus), &gens, |bench, gens| {
            bench.iter(|| apery_set(black_box(gens), gens.first()).unwrap())
        });
    }
    group.finish();
}

fn bench_min_coins(c: &mut Criterion) {
    let parts = [7u64, 11, 13, 17, 19];
    let mut group = c.benchmark_group("min-coins");

    group.bench_function("table-2000", |bench| {
        bench.iter(|| {
            let mut table = ObTable::new(black_box(&parts)).unwrap();
            let mut sum = 0u64;
            for m in 1..=2000 {
                if let Some(v) = table.value(m).unwrap() {
                    sum += v;
                }
            }
            sum
        })
    });
    group.bench_function("single-1999", |bench| {
        bench.iter(|| ob_solve(black_box(&parts), 1999).unwrap())
    });

    group.finish();
}

fn bench_sieve(c: &mut Criterion) {
    let gens = GeneratorList::from_unsigned(&[84, 353, 454, 555, 656]).unwrap();
    c.bench_function("sieve-build", |bench| {
        bench.iter(|| build_sieve(black_box(&gens), None).unwrap())
    });
}

criterion_group!(
    benches,
    bench_paths,
    bench_apery_table,
    bench_min_coins,
    bench_sieve
);
criterion_main!(benches);
