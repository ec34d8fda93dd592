use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cdlat_bench::{double_diamond, le_over_heisenberg, p2};
use cdlat_core::cdengine::{compute_cd_full, verify_predicted, VerifyOptions, DEFAULT_BUDGET};
use cdlat_core::gfplin::{enumerate_subspaces, subspace_partitions};
use cdlat_core::presentation::PerpScratch;

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate GF(2)^6 (2825 subspaces)", |b| {
        b.iter(|| {
            let n = enumerate_subspaces(6, p2(), None).count();
            black_box(n)
        })
    });
    c.bench_function("enumerate GF(2)^8 via visit (417199 subspaces)", |b| {
        let parts = subspace_partitions(8, p2(), None);
        b.iter(|| {
            let mut n = 0u64;
            for part in &parts {
                part.visit(|_| n += 1);
            }
            black_box(n)
        })
    });
}

fn bench_measure_throughput(c: &mut Criterion) {
    let (pres, _) = double_diamond();
    c.bench_function("measure all subspaces of dim <= 2, dd(2,2)", |b| {
        let parts: Vec<_> = subspace_partitions(8, p2(), Some(2));
        b.iter(|| {
            let mut scratch = PerpScratch::new(&pres);
            let mut acc = 0usize;
            for part in &parts {
                let k = part.dim();
                part.visit(|rows| {
                    acc += scratch.perp_dim(rows, k);
                });
            }
            black_box(acc)
        })
    });
}

fn bench_full_search(c: &mut Criterion) {
    let (pres, _) = le_over_heisenberg();
    c.bench_function("full CD search, d=6 mixed 3-string", |b| {
        b.iter(|| {
            let (lat, _) = compute_cd_full(&pres, DEFAULT_BUDGET, 1).unwrap();
            black_box(lat.members.len())
        })
    });
}

fn bench_verify(c: &mut Criterion) {
    let (pres, exp) = double_diamond();
    let predicted = exp.to_lattice(&pres).unwrap();
    c.bench_function("verify dd(2,2) with 10k random samples", |b| {
        let opts = VerifyOptions {
            random_samples: 10_000,
            seed: 1,
            jobs: 1,
        };
        b.iter(|| {
            let report = verify_predicted(&pres, &predicted, &opts).unwrap();
            black_box(report.passed())
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_enumeration, bench_measure_throughput, bench_full_search, bench_verify
}
criterion_main!(benches);
