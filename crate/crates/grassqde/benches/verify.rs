use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use grassqde::lattice::commuting_family_check;
use grassqde::pieri_ops::pieri_sweep;
use grassqde::qde_cohomology::{qde_residual_kn, CMode, CQdeConfig};
use grassqde::qde_ktheory::{qde_residual_k, KMode, KQdeConfig};
use grassqde::{Exec, Theory};

fn policies() -> [(&'static str, Exec); 2] {
    [("parallel", Exec { parallel: true }), ("sequential", Exec::sequential())]
}

fn bench_pieri(c: &mut Criterion) {
    let mut group = c.benchmark_group("pieri_sweep_n5_k2");
    group.sample_size(10);
    for (name, exec) in policies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(pieri_sweep(5, 2, exec).unwrap()))
        });
    }
    group.finish();
}

fn bench_qde(c: &mut Criterion) {
    let mut group = c.benchmark_group("ktheory_exact_q_gr23_d2");
    group.sample_size(10);
    for (name, exec) in policies() {
        let mut cfg = KQdeConfig::new(2, 3, 2, KMode::ExactQ, 1);
        cfg.exec = exec;
        group.bench_function(name, |b| b.iter(|| black_box(qde_residual_k(&cfg).unwrap())));
    }
    group.finish();

    let mut group = c.benchmark_group("cohomology_exact_gr24_d3");
    group.sample_size(10);
    for (name, exec) in policies() {
        let mut cfg = CQdeConfig::new(2, 4, 3, CMode::Exact, 1);
        cfg.exec = exec;
        group.bench_function(name, |b| b.iter(|| black_box(qde_residual_kn(&cfg).unwrap())));
    }
    group.finish();
}

fn bench_transfer(c: &mut Criterion) {
    let mut group = c.benchmark_group("transfer_commuting_n6");
    group.sample_size(10);
    for (name, exec) in policies() {
        group.bench_function(name, |b| {
            b.iter(|| black_box(commuting_family_check(Theory::KTheory, 6, 5, 7, 1e-12, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pieri, bench_qde, bench_transfer);
criterion_main!(benches);
