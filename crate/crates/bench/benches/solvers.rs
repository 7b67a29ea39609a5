use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use recourse_bench::{random_digraph, random_graph, random_lp};
use recourse_core::mst::{solve_adversarial_mst_u1, solve_incremental_mst};
use recourse_core::robinc_lp::{feasible_point, solve_adversarial_lp_u1, solve_incremental_lp, solve_robinc_lp};
use recourse_core::shortest_path::{solve_adversarial_sp_u1, solve_incremental_sp_inclusion};

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("lp");
    for n in [8, 16, 32] {
        let inst = random_lp(1, n, n / 2);
        let x = feasible_point(&inst, None).expect("generated LPs are feasible");
        group.bench_with_input(BenchmarkId::new("incremental", n), &n, |b, _| {
            b.iter(|| solve_incremental_lp(&inst, black_box(&x), 2.0, &inst.nominal_cost).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("adversarial_u1", n), &n, |b, _| {
            b.iter(|| solve_adversarial_lp_u1(&inst, black_box(&x), 2.0, 1.5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("robinc_u1", n), &n, |b, _| {
            b.iter(|| solve_robinc_lp(black_box(&inst), 2.0, 1.5).unwrap())
        });
    }
    group.finish();
}

fn shortest_path(c: &mut Criterion) {
    let mut group = c.benchmark_group("sp");
    for n in [10, 20, 40] {
        let (net, p0) = random_digraph(2, n, 3 * n);
        let cost = net.nominal_costs();
        group.bench_with_input(BenchmarkId::new("incremental_dag", n), &n, |b, _| {
            b.iter(|| solve_incremental_sp_inclusion(&net, black_box(&p0), 2, &cost).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("adversarial_u1", n), &n, |b, _| {
            b.iter(|| solve_adversarial_sp_u1(&net, black_box(&p0), 2, 1.5).unwrap())
        });
    }
    group.finish();
}

fn spanning_tree(c: &mut Criterion) {
    let mut group = c.benchmark_group("mst");
    for n in [6, 10, 16] {
        let (net, t0) = random_graph(3, n, 3 * n);
        let cost = net.nominal_costs();
        group.bench_with_input(BenchmarkId::new("incremental_lagrangian", n), &n, |b, _| {
            b.iter(|| solve_incremental_mst(&net, black_box(&t0), 2, &cost).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("adversarial_u1", n), &n, |b, _| {
            b.iter(|| solve_adversarial_mst_u1(&net, black_box(&t0), 2, 1.5).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, lp, shortest_path, spanning_tree);
criterion_main!(benches);
