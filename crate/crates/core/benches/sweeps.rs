use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polyalg::checks;
use polyalg::sweep::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bench_criterion(c: &mut Criterion, name: &str, run: fn(Execution) -> checks::CriterionReport) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for (label, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(label), &exec, |b, exec| {
            b.iter(|| run(*exec))
        });
    }
    group.finish();
}

fn order_sweep(c: &mut Criterion) {
    bench_criterion(c, "order_sweep", checks::criterion_5);
}

fn difference_sweep(c: &mut Criterion) {
    bench_criterion(c, "difference_sweep", checks::criterion_6);
}

fn centrality_sweep(c: &mut Criterion) {
    bench_criterion(c, "centrality_sweep", checks::criterion_7);
}

fn numeric_grid(c: &mut Criterion) {
    bench_criterion(c, "numeric_grid", checks::criterion_8);
}

criterion_group!(
    benches,
    order_sweep,
    difference_sweep,
    centrality_sweep,
    numeric_grid
);
criterion_main!(benches);
