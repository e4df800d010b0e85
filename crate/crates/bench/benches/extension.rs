use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use plext_bench::instances;
use plext_core::extend_all;

fn extend(c: &mut Criterion) {
    let mut group = c.benchmark_group("extend_all");
    for n in [3, 5, 8] {
        let batch = instances(n, 10);
        group.bench_with_input(BenchmarkId::from_parameter(n), &batch, |b, batch| {
            b.iter(|| {
                for inst in batch {
                    black_box(extend_all(inst).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, extend);
criterion_main!(benches);
