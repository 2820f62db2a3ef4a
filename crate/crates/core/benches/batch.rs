use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use watchman::exec::Execution;
use watchman::harness::{eval_instances, BatchOptions, CorpusSpec};

fn corpus(c: &mut Criterion) {
    let instances = CorpusSpec { count: 200, thin_triangles: 20, ..CorpusSpec::default() }.instances().unwrap();
    let mut group = c.benchmark_group("batch_eval");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        let opts = BatchOptions { exec, ..BatchOptions::default() };
        group.bench_with_input(BenchmarkId::new(name, instances.len()), &opts, |b, opts| {
            b.iter(|| eval_instances(&instances, opts))
        });
    }
    group.finish();
}

criterion_group!(benches, corpus);
criterion_main!(benches);
