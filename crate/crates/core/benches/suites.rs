use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use repmodel::harness::{run_suite, Exec, Params};
use repmodel::linalg::Gf2;

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    let cases = [
        ("adjunction", Params { nil: 2, max_dim: 2, ..Params::default() }),
        ("psi0_ext", Params { nil: 2, max_dim: 1, length: 2, ..Params::default() }),
        ("ext_independence", Params { nil: 2, max_dim: 2, length: 2, ..Params::default() }),
    ];
    for (name, base) in cases {
        for (label, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            let p = Params { exec, ..base.clone() };
            group.bench_with_input(BenchmarkId::new(name, label), &p, |b, p| {
                b.iter(|| run_suite::<Gf2>(name, p).expect("suite runs"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
