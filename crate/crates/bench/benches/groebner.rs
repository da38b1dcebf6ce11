use criterion::{criterion_group, criterion_main, Criterion};
use qsym_core::graph::{build_named, complete};
use qsym_core::groebner::{buchberger, quantum_relations};

fn small(c: &mut Criterion) {
    let k3 = quantum_relations(&complete(3));
    c.bench_function("groebner/K3 cap 4", |b| b.iter(|| buchberger(&k3, 4, 1_000_000).unwrap()));
    let c4 = quantum_relations(&build_named("C4").unwrap());
    c.bench_function("groebner/C4 cap 6", |b| b.iter(|| buchberger(&c4, 6, 10_000_000).unwrap()));
}

criterion_group!(benches, small);
criterion_main!(benches);
