use criterion::{criterion_group, criterion_main, Criterion};
use ncdiff_core::diffops::{finite_canonical_form, DelKey, NormalOperator};
use ncdiff_core::freealg::{Scalar, Word};

fn sample_ops() -> (NormalOperator, NormalOperator) {
    let phi = NormalOperator::from_del_key(
        2,
        DelKey::new(vec![1, 2], vec![Word(vec![2, 1]), Word(vec![1])]),
        Scalar::one(),
    );
    let psi = NormalOperator::from_del_key(
        2,
        DelKey::new(vec![2, 1], vec![Word(vec![1, 2]), Word(vec![2])]),
        Scalar::one(),
    );
    (phi, psi)
}

fn bench_compose(c: &mut Criterion) {
    let (phi, psi) = sample_ops();
    c.bench_function("compose 2x2", |b| b.iter(|| phi.compose(&psi)));
}

fn bench_canonical(c: &mut Criterion) {
    let (phi, psi) = sample_ops();
    let prod = phi.compose(&psi);
    c.bench_function("canonical form of composite", |b| {
        b.iter(|| finite_canonical_form(&prod))
    });
}

criterion_group!(benches, bench_compose, bench_canonical);
criterion_main!(benches);
