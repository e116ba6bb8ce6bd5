use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qarith_core::arith::successor_apply;
use qarith_core::axioms::axiom_suite;
use qarith_core::operator::{extract_hamiltonian, successor_literal_exact, successor_matrix};
use qarith_core::Radix;

fn successor_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("successor_sweep");
    for (k, len) in [(2, 10), (3, 6), (10, 3)] {
        let radix = Radix::new(k, len).unwrap();
        let states: Vec<_> = radix.basis().collect();
        group.bench_with_input(BenchmarkId::from_parameter(radix), &states, |b, states| {
            b.iter(|| {
                for s in states {
                    for j in 1..=len {
                        black_box(successor_apply(j, s).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

fn literal_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("literal_matrix");
    for (k, len) in [(2, 6), (2, 8), (3, 5)] {
        let radix = Radix::new(k, len).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(radix), &radix, |b, &radix| {
            b.iter(|| black_box(successor_literal_exact(1, radix).unwrap()))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axiom_suite");
    group.sample_size(10);
    for (k, len) in [(2, 4), (2, 6), (3, 5)] {
        let radix = Radix::new(k, len).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(radix), &radix, |b, &radix| {
            b.iter(|| black_box(axiom_suite(radix, 7).unwrap()))
        });
    }
    group.finish();
}

fn hamiltonian(c: &mut Criterion) {
    let mut group = c.benchmark_group("hamiltonian");
    for (k, len) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let radix = Radix::new(k, len).unwrap();
        let v = successor_matrix(1, radix).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(radix), &v, |b, v| {
            b.iter(|| black_box(extract_hamiltonian(v, 1.0).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, successor_sweep, literal_matrix, axioms, hamiltonian);
criterion_main!(benches);
