use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use delpezzo_core::curves::layer;
use delpezzo_core::invariants::{gw_sequence, RecursiveSolver};
use delpezzo_core::series::{n_even_series, n_odd_series};
use delpezzo_core::DelPezzoLattice;

fn lattice(c: &mut Criterion) {
    c.bench_function("roots d=1", |b| {
        b.iter(|| {
            let lat = DelPezzoLattice::new(black_box(1)).unwrap();
            lat.roots().len()
        })
    });
    c.bench_function("layer m=3 d=3", |b| {
        b.iter(|| {
            let lat = DelPezzoLattice::new(3).unwrap();
            layer(&lat, black_box(3), true).unwrap().len()
        })
    });
}

fn invariants(c: &mut Criterion) {
    c.bench_function("recursion m<=30 d=1", |b| {
        b.iter(|| {
            let mut s = RecursiveSolver::new(1).unwrap();
            (s.get(black_box(30), 1).unwrap(), s.get(29, 0).unwrap())
        })
    });
    c.bench_function("gw m<=60 d=3", |b| {
        b.iter(|| gw_sequence(3, black_box(60)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("series order 12 d=1", |b| {
        b.iter(|| {
            (
                n_even_series(1, black_box(12)).unwrap(),
                n_odd_series(1, black_box(12)).unwrap(),
            )
        })
    });
}

criterion_group!(benches, lattice, invariants, series);
criterion_main!(benches);
