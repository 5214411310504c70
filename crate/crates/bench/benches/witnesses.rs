use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ctxkit::inequalities::{yu_oh_nchv_bound, yu_oh_value, IcosahedronInequality};
use ctxkit::linalg::DensityMatrix;
use ctxkit::magic::{magic_value, nchv_bound_magic, quantum_max_magic};
use ctxkit::pauli::{activation_omega, avn_parity_check, builtin_avn, lhv_max_omega};
use ctxkit::states::{magicopt, xi};

fn classical_bounds(c: &mut Criterion) {
    c.bench_function("lhv_max_omega", |b| b.iter(lhv_max_omega));
    c.bench_function("yu_oh_nchv_bound", |b| b.iter(|| yu_oh_nchv_bound().unwrap()));
    c.bench_function("nchv_bound_magic", |b| b.iter(nchv_bound_magic));
}

fn quantum_values(c: &mut Criterion) {
    let mixed3 = DensityMatrix::maximally_mixed(3);
    let state = xi();
    let opt = magicopt();
    c.bench_function("yu_oh_value", |b| b.iter(|| yu_oh_value(black_box(&mixed3)).unwrap()));
    c.bench_function("activation_omega", |b| b.iter(|| activation_omega(black_box(&state)).unwrap()));
    c.bench_function("magic_value", |b| b.iter(|| magic_value(black_box(&opt)).unwrap()));
    c.bench_function("quantum_max_magic", |b| b.iter(|| quantum_max_magic().unwrap()));
    c.bench_function("icosahedron_inequality/new", |b| b.iter(|| IcosahedronInequality::new().unwrap()));
}

fn parity(c: &mut Criterion) {
    let sys = builtin_avn("cabello01").unwrap();
    c.bench_function("avn_parity_check/cabello01", |b| b.iter(|| avn_parity_check(black_box(&sys))));
}

criterion_group!(benches, classical_bounds, quantum_values, parity);
criterion_main!(benches);
