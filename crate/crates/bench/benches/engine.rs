use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use superaudit_bench::dense_pair;
use superaudit_core::audit::run_suite;
use superaudit_core::solver::{kernel_of_derivation, Window};
use superaudit_core::{ConjugationMode, Registry};

fn algebra(c: &mut Criterion) {
    let (x, y) = dense_pair();
    c.bench_function("poly mul dense", |b| b.iter(|| black_box(&x).mul(black_box(&y)).unwrap()));
    let reg = Registry::global();
    let d1 = reg.derivation("der.D1.sl11").unwrap();
    let d2 = reg.derivation("der.D2.sl11").unwrap();
    c.bench_function("derivation bracket sl11", |b| b.iter(|| black_box(d1).bracket(black_box(d2)).unwrap()));
}

fn groups(c: &mut Criterion) {
    let reg = Registry::global();
    let g = reg.group("grp.mult.sl11").unwrap();
    c.bench_function("group axioms sl11", |b| b.iter(|| black_box(g).check_group_axioms().unwrap()));
    let fam = reg.family("mat.stab.infty").unwrap();
    c.bench_function("stabilizer product closure", |b| b.iter(|| black_box(fam).product_closure().unwrap()));
}

fn solver(c: &mut Criterion) {
    let d = Registry::global().derivation("der.D1.susy2").unwrap();
    let w = Window::new(d.context(), &[("z", 0, 6)]).unwrap();
    c.bench_function("incidence kernel deg 6", |b| b.iter(|| kernel_of_derivation(black_box(d), &w).unwrap()));
}

fn suites(c: &mut Criterion) {
    c.bench_function("verify all", |b| b.iter(|| run_suite("all", ConjugationMode::Multiplicative).unwrap()));
}

criterion_group!(benches, algebra, groups, solver, suites);
criterion_main!(benches);
