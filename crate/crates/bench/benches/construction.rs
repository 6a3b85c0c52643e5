use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use katra::automaton::equivalent;
use katra::{build_automaton, compile, parse_term};
use katra_bench::{alphabet, cycle_matrix, terms};

fn compilation(c: &mut Criterion) {
    let alpha = alphabet();
    let mut group = c.benchmark_group("compile");
    for (name, t) in terms(&alpha) {
        group.bench_with_input(BenchmarkId::new("automaton", name), &t, |b, t| {
            b.iter(|| build_automaton(t, &alpha).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("certified", name), &t, |b, t| {
            b.iter(|| compile(t, &alpha).unwrap())
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let alpha = alphabet();
    let pairs = [
        ("sliding", "p (q p)*", "(p q)* p"),
        ("denesting", "(p + q)*", "p* (q p*)*"),
        ("loops", "(b p)* ~b", "(b p (b p)*)* ~b"),
    ];
    let mut group = c.benchmark_group("equivalence");
    for (name, x, y) in pairs {
        let x = build_automaton(&parse_term(x, &alpha).unwrap(), &alpha).unwrap();
        let y = build_automaton(&parse_term(y, &alpha).unwrap(), &alpha).unwrap();
        group.bench_function(name, |b| b.iter(|| equivalent(&x, &y).unwrap()));
    }
    group.finish();
}

fn matrix_star(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_star");
    for n in [2, 4, 8, 16] {
        let m = cycle_matrix(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| m.star().unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, compilation, equivalence, matrix_star);
criterion_main!(benches);
