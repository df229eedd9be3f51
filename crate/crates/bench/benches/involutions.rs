use criterion::{black_box, criterion_group, criterion_main, Criterion};
use cycleparity_bench::{figure_one, labeled_domain};
use cycleparity_core::phi::enumerate_marked;
use cycleparity_core::stirling::{weighted_cycle_sum, StirlingTable};
use cycleparity_core::{phi, psi};

fn single_steps(c: &mut Criterion) {
    let fig = figure_one();
    c.bench_function("psi figure one", |b| b.iter(|| psi(black_box(&fig)).unwrap()));
}

fn whole_domains(c: &mut Criterion) {
    let marked: Vec<_> = enumerate_marked(6).unwrap().collect();
    c.bench_function("phi over T(6)", |b| {
        b.iter(|| marked.iter().map(|x| phi(x).unwrap().sign()).sum::<i64>())
    });
    let labeled = labeled_domain(5, 3);
    c.bench_function("psi over P(5,3)", |b| {
        b.iter(|| labeled.iter().map(|x| psi(x).unwrap().sign()).sum::<i64>())
    });
}

fn stirling(c: &mut Criterion) {
    c.bench_function("weighted sum n=20", |b| {
        b.iter(|| {
            let table = StirlingTable::new(20);
            (1..20)
                .map(|k| weighted_cycle_sum(&table, 20, black_box(k)).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

criterion_group!(benches, single_steps, whole_domains, stirling);
criterion_main!(benches);
