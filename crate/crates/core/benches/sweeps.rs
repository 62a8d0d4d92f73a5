use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kanforge::corpus::{free_complexes, free_graded, FreeComplexBounds};
use kanforge::fincat::{fixtures, verify_create_kan};
use kanforge::graded::{check_fusion_compat, corollary_instance, fusion, ChainComplex, GradedObject};
use kanforge::sweep::{self, ExecMode};

fn small_corpus() -> (Vec<ChainComplex>, Vec<GradedObject>) {
    let b = FreeComplexBounds {
        degrees: vec![0, 1],
        max_rank: 2,
        max_entry: 1,
        exact_support: false,
    };
    (free_complexes(&b, u128::MAX).expect("small"), free_graded(&[0, 1], 2))
}

fn modes() -> Vec<ExecMode> {
    [ExecMode::Sequential, ExecMode::Parallel]
        .into_iter()
        .filter(|m| m.available())
        .collect()
}

fn fusion_sweep(c: &mut Criterion) {
    let (complexes, partners) = small_corpus();
    let mut group = c.benchmark_group("fusion");
    group.sample_size(10);
    for mode in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| {
                sweep::map(mode, &complexes, |x| {
                    partners
                        .iter()
                        .filter(|vp| {
                            let w = fusion(vp, x).expect("hopf");
                            check_fusion_compat(&w, None).expect("typed").all_pass()
                        })
                        .count()
                })
            })
        });
    }
    group.finish();
}

fn corollary_sweep(c: &mut Criterion) {
    let (complexes, _) = small_corpus();
    let mut group = c.benchmark_group("corollary");
    group.sample_size(10);
    for mode in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| sweep::map(mode, &complexes, |x| corollary_instance(x).expect("typed").holds()))
        });
    }
    group.finish();
}

fn create_kan_sweep(c: &mut Criterion) {
    let corpus = fixtures::comonad_corpus();
    let mut group = c.benchmark_group("create-kan");
    group.sample_size(10);
    for mode in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| sweep::map(mode, &corpus, |(_, cat, g)| verify_create_kan(cat, g).verdict.passed()))
        });
    }
    group.finish();
}

criterion_group!(benches, fusion_sweep, corollary_sweep, create_kan_sweep);
criterion_main!(benches);
