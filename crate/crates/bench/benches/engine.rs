use criterion::{criterion_group, criterion_main, Criterion};

use eulerium_core::hp::{self, EvalConfig};
use eulerium_core::identities::{theorem31_residual, triple_reduction};
use eulerium_core::seq::Seq;
use eulerium_core::sums::{euler_sum, mrv, MrvIndex, SumSpec};

fn bench_constants(c: &mut Criterion) {
    c.bench_function("zeta3_40_digits", |b| {
        b.iter(|| {
            // fresh precision each round so the constant cache cannot swallow the work
            let cfg = EvalConfig::default().with_digits(40 + (std::hint::black_box(0) % 2));
            hp::zeta(3, &cfg).unwrap()
        })
    });
}

fn bench_linear_r_sum(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let spec = SumSpec::r_sum(2, false, 3, false).unwrap();
    c.bench_function("euler_sum_R23", |b| b.iter(|| euler_sum(&spec, &cfg).unwrap()));
}

fn bench_mrv_depth3(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let idx = MrvIndex::new(vec![2, 1, 1]).unwrap();
    c.bench_function("mrv_211", |b| b.iter(|| mrv(&idx, &cfg).unwrap()));
}

fn bench_theorem31(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    c.bench_function("thm31_p2_q3", |b| {
        b.iter(|| theorem31_residual(2, 3, &Seq::Ones, &Seq::Alternating, &cfg).unwrap())
    });
}

fn bench_triple_reduction_symbolic(c: &mut Criterion) {
    c.bench_function("triple_reduction_symbolic_123", |b| {
        b.iter(|| triple_reduction(1, 2, 3).unwrap())
    });
}

criterion_group!(
    benches,
    bench_constants,
    bench_linear_r_sum,
    bench_mrv_depth3,
    bench_theorem31,
    bench_triple_reduction_symbolic
);
criterion_main!(benches);
