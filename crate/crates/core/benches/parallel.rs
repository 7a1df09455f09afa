//! Parallel versus sequential throughput on the two data-parallel kernels:
//! Riemann refinement of an integral ratio, and randomized counterexample
//! search. Both pairs produce identical results, so the comparison is purely
//! about wall time; look for the `par`/`seq` split within each group.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use certineq::integral::{enclose_integral, enclose_integral_seq};
use certineq::poly::{PiecewisePoly, Segment};
use certineq::search::{find_counterexample, find_counterexample_seq, SearchSpec};
use certineq::{Family, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Strictly positive piecewise quadratics over [0, 3] whose cut points do
/// not line up, so every merged piece exercises the polynomial range code.
fn integrand() -> (PiecewisePoly, PiecewisePoly) {
    let f = PiecewisePoly::new(vec![
        Segment::new(r(0, 1), r(1, 1), vec![r(1, 1), r(1, 2), r(1, 3)]),
        Segment::new(r(1, 1), r(3, 1), vec![r(11, 6), r(0, 1), r(1, 4)]),
    ])
    .expect("contiguous segments");
    let g = PiecewisePoly::new(vec![
        Segment::new(r(0, 1), r(3, 2), vec![r(2, 1), r(1, 5)]),
        Segment::new(r(3, 2), r(3, 1), vec![r(23, 10), r(1, 5)]),
    ])
    .expect("contiguous segments");
    (f, g)
}

fn riemann(c: &mut Criterion) {
    let (f, g) = integrand();
    let alpha = r(2, 1);
    let beta = r(1, 1);
    let lo = r(0, 1);
    let hi = r(3, 1);
    let mut group = c.benchmark_group("riemann");
    group.sample_size(10);
    for parts in [256u32, 1024] {
        group.bench_with_input(BenchmarkId::new("par", parts), &parts, |b, &parts| {
            b.iter(|| {
                enclose_integral(black_box(&f), &alpha, &g, &beta, &lo, &hi, parts, 128)
                    .expect("positive denominator")
            })
        });
        group.bench_with_input(BenchmarkId::new("seq", parts), &parts, |b, &parts| {
            b.iter(|| {
                enclose_integral_seq(black_box(&f), &alpha, &g, &beta, &lo, &hi, parts, 128)
                    .expect("positive denominator")
            })
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    // a valid domain, so every run sweeps all trials without a witness; the
    // distinct exponents force certified root refinement on every trial
    let spec = SearchSpec::new(Family::PowerMean)
        .with_param("r", r(3, 1))
        .with_param("s", r(2, 1))
        .with_trials(512)
        .with_seed(7);
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("par", |b| {
        b.iter(|| find_counterexample(black_box(&spec), 128).expect("valid spec"))
    });
    group.bench_function("seq", |b| {
        b.iter(|| find_counterexample_seq(black_box(&spec), 128).expect("valid spec"))
    });
    group.finish();
}

criterion_group!(benches, riemann, search);
criterion_main!(benches);
