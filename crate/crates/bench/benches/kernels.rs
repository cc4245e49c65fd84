use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use vvol_core::algebra::rational::rat;
use vvol_core::{solve_minimal, two_point_kernel, verify_flows, FlowContext, NPointEngine, Partition, TPoly};

fn dense_tpoly(cap: u32) -> TPoly {
    let mut p = TPoly::zero(cap);
    let mut out = Vec::new();
    for w in 0..=cap {
        vvol_core::algebra::partitions_of(w, 2, &mut out);
    }
    for (i, m) in out.into_iter().enumerate() {
        p.add_term(m, rat(i as i64 + 1, 7));
    }
    p
}

fn tpoly_mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("tpoly_mul");
    for cap in [8, 10, 12] {
        let p = dense_tpoly(cap);
        g.bench_with_input(BenchmarkId::from_parameter(cap), &p, |b, p| b.iter(|| black_box(p * p)));
    }
    g.finish();
}

fn minimal(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_minimal");
    g.sample_size(10);
    for (k, w) in [(8, 8), (12, 10)] {
        g.bench_function(format!("k{k}_w{w}"), |b| b.iter(|| solve_minimal(black_box(k), w).unwrap()));
    }
    g.finish();
}

fn kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("two_point_kernel");
    g.sample_size(10);
    for d in [6, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| two_point_kernel(d, d)));
    }
    g.finish();
}

fn flows(c: &mut Criterion) {
    let table = solve_minimal(12, 10).unwrap();
    let mut g = c.benchmark_group("verify_flows");
    g.sample_size(10);
    g.bench_function("k12_w10", |b| {
        b.iter(|| {
            let ctx = FlowContext::new(&table);
            assert!(verify_flows(&ctx).passed());
        })
    });
    g.finish();
}

fn npoint(c: &mut Criterion) {
    let table = solve_minimal(8, 8).unwrap();
    let mut g = c.benchmark_group("a_poly");
    g.sample_size(10);
    for mu in [vec![4, 2], vec![2, 2, 2], vec![2, 2, 2, 2]] {
        let name = Partition::new(mu.clone()).unwrap().to_string();
        g.bench_function(name, |b| b.iter(|| NPointEngine::default().a_poly(&mu, &table).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, tpoly_mul, minimal, kernel, flows, npoint);
criterion_main!(benches);
