use criterion::{black_box, criterion_group, criterion_main, Criterion};
use paley_bench::sample_elems;
use paley_core::FieldCtx;

fn zech_arith(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for (p, e) in [(2u64, 16u32), (3, 10), (65521, 1)] {
        let ctx = FieldCtx::new(p, e).unwrap();
        let xs = sample_elems(&ctx, 4096);
        group.bench_function(format!("add/{p}^{e}"), |b| {
            b.iter(|| xs.windows(2).fold(ctx.zero(), |acc, w| ctx.add(acc, ctx.add(w[0], w[1]))))
        });
        group.bench_function(format!("mul/{p}^{e}"), |b| {
            b.iter(|| xs.windows(2).fold(ctx.one(), |acc, w| ctx.mul(acc, ctx.mul(w[0], w[1]))))
        });
    }
    group.bench_function("build/3^12", |b| b.iter(|| FieldCtx::new(3, black_box(12)).unwrap()));
    group.finish();
}

criterion_group!(benches, zech_arith);
criterion_main!(benches);
