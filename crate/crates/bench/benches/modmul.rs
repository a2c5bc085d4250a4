use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rns_barrett::reference::oracle_modmul;
use rns_barrett_bench::{Fixture, SIZES};

fn modmul(c: &mut Criterion) {
    let mut group = c.benchmark_group("modmul");
    for bits in SIZES {
        let f = Fixture::new(bits, 32).expect("fixture");
        group.bench_with_input(BenchmarkId::new("oracle", bits), &f, |bench, f| {
            bench.iter(|| oracle_modmul(black_box(&f.a), black_box(&f.b), &f.n))
        });
        group.bench_with_input(BenchmarkId::new("scalar_barrett", bits), &f, |bench, f| {
            bench.iter(|| f.params.modmul(black_box(&f.a), black_box(&f.b)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rns_bmm", bits), &f, |bench, f| {
            bench.iter(|| f.ctx.bmm(black_box(&f.ra), black_box(&f.rb)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("montgomery", bits), &f, |bench, f| {
            bench.iter(|| f.montgomery.mul(black_box(&f.a), black_box(&f.b)))
        });
    }
    group.finish();
}

fn encode_decode(c: &mut Criterion) {
    let mut group = c.benchmark_group("conversion");
    for bits in SIZES {
        let f = Fixture::new(bits, 32).expect("fixture");
        group.bench_with_input(BenchmarkId::new("encode", bits), &f, |bench, f| {
            bench.iter(|| f.ctx.moduli_set().encode(black_box(&f.a)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("decode", bits), &f, |bench, f| {
            bench.iter(|| black_box(&f.ra).decode())
        });
    }
    group.finish();
}

criterion_group!(benches, modmul, encode_decode);
criterion_main!(benches);
