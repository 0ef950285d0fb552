use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use slocc_core::{
    build_f, char_poly, fingerprint, inv_dxt, parse_partition, random_state, SeededGenerator,
};

fn bench_f_and_charpoly(c: &mut Criterion) {
    let s4 = random_state(4, &mut SeededGenerator::new(1)).unwrap();
    let p = parse_partition("12|34", 4).unwrap();
    c.bench_function("build_f 12|34", |b| b.iter(|| build_f(black_box(&s4), &p).unwrap()));
    let f = build_f(&s4, &p).unwrap();
    c.bench_function("char_poly 4x4", |b| b.iter(|| char_poly(black_box(&f)).unwrap()));
    c.bench_function("inv_dxt", |b| b.iter(|| inv_dxt(black_box(&s4)).unwrap()));
}

fn bench_fingerprint(c: &mut Criterion) {
    let mut group = c.benchmark_group("fingerprint");
    for n in [3usize, 4, 6, 8] {
        let s = random_state(n, &mut SeededGenerator::new(n as u64)).unwrap();
        group.bench_function(format!("n={n}"), |b| b.iter(|| fingerprint(black_box(&s)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_f_and_charpoly, bench_fingerprint);
criterion_main!(benches);
