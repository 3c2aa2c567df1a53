use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dalg_core::arith::int;
use dalg_core::linalg::{bareiss_nullspace, rational_nullspace};
use dalg_core::{builtin_terms, guess_function, guess_modular, guess_sequence, DenseMatrix, GuessConfig, Rational};

fn terms(name: &str, n: usize) -> Vec<Rational> {
    builtin_terms(name, n).unwrap().terms
}

fn functions(c: &mut Criterion) {
    let trees = terms("labelled_rooted_trees", 9);
    let cfg = GuessConfig::function(2, 1).with_all_poly_deg(true);
    c.bench_function("trees k=2 d=1", |b| {
        b.iter(|| guess_function(black_box(&trees), &cfg).unwrap())
    });

    let zeta = terms("zeta_even_scaled", 15);
    let cfg = GuessConfig::function(2, 1);
    c.bench_function("zeta k=2 d=1", |b| {
        b.iter(|| guess_function(black_box(&zeta), &cfg).unwrap())
    });
}

fn sequences(c: &mut Criterion) {
    let fib = terms("fib_pow2", 15);
    let cfg = GuessConfig::sequence(5);
    c.bench_function("fib_pow2 over Q", |b| {
        b.iter(|| guess_sequence(black_box(&fib), &cfg).unwrap())
    });
    c.bench_function("fib_pow2 mod 101", |b| {
        b.iter(|| guess_modular(black_box(&fib), 101, &cfg).unwrap())
    });

    let cf = terms("catalan_over_fib", 175);
    let cfg = GuessConfig::sequence(6).with_r_min(2);
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("catalan_over_fib mod 5003", |b| {
        b.iter(|| guess_modular(black_box(&cf), 5003, &cfg).unwrap())
    });
    group.finish();
}

fn kernels(c: &mut Criterion) {
    // Hilbert-like matrix with one dependent column: rational entries, rank n - 1
    let n = 24;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n - 1)
                .map(|j| Rational::new(1.into(), (i + j + 1).into()))
                .collect();
            let dep = &row[0] * int(3) - &row[1];
            row.push(dep);
            row
        })
        .collect();
    let m = DenseMatrix::from_rows(n, rows);
    c.bench_function("kernel multimodular 24x24", |b| {
        b.iter(|| rational_nullspace(black_box(&m)))
    });
    c.bench_function("kernel fraction-free 24x24", |b| {
        b.iter(|| bareiss_nullspace(black_box(&m)))
    });
}

criterion_group!(benches, functions, sequences, kernels);
criterion_main!(benches);
