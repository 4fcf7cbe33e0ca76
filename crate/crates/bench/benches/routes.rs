use chebosc::annihilator::{matrix_solve_oracle, p_poly_table_recursive};
use chebosc::chebgen::cheb_sequence;
use chebosc::combinat::identity_sweep;
use chebosc::oscillator::{gram_matrix, MeasureSpec};
use chebosc::{CoeffMatrix, RecurrenceSpec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn matrix_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("coeff_matrix");
    g.sample_size(10);
    for n in [10usize, 20] {
        g.bench_with_input(BenchmarkId::new("closed", n), &n, |b, &n| {
            b.iter(|| CoeffMatrix::closed(black_box(n)))
        });
        g.bench_with_input(BenchmarkId::new("recursive", n), &n, |b, &n| {
            b.iter(|| CoeffMatrix::recursive(black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("oracle", n), &n, |b, &n| {
            b.iter(|| matrix_solve_oracle(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn polynomials(c: &mut Criterion) {
    let spec = RecurrenceSpec::oscillator();
    c.bench_function("cheb_sequence_30", |b| b.iter(|| cheb_sequence(black_box(30), &spec)));
    c.bench_function("p_poly_table_20", |b| b.iter(|| p_poly_table_recursive(black_box(20))));
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    g.bench_function("identities_20", |b| b.iter(|| identity_sweep(black_box(20)).unwrap()));
    let spec = MeasureSpec::new(0.5).unwrap();
    g.bench_function("gram_12", |b| {
        b.iter(|| gram_matrix(black_box(12), &spec, 500).unwrap())
    });
    g.finish();
}

criterion_group!(benches, matrix_routes, polynomials, sweeps);
criterion_main!(benches);
