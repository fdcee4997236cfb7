use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mfxyz::algebra::{shuffle_matrix, Poly};
use mfxyz::canonical::{build_phi, complete_psi_series, sweep_word, SweepSummary};
use mfxyz::mfcore::periodic_decompose;
use mfxyz::words::normalize;
use mfxyz::{NormalWord, Word};
use mfxyz_bench::{int_matrix, sweep_lambdas, words, Q};

fn completion(c: &mut Criterion) {
    let mut g = c.benchmark_group("complete_psi_series");
    for w in words() {
        for rho in [1, 3] {
            let phi = build_phi(&w, &Poly::<Q>::from_i64(2), rho).unwrap();
            g.bench_with_input(
                BenchmarkId::new(w.word().to_string(), rho),
                &phi,
                |b, phi| b.iter(|| complete_psi_series(black_box(phi)).unwrap()),
            );
        }
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let lams = sweep_lambdas();
    let w = &words()[1];
    c.bench_function("sweep_word tau=2 rho<=3", |b| {
        b.iter(|| {
            let mut s = SweepSummary::default();
            sweep_word(black_box(w), &lams, 3, &mut s);
            s
        })
    });
}

fn normal_form(c: &mut Criterion) {
    let raw = Word::new(vec![
        -8, 0, -6, 0, -4, 0, 0, 0, -1, 0, 2, 0, 0, 0, -5, 0, 0, 0, 1, 0, 4, 0, 1, 0, 1, 0, -3, 0,
        -2, 0,
    ])
    .unwrap();
    c.bench_function("normalize 30 entries", |b| {
        b.iter(|| normalize(black_box(&raw)).unwrap())
    });
}

fn shuffle(c: &mut Criterion) {
    let (a, m) = (int_matrix(4, 1), int_matrix(5, 2));
    c.bench_function("shuffle conjugated kron 20x20", |b| {
        b.iter(|| {
            &(&shuffle_matrix::<Poly<Q>>(4, 5) * &black_box(&a).kron(&m)) * &shuffle_matrix(5, 4)
        })
    });
}

fn periodic(c: &mut Criterion) {
    let w = NormalWord::new(Word::new(vec![3, -2, 2, 3, -2, 2]).unwrap()).unwrap();
    c.bench_function("periodic_decompose N=2 rho=2", |b| {
        b.iter(|| periodic_decompose(black_box(&w), &Poly::<Q>::from_i64(4), 2).unwrap())
    });
}

criterion_group!(benches, completion, sweep, normal_form, shuffle, periodic);
criterion_main!(benches);
