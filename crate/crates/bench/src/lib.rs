//! Fixtures shared by the benchmarks.

use mfxyz::algebra::{Matrix, Poly, PolyMatrix, Rational};
use mfxyz::canonical::normal_words;
use mfxyz::{NormalWord, Word};

pub type Q = Rational;

/// One normal word for each `τ = 1, 2, 3`.
pub fn words() -> Vec<NormalWord> {
    let first = NormalWord::new(Word::new(vec![3, -2, 2]).expect("nonempty")).expect("normal");
    let mut out = vec![first];
    for tau in 2..=3 {
        let all = normal_words(tau, -2, 3);
        out.push(all[all.len() / 2].clone());
    }
    out
}

pub fn sweep_lambdas() -> Vec<Q> {
    vec![
        Q::from_int(1),
        Q::from_int(2),
        Q::from_int(-1),
        Q::new(3, 2),
    ]
}

/// A dense `n × n` matrix of small integers.
pub fn int_matrix(n: usize, seed: i64) -> PolyMatrix<Q> {
    Matrix::from_fn(n, n, |i, j| {
        Poly::from_i64((seed + 3 * i as i64 - 2 * j as i64) % 7 - 3)
    })
}
