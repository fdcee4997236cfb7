mod common;

use common::oracle_bfs;
use mfxyz::words::*;
use mfxyz::{word, Error, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn bfs_oracle_agrees_on_all_length_three_words() {
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                let w = word![a, b, c];
                let found = oracle_bfs(w.entries(), 9, 6);
                match normalize(&w) {
                    Ok((nw, _)) => {
                        assert_eq!(found.len(), 1, "{w}: {found:?}");
                        assert!(
                            found.contains(nw.rotation_class().entries()),
                            "{w}: {nw} vs {found:?}"
                        );
                    }
                    Err(Error::NonHyperbolic) => assert!(found.is_empty(), "{w}: {found:?}"),
                    Err(e) => panic!("{w}: {e}"),
                }
            }
        }
    }
}

#[test]
fn conversion_table() {
    let lw = word![8, 2, 3, -1, -1, -4, -1, 0, 5, 0, -2, 1, 0, 4, 6];
    let bw = word![6, 0, 2, -1, 0, -3, 0, 0, 5, 0, -2, 1, -1, 3, 4];
    let row = vec![1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1];
    assert_eq!(positivity_row(&lw), row);
    assert_eq!(delta_row(&bw), row);
    let eta = Scalar::lambda();
    let l = LoopDatum::new(NormalWord::new(lw.clone()).unwrap(), eta.clone(), 2).unwrap();
    let b = loop_to_band(&l).unwrap();
    assert_eq!(b, BandDatum::new(bw.clone(), eta.neg(), 2).unwrap());
    assert_eq!(band_to_loop(&b).unwrap(), l);
}

#[test]
fn band_minus_two_three_minus_one() {
    let b = BandDatum::new(word![-2, 3, -1], Scalar::lambda(), 1).unwrap();
    let l = band_to_loop(&b).unwrap();
    assert_eq!(l.word.word(), &word![-2, 3, -1]);
    assert_eq!(l.eta, Scalar::lambda().neg());
    assert_eq!(loop_to_band(&l).unwrap(), b);
}

#[test]
fn shift_of_fifteen_entry_band() {
    let b = BandDatum::new(
        word![6, 0, 2, -1, 0, -3, 0, 0, 5, 0, -2, 1, -1, 3, 4],
        Scalar::lambda(),
        1,
    )
    .unwrap();
    let s = shift_band_steps(&b).unwrap();
    assert_eq!(
        s.raw_reverse,
        word![
            -8, 0, -6, 0, -4, 0, 0, 0, -1, 0, 2, 0, 0, 0, -5, 0, 0, 0, 1, 0, 4, 0, 1, 0, 1, 0, -3,
            0, -2, 0
        ]
    );
    assert!(s.reversed_loop.word.equivalent_up_to_shift(&word![
        -6, 1, -4, 1, -3, -1, 0, 2, -5, 1, 0, 4, 0, 1, 0, 1, 0, -2, 1, 0, 1
    ]));
    assert!(s.result.word.equivalent_up_to_shift(&word![
        -7, 1, -5, 1, -3, 0, 0, 2, -6, 1, -1, 4, -1, 1, -1, 1, 0, -2, 1, -1, 1
    ]));
}

#[test]
fn flip_dual_and_shift_small() {
    let eta = Scalar::lambda();
    let l = LoopDatum::new(NormalWord::new(word![3, -2, 2]).unwrap(), eta.clone(), 1).unwrap();
    let f = flip_loop(&l).unwrap();
    assert_eq!(f.word.word(), &word![-2, 3, -1]);
    assert_eq!(f.eta, eta.inv().unwrap());
    let b = BandDatum::new(word![2, -3, 1], eta.clone(), 1).unwrap();
    let d = dual_band(&b).unwrap();
    assert_eq!(
        (d.word.clone(), d.lambda.clone()),
        (word![-2, 3, -1], eta.inv().unwrap())
    );
    let s = shift_band(&b).unwrap();
    assert!(s.word.equivalent_up_to_shift(&word![-2, 1, -1, 0, 2, 0]));
    assert_eq!(s.lambda, eta.inv().unwrap().neg());
    assert_eq!(s.mult, 1);
}

#[test]
fn normalize_thirty_entry_raw_reverse() {
    let raw = word![
        -8, 0, -6, 0, -4, 0, 0, 0, -1, 0, 2, 0, 0, 0, -5, 0, 0, 0, 1, 0, 4, 0, 1, 0, 1, 0, -3, 0,
        -2, 0
    ];
    let (nw, trace) = normalize(&raw).unwrap();
    assert_eq!(&trace.replay(&raw).unwrap(), nw.word());
    assert!(nw.equivalent_up_to_shift(&word![
        -6, 1, -4, 1, -3, -1, 0, 2, -5, 1, 0, 4, 0, 1, 0, 1, 0, -2, 1, 0, 1
    ]));
}

fn random_word(rng: &mut impl Rng, max_tau: usize, lo: i32, hi: i32) -> Word {
    let tau = rng.gen_range(1..=max_tau);
    Word::new((0..3 * tau).map(|_| rng.gen_range(lo..=hi)).collect()).unwrap()
}

fn random_normal(rng: &mut impl Rng) -> NormalWord {
    loop {
        if let Ok((nw, _)) = normalize(&random_word(rng, 3, -3, 4)) {
            return nw;
        }
    }
}

#[test]
fn conversions_are_mutually_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = [
        Scalar::int(1),
        Scalar::int(-1),
        Scalar::int(2),
        Scalar::lambda(),
    ];
    let mut done = 0;
    while done < 500 {
        let nw = random_normal(&mut rng);
        let eta = params[rng.gen_range(0..params.len())].clone();
        let l = LoopDatum::new(nw, eta, rng.gen_range(1..=3)).unwrap();
        if l.is_degenerate() {
            continue;
        }
        let b = loop_to_band(&l).unwrap();
        assert_eq!(band_to_loop(&b).unwrap(), l);
        done += 1;
    }
}

#[test]
fn band_to_loop_output_is_normal_and_inverts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let w = random_word(&mut rng, 3, -3, 3);
        let b = BandDatum::new(w, Scalar::int(2), 1).unwrap();
        let l = band_to_loop(&b).unwrap();
        assert!(is_normal(&l.word));
        assert_eq!(loop_to_band(&l).unwrap(), b);
    }
}

#[test]
fn flip_is_involution_up_to_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let l = LoopDatum::new(random_normal(&mut rng), Scalar::int(3), 2).unwrap();
        let ff = flip_loop(&flip_loop(&l).unwrap()).unwrap();
        assert!(ff.word.equivalent_up_to_shift(&l.word));
        assert_eq!(ff.eta, l.eta);
        assert_eq!(ff.rank, l.rank);
    }
}

#[test]
fn dual_is_exact_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let b = BandDatum::new(random_word(&mut rng, 3, -4, 4), Scalar::lambda(), 2).unwrap();
        assert_eq!(dual_band(&dual_band(&b).unwrap()).unwrap(), b);
    }
}

#[test]
fn shift_twice_returns_to_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 200 {
        let b = BandDatum::new(
            random_word(&mut rng, 3, -3, 3),
            Scalar::lambda(),
            rng.gen_range(1..=2),
        )
        .unwrap();
        let Ok(s1) = shift_band(&b) else { continue };
        let Ok(s2) = shift_band(&s1) else { continue };
        assert!(
            s2.word.equivalent_up_to_shift(&b.word),
            "{} -> {} -> {}",
            b.word,
            s1.word,
            s2.word
        );
        assert_eq!(s2.lambda, b.lambda, "{}", b.word);
        assert_eq!(s2.mult, b.mult);
        checked += 1;
    }
}

fn arb_word() -> impl Strategy<Value = Word> {
    (1usize..=3)
        .prop_flat_map(|t| prop::collection::vec(-3i32..=3, 3 * t))
        .prop_map(|v| Word::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalize_is_certified_and_idempotent(w in arb_word()) {
        if let Ok((nw, trace)) = normalize(&w) {
            prop_assert!(is_normal(&nw));
            prop_assert_eq!(&trace.replay(&w).unwrap(), nw.word());
            let (again, t2) = normalize(nw.word()).unwrap();
            prop_assert_eq!(again.word(), nw.word());
            prop_assert!(t2.is_empty());
        }
    }

    #[test]
    fn single_moves_preserve_normal_form(w in arb_word(), pick in 0usize..64) {
        let moves = applicable_moves(&w);
        let m = moves[pick % moves.len()];
        let v = apply_move(&w, m).unwrap();
        match (normalize(&w), normalize(&v)) {
            (Ok((a, _)), Ok((b, _))) => prop_assert!(a.equivalent_up_to_shift(&b)),
            (Err(Error::NonHyperbolic), Err(Error::NonHyperbolic)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.map(|x| x.0), b.map(|x| x.0)),
        }
    }
}
