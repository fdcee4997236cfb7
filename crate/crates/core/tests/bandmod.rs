mod common;

use common::*;
use mfxyz::algebra::{Matrix, Poly, PolyMatrix, Rational, Ring, UniPoly};
use mfxyz::bandmod::*;
use mfxyz::canonical::{build_deg, DegVariant};
use mfxyz::{word, Word};
use proptest::prelude::*;

type P = Poly<Rational>;
type M = PolyMatrix<Rational>;

fn e1(n: usize, p: P) -> Vec<P> {
    let mut v = vec![P::zero(); n];
    v[0] = p;
    v
}

#[test]
fn degenerate_generators() {
    let g = build_module_generators(&word![0, 0, 0], &lam(), 1);
    let expect: M = mat(&[&[
        "lzx^2+x^2y",
        "xy^2+y^2z",
        "yz^2+z^2x",
        "x^2y^2",
        "y^2z^2",
        "z^2x^2",
    ]]);
    assert_eq!(*g.matrix(), expect);
    let g2 = build_module_generators(&word![0, 0, 0], &P::one(), 2);
    assert_eq!(g2.count(), 12);
    assert_eq!(*g2.matrix().get(0, 1), p("zx^2"));
    assert_eq!(*g2.matrix().get(1, 0), P::zero());
}

#[test]
fn generator_exponents() {
    let g = pi_y::<Rational>(&word![0, -3, 0], 1);
    assert_eq!(*g.get(0, 0), p("xy^2+y^5z"));
    let g = pi_y::<Rational>(&word![0, 2, 0], 1);
    assert_eq!(*g.get(0, 0), p("xy^4+y^2z"));
    let g = pi_x(&word![2, -3, 1], &lam::<Rational>(), 1);
    assert_eq!(*g.get(0, 0), p("x^2y+lzx^4"));
    let g = pi_z::<Rational>(&word![2, -3, 1], 1);
    assert_eq!(*g.get(0, 0), p("yz^3+z^2x"));
}

#[test]
fn cyclic_layout_for_two_triples() {
    let w = word![1, 0, 0, -2, 0, 0];
    let g = pi_x(&w, &lam::<Rational>(), 1);
    let expect: M = mat(&[&["x^2y", "zx^2"], &["lzx^3", "x^4y"]]);
    assert_eq!(g, expect);
}

#[test]
fn reduction_is_idempotent() {
    let m: M = mat(&[&["xyz+x^2", "x^2y^2z^3"]]);
    let g = GenMatrix::new(m);
    assert!(g.is_reduced());
    assert_eq!(*g.matrix(), mat(&[&["x^2", "0"]]));
    assert_eq!(GenMatrix::new(g.matrix().clone()), g);
}

fn t(e: usize) -> UniPoly<Rational> {
    UniPoly::monomial(e, P::one())
}

#[test]
fn theta_examples() {
    let th = build_theta(&word![0, 0, 0], &lam::<Rational>(), 1);
    for m in [
        &th.n_minus,
        &th.n_plus,
        &th.m_minus,
        &th.m_plus,
        &th.l_minus,
    ] {
        assert_eq!(*m.get(0, 0), t(1));
    }
    assert_eq!(*th.l_cyclic.get(0, 0), UniPoly::monomial(1, lam()));
    let th = build_theta(&word![2, -3, 1], &lam::<Rational>(), 1);
    let deg = |m: &Matrix<UniPoly<Rational>>| m.get(0, 0).degree().unwrap();
    let got = vec![
        deg(&th.n_minus),
        deg(&th.n_plus),
        deg(&th.l_cyclic),
        deg(&th.l_minus),
        deg(&th.m_minus),
        deg(&th.m_plus),
    ];
    assert_eq!(got, vec![1, 2, 3, 1, 4, 1]);
    let th = build_theta(&word![2, -3, 1], &lam::<Rational>(), 2);
    assert_eq!(*th.l_cyclic.get(0, 0), UniPoly::monomial(3, lam()));
    assert_eq!(*th.l_cyclic.get(0, 1), t(3));
    assert_eq!(*th.l_cyclic.get(1, 0), UniPoly::zero());
    assert!(th.all_entries_vanish_at_zero());
    assert!(th.cyclic_invertible_over_laurent());
}

#[test]
fn theta_cyclic_two_triples() {
    let th = build_theta(&word![1, 0, 0, -2, 0, 0], &lam::<Rational>(), 1);
    assert_eq!(*th.l_cyclic.get(0, 1), t(1));
    assert_eq!(*th.l_cyclic.get(1, 0), UniPoly::monomial(2, lam()));
    assert!(th.l_cyclic.get(0, 0).is_zero());
    assert!(th.cyclic_invertible_over_laurent());
}

#[test]
fn membership_examples() {
    let g = build_module_generators(&word![0, 0, 0], &P::one(), 1);
    let v = vec![p("xy+yz+zx").mul(&P::x())];
    let r = truncated_membership(&v, &g, 6).unwrap();
    assert!(r.is_member());
    let col = g.column(0);
    match truncated_membership(&col, &g, 0).unwrap() {
        Membership::Member(a) => {
            assert!(a.iter().all(|c| c.as_constant().is_some() || c.is_zero()))
        }
        other => panic!("{other:?}"),
    }
    for d in [0, 3, 6] {
        assert_eq!(
            truncated_membership(&[P::one()], &g, d).unwrap(),
            Membership::NotFoundUpTo(d)
        );
    }
}

#[test]
fn macaulayfying_examples() {
    for mu in 1..=2 {
        let g = build_module_generators(&word![0, 0, 0], &P::one(), mu);
        let f = e1(mu, p("xy+yz+zx"));
        assert!(
            matches!(
                macaulayfying_check(&f, &g, 8).unwrap(),
                MacaulayVerdict::Macaulayfying(_)
            ),
            "μ={mu}"
        );
        assert!(matches!(
            macaulayfying_check(&e1(mu, p("x^2y^2")), &g, 8).unwrap(),
            MacaulayVerdict::InModuleUpToD(_)
        ));
        assert_eq!(
            macaulayfying_check(&e1(mu, P::one()), &g, 8).unwrap(),
            MacaulayVerdict::FailsMultiplication('x')
        );
    }
}

#[test]
fn degenerate_resolutions() {
    let r = degenerate_resolution::<Rational>(1).unwrap();
    assert_eq!(r.phi, Matrix::scalar(1, P::xyz().neg()));
    assert_eq!(r.pi, mat(&[&["xy+yz+zx"]]));
    for mu in 1..=5 {
        let r = degenerate_resolution::<Rational>(mu).unwrap();
        assert!(r.composite_vanishes(), "μ={mu}");
        assert_eq!(r.phi.rows(), 3 * mu - 2);
        if mu >= 2 {
            let (red, _): (M, M) = build_deg(1, &P::one(), mu - 1, DegVariant::Reduced).unwrap();
            assert_eq!(r.phi, red);
        }
    }
}

proptest! {
    #[test]
    fn sign_split_identities(a in -50i32..50) {
        prop_assert_eq!(plus(a) - minus(a), a);
        prop_assert_eq!(plus(a) + minus(a), a.abs());
    }

    #[test]
    fn generators_are_reduced(v in proptest::collection::vec(-3i32..=3, 3..=6), mu in 1usize..=2) {
        let len = v.len() / 3 * 3;
        let w = Word::new(v[..len].to_vec()).unwrap();
        let g = build_module_generators(&w, &P::from_i64(2), mu);
        prop_assert!(g.is_reduced());
        prop_assert_eq!(g.rank(), w.tau() * mu);
        let th = build_theta(&w, &P::from_i64(2), mu);
        prop_assert!(th.all_entries_vanish_at_zero());
        prop_assert!(th.cyclic_invertible_over_laurent());
    }
}
