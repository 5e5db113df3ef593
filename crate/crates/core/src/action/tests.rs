use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::linalg::IntMatrix;
use crate::modular::Psl2;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn apply(m: &IntMatrix, p: &PolyVec) -> PolyVec {
    let (w1, w2) = p.weights();
    let v = m.to_rational().mul_vec(p.coeffs());
    PolyVec::from_coeffs(w1, w2, v).unwrap()
}

fn poly(s: &str, w: usize) -> PolyVec {
    PolyVec::parse(s, w, 0).unwrap()
}

fn arb_psl2() -> impl Strategy<Value = Psl2> {
    proptest::collection::vec(0u8..3, 0..8).prop_map(|w| {
        w.iter().fold(Psl2::identity(), |acc, &l| match l {
            0 => &acc * &Psl2::s(),
            1 => &acc * &Psl2::u(),
            _ => &acc * &Psl2::t(),
        })
    })
}

#[test]
fn translation_and_inversion() {
    let t = act1_matrix(&Psl2::t(), 2);
    assert_eq!(apply(&t, &poly("X^2", 2)), poly("(X-1)^2", 2));
    let s = act1_matrix(&Psl2::s(), 10);
    assert_eq!(apply(&s, &poly("1 - X^10", 10)), poly("X^10 - 1", 10));
    assert_eq!(apply(&s, &poly("X^3", 10)), poly("-X^7", 10));
}

#[test]
fn generator_orders() {
    for w in [0usize, 2, 4, 10, 12] {
        let s = act1_matrix(&Psl2::s(), w);
        let u = act1_matrix(&Psl2::u(), w);
        let id = IntMatrix::identity(w + 1);
        assert_eq!(s.mul(&s), id);
        assert_eq!(u.mul(&u).mul(&u), id);
    }
}

#[test]
fn pair_action_uses_first_index_major() {
    let m = act2_matrix(&Psl2::t(), &Psl2::identity(), 2, 2);
    let p = PolyVec::parse("X1*X2^2", 2, 2).unwrap();
    assert_eq!(apply(&m.matrix, &p), PolyVec::parse("(X1 - 1)*X2^2", 2, 2).unwrap());
}

#[test]
fn pairing_examples() {
    assert_eq!(haberland_pairing(&poly("(X-2)^2", 2), &poly("X^2", 2)).unwrap(), q(4));
    assert_eq!(haberland_pairing(&poly("1", 10), &poly("X^10", 10)).unwrap(), q(1));
    assert_eq!(haberland_pairing(&poly("X", 2), &poly("X", 2)).unwrap(), BigRational::new((-1).into(), 2.into()));
    assert_eq!(haberland_pairing(&poly("X", 2), &poly("X^2", 2)).unwrap(), q(0));
    assert!(haberland_pairing(&poly("X", 2), &poly("X", 4)).is_err());
}

#[test]
fn cusp_form_dimensions() {
    let table = [(2, 0), (4, 0), (10, 0), (12, 1), (14, 0), (24, 2), (26, 1), (36, 3), (38, 2)];
    for (k, d) in table {
        assert_eq!(dim_cusp_forms(k).unwrap(), d, "k = {k}");
    }
    assert!(dim_cusp_forms(7).is_err());
    assert_eq!(dim_w_oracle(10).unwrap(), 3);
}

#[test]
fn parser_and_formatter() {
    let p = PolyVec::parse("1 - X1^2*X2^8", 2, 8).unwrap();
    assert_eq!(p.to_string(), "1 - X1^2*X2^8");
    assert_eq!(PolyVec::parse(&p.to_string(), 2, 8).unwrap(), p);
    let r = poly("4X - 25X^3 + 42X^5 - 25X^7 + 4X^9", 10);
    assert_eq!(r.to_string(), "4*X - 25*X^3 + 42*X^5 - 25*X^7 + 4*X^9");
    let f = PolyVec::parse("(X1-X2)*(1-X1*X2)", 2, 2).unwrap();
    assert_eq!(f, PolyVec::parse("X1 - X2 - X1^2*X2 + X1*X2^2", 2, 2).unwrap());
    assert_eq!(poly("28/45*X^2 - 1/45 X^8", 8).coeff(2, 0), &BigRational::new(28.into(), 45.into()));
    assert_eq!(poly("1 - Z^10", 10), poly("1 - X^10", 10));
    assert!(PolyVec::parse("X1^3", 2, 2).is_err());
    assert!(PolyVec::parse("1 +", 2, 2).is_err());
    assert_eq!(PolyVec::zero(2, 2).to_string(), "0");
}

proptest! {
    #[test]
    fn action_is_a_homomorphism(g in arb_psl2(), h in arb_psl2(), half in 0usize..7) {
        let w = 2 * half;
        prop_assert_eq!(act1_matrix(&(&g * &h), w), act1_matrix(&g, w).mul(&act1_matrix(&h, w)));
    }

    #[test]
    fn pair_action_is_a_homomorphism(g1 in arb_psl2(), g2 in arb_psl2(), h1 in arb_psl2(), h2 in arb_psl2()) {
        let a = act2_matrix(&(&g1 * &h1), &(&g2 * &h2), 4, 2).matrix;
        let b = act2_matrix(&g1, &g2, 4, 2).matrix.mul(&act2_matrix(&h1, &h2, 4, 2).matrix);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pairing_is_invariant(g in arb_psl2(), a in proptest::collection::vec(-5i64..5, 7), b in proptest::collection::vec(-5i64..5, 7)) {
        let p = PolyVec::from_coeffs(6, 0, a.into_iter().map(q).collect()).unwrap();
        let r = PolyVec::from_coeffs(6, 0, b.into_iter().map(q).collect()).unwrap();
        let m = act1_matrix(&g, 6);
        prop_assert_eq!(haberland_pairing(&apply(&m, &p), &apply(&m, &r)).unwrap(), haberland_pairing(&p, &r).unwrap());
    }

    #[test]
    fn pairing_evaluates(a in -6i64..6, c in proptest::collection::vec(-5i64..5, 9)) {
        let p = PolyVec::from_coeffs(8, 0, c.iter().map(|&x| q(x)).collect()).unwrap();
        let kernel = PolyVec::parse(&format!("(X - ({a}))^8").replace("(-", "(0-"), 8, 0).unwrap();
        let value: BigRational = c.iter().enumerate().map(|(k, &x)| q(x) * q(a).pow(k as i32)).sum();
        prop_assert_eq!(haberland_pairing(&kernel, &p).unwrap(), value);
    }

    #[test]
    fn epsilon_conjugation_matches_reflection(g1 in arb_psl2(), g2 in arb_psl2()) {
        let (w1, w2) = (4usize, 6usize);
        let r = IntMatrix::from_fn((w1 + 1) * (w2 + 1), (w1 + 1) * (w2 + 1), |i, j| {
            let (m1, m2) = (i / (w2 + 1), i % (w2 + 1));
            BigInt::from(if i != j { 0 } else if (m1 + m2) % 2 == 0 { 1 } else { -1 })
        });
        let m = act2_matrix(&g1, &g2, w1, w2).matrix;
        let conj = act2_matrix(&g1.epsilon_conjugate(), &g2.epsilon_conjugate(), w1, w2).matrix;
        prop_assert_eq!(conj, r.mul(&m).mul(&r));
    }
}
