//! End-to-end checks through the public API: ideals from the group ring, the
//! spaces they cut out and the homology that certifies them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use bimanin_core::action::Parity;
use bimanin_core::algebra::{GroupAlgebraElement, Ideal};
use bimanin_core::linalg::SubspaceBasis;
use bimanin_core::homology::{theta2_decompose, theta2_vanishes};
use bimanin_core::modular::{cusp_path, is_chain, Cusp, Psl2};
use bimanin_core::spaces::{basis_report, BasisCache, Engine, PhiS};

fn annihilates(x: &GroupAlgebraElement, engine: &Engine, w1: usize, w2: usize) -> bool {
    let m = x.action_matrix(w1, w2).unwrap().matrix.to_rational();
    engine.w_pair(w1, w2, Parity::Both).unwrap().rows().iter().all(|r| m.mul_vec(r).iter().all(|c| c.is_zero()))
}

#[test]
fn ideal_generators_annihilate_and_vanish() {
    let engine = Engine::new();
    for g in Ideal::I2.generators() {
        assert!(theta2_vanishes(&g).unwrap(), "{g}");
        assert!(annihilates(&g, &engine, 6, 10), "{g}");
    }
    let stray = GroupAlgebraElement::parse("(1,1)", 2).unwrap();
    assert!(!theta2_vanishes(&stray).unwrap());
    assert!(!annihilates(&stray, &engine, 6, 10));
}

#[test]
fn decomposition_of_a_triangle_is_not_a_relation() {
    let (a, b) = ("2/5".parse::<Cusp>().unwrap(), "-3/7".parse::<Cusp>().unwrap());
    let g = Psl2::parse_word("U*S*U^2").unwrap();
    let x = theta2_decompose(&a, &b, &g).unwrap();
    assert!(!x.is_zero());
    // Its image is the class of a genuine triangle, which is not a boundary.
    assert!(!theta2_vanishes(&x).unwrap());
}

#[test]
fn paths_are_valid_chains() {
    for (a, b) in [("oo", "2/5"), ("17/12", "-5/3"), ("0", "1")] {
        let (a, b) = (a.parse::<Cusp>().unwrap(), b.parse::<Cusp>().unwrap());
        assert!(is_chain(&cusp_path(&a, &b).unwrap(), &a, &b));
    }
}

#[test]
fn phi_rank_matches_gap_for_both_parities() {
    let engine = Engine::new();
    for parity in [Parity::Even, Parity::Odd] {
        let PhiS { rank, gap, .. } = engine.phi_s(10, 12, parity).unwrap();
        assert_eq!(rank, gap, "{parity:?}");
    }
}

#[test]
fn cached_engines_agree() {
    let dir = tempfile::tempdir().unwrap();
    let plain = Engine::new().table_row(10, 12).unwrap();
    let cached = Engine::with_cache(Some(BasisCache::new(dir.path()).unwrap()));
    assert_eq!(cached.table_row(10, 12).unwrap(), plain);
    let again = Engine::with_cache(Some(BasisCache::new(dir.path()).unwrap()));
    assert_eq!(again.table_row(10, 12).unwrap(), plain);
    assert_eq!(again.stats().kernels_computed, 0);
}

#[test]
fn basis_report_round_trips_through_json() {
    let engine = Engine::new();
    let b = engine.v_ideal(2, 8, Ideal::ID, Parity::Both).unwrap();
    let text = serde_json::to_string(&basis_report(&b, 2, 8, "ID", "both")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows: Vec<Vec<BigRational>> = v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|vec| {
            let mut row = vec![BigRational::zero(); 27];
            for c in vec.as_array().unwrap() {
                let int = |k: &str| c[k].as_str().unwrap().parse::<BigInt>().unwrap();
                let (m1, m2) = (c["m1"].as_u64().unwrap() as usize, c["m2"].as_u64().unwrap() as usize);
                row[m1 * 9 + m2] = BigRational::new(int("num"), int("den"));
            }
            row
        })
        .collect();
    assert_eq!(SubspaceBasis::span(27, &rows), b);
}
