use std::collections::BTreeMap;

use plcat::fixtures::{a_g, beilinson, cp2, Dynkin};
use plcat::hochschild::{cc_complex, e1_length, hh, hh_oracle, HochschildError};
use plcat::Grading;

#[test]
fn point_and_arrow() {
    let one = BTreeMap::from([(0, 1)]);
    assert_eq!(hh(&Dynkin::A(1).category(0)), one);
    assert_eq!(hh(&Dynkin::A(2).category(0)), one);
}

#[test]
fn fixtures_agree_with_oracle() {
    for cat in [cp2(), beilinson(), a_g(1, Grading::Z), a_g(1, Grading::Z2)] {
        assert_eq!(hh(&cat), hh_oracle(&cat, 1 << 14).unwrap());
    }
}

#[test]
fn oracle_refuses_large_complexes() {
    assert!(matches!(hh_oracle(&a_g(2, Grading::Z), 10), Err(HochschildError::TooLarge(..))));
}

#[test]
fn e1_bounds_hh() {
    for cat in [cp2(), a_g(2, Grading::Z)] {
        let mut e1: BTreeMap<i64, usize> = BTreeMap::new();
        for ((_, d), n) in e1_length(&cat) {
            *e1.entry(d).or_default() += n;
        }
        for (d, n) in hh(&cat) {
            assert!(e1.get(&d).copied().unwrap_or(0) >= n, "degree {d}");
        }
    }
}

#[test]
fn euler_characteristic_is_preserved() {
    for cat in [cp2(), beilinson()] {
        let cc = cc_complex(&cat);
        let chi: i64 = hh(&cat).iter().map(|(d, n)| if d % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum();
        assert_eq!(cc.euler_characteristic(), chi);
    }
}

#[test]
fn periodic_grading_folds_degrees() {
    let z = hh(&cp2());
    let z2 = hh(&cp2().with_grading(Grading::Z2));
    let mut folded: BTreeMap<i64, usize> = BTreeMap::new();
    for (d, n) in z {
        *folded.entry(d.rem_euclid(2)).or_default() += n;
    }
    assert_eq!(z2, folded);
}
