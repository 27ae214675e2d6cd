use std::collections::BTreeMap;

use plcat::ainfty::check_relations;
use plcat::ainfty::compare::match_bases;
use plcat::fixtures::cp2;
use plcat::hochschild::hh;
use plcat::morse::*;
use plcat::twcx::{db_hom, TwistedComplex};

fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn rp2_category_is_the_cp2_quiver() {
    let cat = morse_category(&rp2()).unwrap();
    assert_eq!(cat.names(), ["min", "saddle", "max"]);
    assert!(check_relations(&cat).is_none());
    assert!(match_bases(&cat, &cp2()).is_matched());
    assert_eq!(hh(&cat), hh(&cp2()));
}

#[test]
fn s2_hom_is_circle_homology() {
    let cat = morse_category(&s2()).unwrap();
    assert_eq!(cat.hom(0, 1).dims(), dims(&[(0, 1), (-1, 1)]));
}

#[test]
fn single_point() {
    let mut f = FlowData::new(2);
    f.crit("min", 0);
    let cat = morse_category(&f).unwrap();
    assert_eq!(cat.m(), 1);
}

#[test]
fn fundamental_objects() {
    let (cat, fund) = fundamental_object(&s2()).unwrap();
    assert_eq!(fund.summands().iter().map(|s| s.shift).collect::<Vec<_>>(), [0, -2]);
    let v = fund.delta_component(0, 1).unwrap();
    assert_eq!(v.ones().map(|i| cat.hom(0, 1).degree(i)).collect::<Vec<_>>(), [-1]);
    assert!(fundamental_endos(&s2(), &dims(&[(0, 1), (1, 0), (2, 1)])).unwrap().matches);
    assert!(fundamental_endos(&rp2(), &dims(&[(0, 1), (1, 1), (2, 1)])).unwrap().matches);
    assert!(!fundamental_endos(&rp2(), &dims(&[(0, 1), (2, 1)])).unwrap().matches);
    assert!(fundamental_endos(&FlowData::new(2), &BTreeMap::new()).unwrap().matches);
}

#[test]
fn endos_lie_in_range() {
    for f in [rp2(), s2(), cellular_a2()] {
        let (cat, fund) = fundamental_object(&f).unwrap();
        let top = f.dimension as i64;
        assert!(db_hom(&cat, &fund, &fund).keys().all(|&k| (0..=top).contains(&k)));
    }
}

#[test]
fn deleted_gluing_breaks_maurer_cartan() {
    let mut f = rp2();
    f.components[4].boundary.pop();
    assert!(matches!(morse_category(&f), Err(MorseError::Component { .. })));
    assert!(matches!(fundamental_object(&f), Err(MorseError::MaurerCartan(_))));
    let mut g = rp2();
    let moved = g.components[4].boundary.pop().unwrap();
    g.components[5].boundary.push(moved);
    assert!(morse_category(&g).is_err());
    assert!(matches!(fundamental_object(&g), Err(MorseError::MaurerCartan(_))));
}

#[test]
fn structural_errors() {
    let mut f = s2();
    f.crit("min", 1);
    assert_eq!(morse_category(&f).unwrap_err(), MorseError::Duplicate("min".into()));
    let mut f = FlowData::new(2);
    f.crit("a", 1).crit("b", 1).traj("t", "a", "b");
    assert!(matches!(morse_category(&f), Err(MorseError::Component { .. })));
    let mut f = FlowData::new(2);
    f.crit("a", 0).crit("b", 1).comp("t", "a", "b", &[1], &[("x", "y")]);
    assert!(morse_category(&f).is_err());
    let mut f = FlowData::new(2);
    f.crit("a", 0).crit("b", 3);
    assert!(matches!(morse_category(&f), Err(MorseError::Index(..))));
}

#[test]
fn verdier_duality() {
    let f = rp2();
    assert!(verdier_generators(&f).unwrap().iter().all(|&b| b));
    assert!(verdier_generators(&s2()).unwrap().iter().all(|&b| b));
    assert_eq!(verdier_generators(&cellular_a2()).unwrap_err(), MorseError::NotClosed);
    let (cat, fund) = fundamental_object(&f).unwrap();
    let x = TwistedComplex::object(&cat, 0).direct_sum(&TwistedComplex::object(&cat, 2).shift(1));
    assert!(verdier_pairing(&cat, &fund, 2, &x));
}

#[test]
fn corrupted_composition_is_degenerate() {
    let f = rp2();
    let (mut cat, fund) = fundamental_object(&f).unwrap();
    let i1 = cat.hom(0, 2).position("I1").unwrap();
    let mut v = plcat::BitVec::zeros(2);
    v.set(i1, true);
    for a in 0..2u32 {
        for b in 0..2u32 {
            cat.set_mu(&[0, 1, 2], &[a, b], v.clone()).unwrap();
        }
    }
    assert!(check_relations(&cat).is_none());
    assert!(plcat::twcx::maurer_cartan_defect(&cat, &fund).is_empty());
    let ok: Vec<bool> = (0..3).map(|i| verdier_pairing(&cat, &fund, 2, &TwistedComplex::object(&cat, i))).collect();
    assert!(ok.iter().any(|&b| !b), "{ok:?}");
}

#[test]
fn cellular_cases() {
    assert!(!is_cellular(&rp2()));
    assert!(!cellular_hh_check(&rp2(), &dims(&[(0, 1), (1, 1), (2, 1)])).cellular);
    let a2 = cellular_a2();
    assert!(is_cellular(&a2));
    let r = cellular_hh_check(&a2, &dims(&[(0, 1)]));
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.hh0_matches, Some(true));
    assert_eq!(r.euler_matches, Some(true));
    let mut two = cellular_a2();
    two.crit("min2", 0).crit("saddle2", 1).traj("t2", "min2", "saddle2");
    assert!(is_cellular(&two));
    let r = cellular_hh_check(&two, &dims(&[(0, 2)]));
    assert!(r.passed(), "{r:?}");
}

#[test]
fn hh_ignores_labels() {
    let mut f = rp2();
    for c in &mut f.critical {
        c.name = format!("p_{}", c.name);
    }
    for c in &mut f.components {
        c.from = format!("p_{}", c.from);
        c.to = format!("p_{}", c.to);
        c.label = format!("z{}", c.label);
        for (a, b) in &mut c.boundary {
            *a = format!("z{a}");
            *b = format!("z{b}");
        }
    }
    assert_eq!(hh(&morse_category(&f).unwrap()), hh(&morse_category(&rp2()).unwrap()));
}
