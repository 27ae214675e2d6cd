use plcat::fixtures::{a_g, a_g_extra_sphere, a_g_sphere, cp2, Dynkin};
use plcat::spherical::{braid_check, detect_matching_pair, is_spherical, matching_cone, matching_dimension, Relation};
use plcat::twcx::{is_isomorphic, TwistedComplex, Verdict, DEFAULT_SEARCH_CAP};
use plcat::Grading;

#[test]
fn a_g_spheres_are_one_spherical() {
    let cat = a_g(2, Grading::Z);
    for i in 1..=4 {
        let r = is_spherical(&cat, &a_g_sphere(&cat, i), 1);
        assert!(r.verdict, "C_{i}: {r:?}");
        assert!(!is_spherical(&cat, &a_g_sphere(&cat, i), 2).verdict);
    }
}

#[test]
fn extra_sphere_is_spherical_in_periodic_grading() {
    let cat = a_g(2, Grading::Z2);
    let c0 = a_g_extra_sphere(&cat);
    assert!(is_spherical(&cat, &c0, 1).verdict);
    assert!(!is_spherical(&cat, &TwistedComplex::object(&cat, 0), 1).verdict);
}

#[test]
fn generators_are_not_spherical() {
    let cat = a_g(2, Grading::Z);
    for i in 0..cat.m() {
        let x = TwistedComplex::object(&cat, i);
        for n in 1..3 {
            assert!(!is_spherical(&cat, &x, n).verdict);
        }
    }
}

#[test]
fn matching_pairs_in_a_g() {
    let cat = a_g(2, Grading::Z);
    for i in 0..4 {
        assert_eq!(matching_dimension(&cat, i), Some(0));
        assert!(detect_matching_pair(&cat, i, 0));
        assert!(!detect_matching_pair(&cat, i, 1));
        let (c, n) = matching_cone(&cat, i).unwrap();
        assert_eq!(n, 0);
        // The cone is a_i-shifted version of C_{i+1} up to isomorphism.
        assert_eq!(is_isomorphic(&cat, &c, &a_g_sphere(&cat, i + 1), DEFAULT_SEARCH_CAP).verdict, Verdict::Yes);
    }
    assert!(matching_cone(&cat, 4).is_err());
}

#[test]
fn cp2_neighbours_form_zero_dimensional_pairs() {
    // hom(X1,X2) = hom(X2,X3) = 2 in degree 0 and composing with a1 maps
    // {a2, b2} to the basis {a2a1, b2a1} of hom(X1,X3).
    let cat = cp2();
    for i in 0..2 {
        assert_eq!(matching_dimension(&cat, i), Some(0));
        let (c, _) = matching_cone(&cat, i).unwrap();
        assert!(is_spherical(&cat, &c, 1).verdict);
    }
}

#[test]
fn a2_matching_pair_of_dimension_zero() {
    // A single arrow X1 → X2: hom is one-dimensional, so no pair.
    let cat = Dynkin::A(2).category(0);
    assert_eq!(matching_dimension(&cat, 0), None);
}

#[test]
fn braid_relations_between_a_g_spheres() {
    let cat = a_g(2, Grading::Z);
    let gens: Vec<_> = (0..cat.m()).map(|i| TwistedComplex::object(&cat, i)).collect();
    let c = |i| a_g_sphere(&cat, i);
    let adj = braid_check(&cat, &c(1), &c(2), &gens);
    assert_eq!(adj.relation, Relation::Braid);
    assert!(adj.holds(), "{adj:?}");
    let far = braid_check(&cat, &c(1), &c(3), &gens);
    assert_eq!(far.relation, Relation::Commute);
    assert!(far.holds(), "{far:?}");
    let same = braid_check(&cat, &c(2), &c(2), &gens);
    assert_eq!(same.relation, Relation::Identical);
}

#[test]
fn higher_dimensional_pair_gives_higher_sphere() {
    use plcat::ainfty::{from_quiver, QuiverPresentation};
    for n in 1..4 {
        let mut q = QuiverPresentation::new(Grading::Z, &["X1", "X2"]);
        q.add_arrow("a", "X1", "X2", 0).unwrap();
        q.add_arrow("b", "X1", "X2", n).unwrap();
        let cat = from_quiver(&q).unwrap();
        assert_eq!(matching_dimension(&cat, 0), Some(n));
        let (c, _) = matching_cone(&cat, 0).unwrap();
        let r = is_spherical(&cat, &c, n + 1);
        assert!(r.verdict, "{r:?}");
        assert!(!is_spherical(&cat, &c, n).verdict);
    }
}
